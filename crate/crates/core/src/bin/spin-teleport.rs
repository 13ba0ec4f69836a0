use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use spin_teleport::sweep::{
    figure_preset, run_point, run_sweep_to, write_point, Axis, FixedPoint, Format, OutputColumn,
    SweepOptions, SweepSpec,
};
use spin_teleport::{ChannelParams, Error};

const EXIT_BAD_ARGS: u8 = 2;
const EXIT_IO: u8 = 3;

/// Entanglement teleportation through a thermal two-qubit Heisenberg XXX
/// chain with an x-axis Dzyaloshinskii-Moriya term.
#[derive(Parser)]
#[command(name = "spin-teleport", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate a single parameter point.
    Point {
        #[command(flatten)]
        fixed: FixedArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Evaluate a 1D or 2D grid.
    Sweep {
        #[command(flatten)]
        fixed: FixedArgs,
        /// Outer axis as name:min:max:steps, name one of J, Dx, T, Cin.
        #[arg(long, value_parser = parse_axis)]
        axis1: Axis,
        /// Optional inner axis, same form as --axis1.
        #[arg(long, value_parser = parse_axis)]
        axis2: Option<Axis>,
        /// Allow a T axis that starts at exactly 0.
        #[arg(long)]
        include_zero_temperature: bool,
        #[command(flatten)]
        output: OutputArgs,
        #[command(flatten)]
        run: RunArgs,
    },
    /// Regenerate the grid behind one figure panel.
    Figure {
        /// One of fig1a..fig1c, fig2a..fig2c, fig3a..fig3c, fig4a..fig4c.
        name: String,
        #[arg(long, value_parser = parse_format, default_value = "csv")]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        classify: bool,
        #[command(flatten)]
        run: RunArgs,
    },
}

#[derive(Args)]
struct FixedArgs {
    #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
    j: f64,
    #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
    dx: f64,
    /// Temperature, k_B = 1.
    #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
    t: f64,
    /// Input-state concurrence in [0, 1].
    #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
    cin: f64,
}

#[derive(Args)]
struct OutputArgs {
    /// Comma-separated subset of Cout, F, h1, h2, Z, lambdas.
    #[arg(long, value_delimiter = ',', value_parser = parse_output,
          default_value = "Cout,F,h1,h2,Z")]
    outputs: Vec<OutputColumn>,
    #[arg(long, value_parser = parse_format, default_value = "csv")]
    format: Format,
    /// Output file; standard output when absent.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Append a quantum-useful / classical-regime / separable label.
    #[arg(long)]
    classify: bool,
}

#[derive(Args)]
struct RunArgs {
    /// Worker threads, 0 for one per core. Falls back to $THREADS.
    #[arg(long)]
    threads: Option<usize>,
}

impl RunArgs {
    fn resolve(&self) -> Result<usize, Error> {
        match self.threads {
            Some(n) => Ok(n),
            None => match std::env::var("THREADS") {
                Ok(v) => v.trim().parse().map_err(|_| {
                    Error::InvalidSweep(format!("THREADS=`{v}` is not a thread count"))
                }),
                Err(_) => Ok(0),
            },
        }
    }
}

fn parse_axis(s: &str) -> Result<Axis, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_output(s: &str) -> Result<OutputColumn, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_format(s: &str) -> Result<Format, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn fixed_point(f: &FixedArgs) -> FixedPoint {
    FixedPoint {
        j: f.j,
        dx: f.dx,
        t: f.t,
        cin: f.cin,
    }
}

fn run(cli: Cli) -> Result<(), Error> {
    match cli.command {
        Command::Point { fixed, output } => {
            let params = ChannelParams::new(fixed.j, fixed.dx, fixed.t)?;
            let row = run_point(&params, fixed.cin)?;
            let options = SweepOptions {
                format: output.format,
                threads: 1,
                classify: output.classify,
            };
            match &output.out {
                None => write_point(&row, &output.outputs, &options, &mut io::stdout().lock()),
                Some(path) => {
                    let io_err = |source| Error::Io {
                        path: path.clone(),
                        source,
                    };
                    let mut sink = BufWriter::new(File::create(path).map_err(io_err)?);
                    write_point(&row, &output.outputs, &options, &mut sink)?;
                    sink.flush().map_err(io_err)
                }
            }
        }
        Command::Sweep {
            fixed,
            axis1,
            axis2,
            include_zero_temperature,
            output,
            run,
        } => {
            let spec = SweepSpec {
                fixed: fixed_point(&fixed),
                axis1,
                axis2,
                outputs: output.outputs,
                include_zero_temperature,
            };
            let options = SweepOptions {
                format: output.format,
                threads: run.resolve()?,
                classify: output.classify,
            };
            run_sweep_to(&spec, &options, output.out.as_deref()).map(|_| ())
        }
        Command::Figure {
            name,
            format,
            out,
            classify,
            run,
        } => {
            let spec = figure_preset(&name)?;
            let options = SweepOptions {
                format,
                threads: run.resolve()?,
                classify,
            };
            run_sweep_to(&spec, &options, out.as_deref()).map(|_| ())
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_BAD_ARGS } else { 0 });
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(match e {
                Error::Io { .. } => EXIT_IO,
                _ => EXIT_BAD_ARGS,
            })
        }
    }
}

//! Parameter grids over (J, Dₓ, T, C_in) and their CSV / JSON-lines output.
//!
//! Output is deterministic: rows are produced in grid order (first axis outer)
//! no matter how many worker threads evaluate them, and CSV numbers are
//! printed with 17 significant digits.

use std::fmt;
use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::str::FromStr;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{invalid, Error, Result};
use crate::model::{thermal_elements, ChannelParams};
use crate::teleport::{concurrence_from_lambdas, fidelity_from_elements, lambdas_from_elements};

pub const MAX_STEPS: usize = 1_000_000;
pub const CLASSICAL_FIDELITY: f64 = 2.0 / 3.0;
const CHUNK: usize = 1 << 14;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Variable {
    J,
    Dx,
    T,
    Cin,
}

impl Variable {
    pub fn name(&self) -> &'static str {
        match self {
            Variable::J => "J",
            Variable::Dx => "Dx",
            Variable::T => "T",
            Variable::Cin => "Cin",
        }
    }
}

impl fmt::Display for Variable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Variable {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "j" => Ok(Variable::J),
            "dx" => Ok(Variable::Dx),
            "t" => Ok(Variable::T),
            "cin" => Ok(Variable::Cin),
            _ => Err(Error::InvalidSweep(format!(
                "unknown variable `{s}` (expected J, Dx, T or Cin)"
            ))),
        }
    }
}

/// `steps` evenly spaced values from `min` to `max`, both included.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Axis {
    pub variable: Variable,
    pub min: f64,
    pub max: f64,
    pub steps: usize,
}

impl Axis {
    pub fn new(variable: Variable, min: f64, max: f64, steps: usize) -> Self {
        Axis {
            variable,
            min,
            max,
            steps,
        }
    }

    pub fn value(&self, i: usize) -> f64 {
        if i + 1 == self.steps {
            return self.max;
        }
        let t = i as f64 / (self.steps - 1) as f64;
        self.min + (self.max - self.min) * t
    }

    pub fn values(&self) -> impl Iterator<Item = f64> + '_ {
        (0..self.steps).map(|i| self.value(i))
    }
}

/// Parses `name:min:max:steps`, e.g. `J:-2:2:101`.
impl FromStr for Axis {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.split(':').collect();
        let [name, min, max, steps] = parts[..] else {
            return Err(Error::InvalidSweep(format!(
                "axis `{s}` is not of the form name:min:max:steps"
            )));
        };
        let num = |x: &str| {
            x.trim()
                .parse::<f64>()
                .map_err(|_| Error::InvalidSweep(format!("axis `{s}`: `{x}` is not a number")))
        };
        let steps = steps.trim().parse::<usize>().map_err(|_| {
            Error::InvalidSweep(format!("axis `{s}`: `{steps}` is not a step count"))
        })?;
        Ok(Axis::new(name.trim().parse()?, num(min)?, num(max)?, steps))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum OutputColumn {
    Cout,
    Fidelity,
    H1,
    H2,
    Z,
    Lambdas,
}

impl OutputColumn {
    pub const ALL: [OutputColumn; 6] = [
        OutputColumn::Cout,
        OutputColumn::Fidelity,
        OutputColumn::H1,
        OutputColumn::H2,
        OutputColumn::Z,
        OutputColumn::Lambdas,
    ];

    /// Cout, fidelity, h1, h2, Z.
    pub fn defaults() -> Vec<OutputColumn> {
        Self::ALL[..5].to_vec()
    }

    fn headers(&self) -> &'static [&'static str] {
        match self {
            OutputColumn::Cout => &["Cout"],
            OutputColumn::Fidelity => &["fidelity"],
            OutputColumn::H1 => &["h1"],
            OutputColumn::H2 => &["h2"],
            OutputColumn::Z => &["Z"],
            OutputColumn::Lambdas => &["lambda1", "lambda2", "lambda3", "lambda4"],
        }
    }
}

impl FromStr for OutputColumn {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "cout" => Ok(OutputColumn::Cout),
            "f" | "fidelity" => Ok(OutputColumn::Fidelity),
            "h1" => Ok(OutputColumn::H1),
            "h2" => Ok(OutputColumn::H2),
            "z" => Ok(OutputColumn::Z),
            "lambdas" | "lambda" => Ok(OutputColumn::Lambdas),
            _ => Err(Error::InvalidSweep(format!(
                "unknown output `{s}` (expected Cout, F, h1, h2, Z or lambdas)"
            ))),
        }
    }
}

/// Values used for every variable that is not swept.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FixedPoint {
    pub j: f64,
    pub dx: f64,
    pub t: f64,
    pub cin: f64,
}

impl FixedPoint {
    fn set(&mut self, var: Variable, value: f64) {
        match var {
            Variable::J => self.j = value,
            Variable::Dx => self.dx = value,
            Variable::T => self.t = value,
            Variable::Cin => self.cin = value,
        }
    }
}

impl Default for FixedPoint {
    fn default() -> Self {
        FixedPoint {
            j: 1.0,
            dx: 1.0,
            t: 1.0,
            cin: 1.0,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SweepSpec {
    pub fixed: FixedPoint,
    pub axis1: Axis,
    pub axis2: Option<Axis>,
    pub outputs: Vec<OutputColumn>,
    /// Allows a T axis starting at exactly 0.
    pub include_zero_temperature: bool,
}

impl SweepSpec {
    pub fn validate(&self) -> Result<()> {
        let axes: Vec<(&str, &Axis)> = std::iter::once(("--axis1", &self.axis1))
            .chain(self.axis2.as_ref().map(|a| ("--axis2", a)))
            .collect();
        for (flag, axis) in &axes {
            let bad = |why: String| Err(Error::InvalidSweep(format!("{flag}: {why}")));
            if !axis.min.is_finite() || !axis.max.is_finite() {
                return bad("bounds must be finite".into());
            }
            if axis.min >= axis.max {
                return bad(format!("min {} must be below max {}", axis.min, axis.max));
            }
            if axis.steps < 2 || axis.steps > MAX_STEPS {
                return bad(format!("steps {} outside 2..={MAX_STEPS}", axis.steps));
            }
            match axis.variable {
                Variable::T if axis.min < 0.0 => return bad("temperature below 0".into()),
                Variable::T if axis.min == 0.0 && !self.include_zero_temperature => {
                    return bad("T axis starts at 0; pass --include-zero-temperature".into())
                }
                Variable::Cin if axis.min < 0.0 || axis.max > 1.0 => {
                    return bad("Cin must stay within [0, 1]".into())
                }
                _ => {}
            }
        }
        if let Some(a2) = &self.axis2 {
            if a2.variable == self.axis1.variable {
                return Err(Error::InvalidSweep(format!(
                    "--axis1 and --axis2 both sweep {}",
                    a2.variable
                )));
            }
        }
        if self.outputs.is_empty() {
            return Err(Error::InvalidSweep("no output columns requested".into()));
        }
        // fixed values that are not overridden by an axis must be valid
        let swept = |v: Variable| axes.iter().any(|(_, a)| a.variable == v);
        let f = &self.fixed;
        ChannelParams::new(
            if swept(Variable::J) { 0.0 } else { f.j },
            if swept(Variable::Dx) { 0.0 } else { f.dx },
            if swept(Variable::T) { 1.0 } else { f.t },
        )?;
        if !swept(Variable::Cin) && !(0.0..=1.0).contains(&f.cin) {
            return Err(invalid("cin", format!("{} is outside [0, 1]", f.cin)));
        }
        Ok(())
    }

    pub fn row_count(&self) -> usize {
        self.axis1.steps * self.axis2.map_or(1, |a| a.steps)
    }

    /// Grid point `index` in row-major order.
    pub fn point(&self, index: usize) -> FixedPoint {
        let inner = self.axis2.map_or(1, |a| a.steps);
        let mut p = self.fixed;
        p.set(self.axis1.variable, self.axis1.value(index / inner));
        if let Some(a2) = &self.axis2 {
            p.set(a2.variable, a2.value(index % inner));
        }
        p
    }

    fn columns(&self) -> Vec<OutputColumn> {
        let mut cols = self.outputs.clone();
        cols.sort();
        cols.dedup();
        cols
    }

    pub fn header(&self, classify: bool) -> Vec<&'static str> {
        let mut h = vec!["J", "Dx", "T", "Cin"];
        for col in self.columns() {
            h.extend_from_slice(col.headers());
        }
        if classify {
            h.push("class");
        }
        h
    }
}

/// All evaluated quantities at one grid point.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct SweepRow {
    #[serde(rename = "J")]
    pub j: f64,
    #[serde(rename = "Dx")]
    pub dx: f64,
    #[serde(rename = "T")]
    pub t: f64,
    #[serde(rename = "Cin")]
    pub cin: f64,
    #[serde(rename = "Cout")]
    pub cout: f64,
    pub fidelity: f64,
    pub h1: f64,
    pub h2: f64,
    /// Partition function; at T = 0 the ground-level degeneracy.
    #[serde(rename = "Z")]
    pub z: f64,
    pub lambdas: [f64; 4],
}

/// Evaluates the closed-form teleportation quantities at one point.
pub fn run_point(params: &ChannelParams, c_in: f64) -> Result<SweepRow> {
    if !(0.0..=1.0).contains(&c_in) {
        return Err(invalid("cin", format!("{c_in} is outside [0, 1]")));
    }
    let el = thermal_elements(params);
    let lambdas = lambdas_from_elements(&el, c_in)?;
    let f = fidelity_from_elements(&el, c_in);
    Ok(SweepRow {
        j: params.j(),
        dx: params.dx(),
        t: params.temperature(),
        cin: c_in,
        cout: concurrence_from_lambdas(&lambdas),
        fidelity: f.fidelity,
        h1: f.h1,
        h2: f.h2,
        z: el.ln_scale.map_or(el.z, |s| el.z * s.exp()),
        lambdas,
    })
}

fn evaluate(p: &FixedPoint) -> Result<SweepRow> {
    run_point(&ChannelParams::new(p.j, p.dx, p.t)?, p.cin)
}

/// Teleportation regime of a row: fidelity above the classical 2/3 bound or
/// not, plus whether the output is separable.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ChannelClass {
    pub quantum_useful: bool,
    pub separable: bool,
}

impl fmt::Display for ChannelClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(if self.quantum_useful {
            "quantum-useful"
        } else {
            "classical-regime"
        })?;
        if self.separable {
            f.write_str("+separable")?;
        }
        Ok(())
    }
}

pub fn classify_channel(row: &SweepRow) -> ChannelClass {
    ChannelClass {
        quantum_useful: row.fidelity > CLASSICAL_FIDELITY,
        separable: row.cout == 0.0,
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Format {
    #[default]
    Csv,
    JsonLines,
}

impl FromStr for Format {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "csv" => Ok(Format::Csv),
            "json" | "jsonl" | "json-lines" => Ok(Format::JsonLines),
            _ => Err(Error::InvalidSweep(format!(
                "unknown format `{s}` (expected csv or json)"
            ))),
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct SweepOptions {
    pub format: Format,
    /// Worker threads; 0 picks one per core.
    pub threads: usize,
    pub classify: bool,
}

/// 17 significant digits, scientific notation.
pub fn format_number(x: f64) -> String {
    format!("{x:.16e}")
}

/// Serializes rows for one spec; knows which columns were requested.
struct RowWriter<'a> {
    columns: Vec<OutputColumn>,
    header: Vec<&'static str>,
    options: &'a SweepOptions,
}

impl<'a> RowWriter<'a> {
    fn new(spec: &SweepSpec, options: &'a SweepOptions) -> Self {
        RowWriter {
            columns: spec.columns(),
            header: spec.header(options.classify),
            options,
        }
    }

    fn values(&self, row: &SweepRow) -> Vec<f64> {
        let mut v = vec![row.j, row.dx, row.t, row.cin];
        for col in &self.columns {
            match col {
                OutputColumn::Cout => v.push(row.cout),
                OutputColumn::Fidelity => v.push(row.fidelity),
                OutputColumn::H1 => v.push(row.h1),
                OutputColumn::H2 => v.push(row.h2),
                OutputColumn::Z => v.push(row.z),
                OutputColumn::Lambdas => v.extend_from_slice(&row.lambdas),
            }
        }
        v
    }

    fn write_header(&self, out: &mut impl Write) -> io::Result<()> {
        if self.options.format == Format::Csv {
            writeln!(out, "{}", self.header.join(","))?;
        }
        Ok(())
    }

    fn write_row(&self, out: &mut impl Write, row: &SweepRow) -> io::Result<()> {
        let values = self.values(row);
        let label = self
            .options
            .classify
            .then(|| classify_channel(row).to_string());
        match self.options.format {
            Format::Csv => {
                let mut fields: Vec<String> = values.iter().map(|x| format_number(*x)).collect();
                fields.extend(label);
                writeln!(out, "{}", fields.join(","))
            }
            Format::JsonLines => {
                let mut fields: Vec<String> = self
                    .header
                    .iter()
                    .zip(&values)
                    .map(|(k, x)| format!("{}:{}", json(k), json(x)))
                    .collect();
                if let Some(label) = label {
                    fields.push(format!("{}:{}", json("class"), json(&label)));
                }
                writeln!(out, "{{{}}}", fields.join(","))
            }
        }
    }
}

fn json<T: Serialize + ?Sized>(x: &T) -> String {
    serde_json::to_string(x).expect("plain values serialize")
}

fn stream_error(source: io::Error) -> Error {
    Error::Io {
        path: PathBuf::from("<output stream>"),
        source,
    }
}

/// Evaluates the grid and writes a header plus one line per point to `sink`.
/// Returns the number of data rows.
pub fn run_sweep<W: Write>(
    spec: &SweepSpec,
    options: &SweepOptions,
    sink: &mut W,
) -> Result<usize> {
    spec.validate()?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(options.threads)
        .build()
        .map_err(|e| Error::InvalidSweep(format!("--threads: {e}")))?;
    let writer = RowWriter::new(spec, options);
    writer.write_header(sink).map_err(stream_error)?;

    let total = spec.row_count();
    let mut start = 0;
    while start < total {
        let end = (start + CHUNK).min(total);
        let rows: Vec<SweepRow> = pool.install(|| {
            (start..end)
                .into_par_iter()
                .map(|i| evaluate(&spec.point(i)))
                .collect::<Result<_>>()
        })?;
        for row in &rows {
            writer.write_row(sink, row).map_err(stream_error)?;
        }
        start = end;
    }
    sink.flush().map_err(stream_error)?;
    Ok(total)
}

/// Like [`run_sweep`], writing to `path` (standard output when `None`).
pub fn run_sweep_to(
    spec: &SweepSpec,
    options: &SweepOptions,
    path: Option<&Path>,
) -> Result<usize> {
    match path {
        None => run_sweep(spec, options, &mut io::stdout().lock()),
        Some(path) => {
            let with_path = |source| Error::Io {
                path: path.to_path_buf(),
                source,
            };
            let file = File::create(path).map_err(with_path)?;
            let mut sink = BufWriter::new(file);
            run_sweep(spec, options, &mut sink).map_err(|e| match e {
                Error::Io { source, .. } => with_path(source),
                other => other,
            })
        }
    }
}

/// Writes a single evaluated point with the same layout as a sweep.
pub fn write_point<W: Write>(
    row: &SweepRow,
    outputs: &[OutputColumn],
    options: &SweepOptions,
    sink: &mut W,
) -> Result<()> {
    let spec = SweepSpec {
        fixed: FixedPoint {
            j: row.j,
            dx: row.dx,
            t: row.t,
            cin: row.cin,
        },
        axis1: Axis::new(Variable::J, row.j, row.j, 1),
        axis2: None,
        outputs: outputs.to_vec(),
        include_zero_temperature: false,
    };
    let writer = RowWriter::new(&spec, options);
    writer.write_header(sink).map_err(stream_error)?;
    writer.write_row(sink, row).map_err(stream_error)?;
    sink.flush().map_err(stream_error)
}

pub const FIGURE_PRESETS: [&str; 12] = [
    "fig1a", "fig1b", "fig1c", "fig2a", "fig2b", "fig2c", "fig3a", "fig3b", "fig3c", "fig4a",
    "fig4b", "fig4c",
];

pub const PRESET_STEPS: usize = 101;
pub const J_RANGE: (f64, f64) = (-2.0, 2.0);
pub const DX_RANGE: (f64, f64) = (-2.0, 2.0);
pub const T_RANGE: (f64, f64) = (0.02, 3.0);
pub const CIN_RANGE: (f64, f64) = (0.0, 1.0);

/// Grid behind one panel of the output-concurrence (fig1, fig2) and fidelity
/// (fig3, fig4) surface plots. Non-swept parameters are fixed at 1.
pub fn figure_preset(name: &str) -> Result<SweepSpec> {
    use Variable::*;
    let (axes, output, zero_t) = match name {
        "fig1a" => ((Cin, J), OutputColumn::Cout, false),
        "fig1b" => ((Cin, Dx), OutputColumn::Cout, false),
        "fig1c" => ((Cin, T), OutputColumn::Cout, true),
        "fig2a" => ((J, Dx), OutputColumn::Cout, false),
        "fig2b" => ((T, Dx), OutputColumn::Cout, false),
        "fig2c" => ((J, T), OutputColumn::Cout, false),
        "fig3a" => ((Cin, T), OutputColumn::Fidelity, true),
        "fig3b" => ((Cin, J), OutputColumn::Fidelity, false),
        "fig3c" => ((Cin, Dx), OutputColumn::Fidelity, false),
        "fig4a" => ((J, Dx), OutputColumn::Fidelity, false),
        "fig4b" => ((T, Dx), OutputColumn::Fidelity, false),
        "fig4c" => ((T, J), OutputColumn::Fidelity, false),
        _ => {
            return Err(Error::UnknownPreset {
                name: name.to_string(),
                valid: FIGURE_PRESETS.join(", "),
            })
        }
    };
    let axis = |v: Variable| {
        let (min, max) = match v {
            J => J_RANGE,
            Dx => DX_RANGE,
            T if zero_t => (0.0, T_RANGE.1),
            T => T_RANGE,
            Cin => CIN_RANGE,
        };
        Axis::new(v, min, max, PRESET_STEPS)
    };
    Ok(SweepSpec {
        fixed: FixedPoint::default(),
        axis1: axis(axes.0),
        axis2: Some(axis(axes.1)),
        outputs: vec![output],
        include_zero_temperature: zero_t,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn params(j: f64, dx: f64, t: f64) -> ChannelParams {
        ChannelParams::new(j, dx, t).unwrap()
    }

    fn csv(spec: &SweepSpec, options: &SweepOptions) -> String {
        let mut buf = Vec::new();
        run_sweep(spec, options, &mut buf).unwrap();
        String::from_utf8(buf).unwrap()
    }

    #[test]
    fn axis_parsing() {
        let a: Axis = "J:-2:2:11".parse().unwrap();
        assert_eq!(a, Axis::new(Variable::J, -2.0, 2.0, 11));
        let a: Axis = "cin:0:1:5".parse().unwrap();
        assert_eq!(a.variable, Variable::Cin);
        assert!("J:-2:2".parse::<Axis>().is_err());
        assert!("Q:0:1:3".parse::<Axis>().is_err());
        assert!("T:a:1:3".parse::<Axis>().is_err());
    }

    #[test]
    fn linspace_contract() {
        let a = Axis::new(Variable::J, -2.0, 2.0, 11);
        let v: Vec<f64> = a.values().collect();
        assert_eq!(v.len(), 11);
        assert_eq!(v[0], -2.0);
        assert_eq!(v[10], 2.0);
        for (i, x) in v.iter().enumerate() {
            assert!((x - (-2.0 + 0.4 * i as f64)).abs() < 1e-12);
        }
    }

    #[test]
    fn point_examples() {
        let row = run_point(&params(0.0, 0.0, 1.0), 1.0).unwrap();
        assert_eq!(row.cout, 0.0);
        assert!((row.fidelity - 0.25).abs() < 1e-15);
        assert!((row.z - 4.0).abs() < 1e-15);

        let row = run_point(&params(1.0, 0.0, 1.0), 1.0).unwrap();
        assert!((row.cout - 0.799).abs() < 1e-3);
        assert!((row.fidelity - 0.899).abs() < 1e-3);

        let row = run_point(&params(-1.0, 1.0, 1.0), 1.0).unwrap();
        assert_eq!(row.cout, 0.0);

        match run_point(&params(0.0, 0.0, 1.0), 1.2) {
            Err(Error::InvalidParameter { name, .. }) => assert_eq!(name, "cin"),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn zero_temperature_z_is_ground_degeneracy() {
        assert_eq!(run_point(&params(-1.0, 0.0, 0.0), 1.0).unwrap().z, 3.0);
        assert_eq!(run_point(&params(1.0, 0.0, 0.0), 1.0).unwrap().z, 1.0);
    }

    #[test]
    fn classification() {
        let mut row = run_point(&params(0.0, 0.0, 1.0), 1.0).unwrap();
        row.fidelity = 0.9;
        row.cout = 0.5;
        assert_eq!(classify_channel(&row).to_string(), "quantum-useful");
        row.fidelity = 0.25;
        row.cout = 0.0;
        assert_eq!(
            classify_channel(&row).to_string(),
            "classical-regime+separable"
        );
        let strong = run_point(&params(10.0, 1.0, 1.0), 1.0).unwrap();
        assert!(classify_channel(&strong).quantum_useful);
    }

    #[test]
    fn one_dimensional_sweep() {
        let spec = SweepSpec {
            fixed: FixedPoint::default(),
            axis1: "J:-2:2:11".parse().unwrap(),
            axis2: None,
            outputs: OutputColumn::defaults(),
            include_zero_temperature: false,
        };
        let text = csv(&spec, &SweepOptions::default());
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines[0], "J,Dx,T,Cin,Cout,fidelity,h1,h2,Z");
        assert_eq!(lines.len(), 12);
        for (i, line) in lines[1..].iter().enumerate() {
            let j: f64 = line.split(',').next().unwrap().parse().unwrap();
            assert!((j - (-2.0 + 0.4 * i as f64)).abs() < 1e-12);
        }
    }

    #[test]
    fn dx_sweep_is_palindromic_in_cout() {
        let spec = SweepSpec {
            fixed: FixedPoint::default(),
            axis1: "Dx:-3:3:61".parse().unwrap(),
            axis2: None,
            outputs: vec![OutputColumn::Cout],
            include_zero_temperature: false,
        };
        let text = csv(&spec, &SweepOptions::default());
        let cout: Vec<f64> = text
            .lines()
            .skip(1)
            .map(|l| l.split(',').nth(4).unwrap().parse().unwrap())
            .collect();
        for i in 0..cout.len() {
            assert!((cout[i] - cout[cout.len() - 1 - i]).abs() < 1e-12);
        }
    }

    #[test]
    fn two_dimensional_order_and_threads() {
        let spec = SweepSpec {
            fixed: FixedPoint::default(),
            axis1: "T:0.1:2:50".parse().unwrap(),
            axis2: Some("J:-1:1:50".parse().unwrap()),
            outputs: vec![OutputColumn::Cout, OutputColumn::Lambdas],
            include_zero_temperature: false,
        };
        let serial = csv(
            &spec,
            &SweepOptions {
                threads: 1,
                ..Default::default()
            },
        );
        let parallel = csv(
            &spec,
            &SweepOptions {
                threads: 4,
                ..Default::default()
            },
        );
        assert_eq!(serial, parallel);
        let lines: Vec<&str> = serial.lines().collect();
        assert_eq!(lines.len(), 2501);
        assert_eq!(lines[0], "J,Dx,T,Cin,Cout,lambda1,lambda2,lambda3,lambda4");
        // first axis outer: T constant over the first 50 rows
        let t = |l: &str| l.split(',').nth(2).unwrap().to_string();
        assert!(lines[1..51].iter().all(|l| t(l) == t(lines[1])));
        assert_ne!(t(lines[51]), t(lines[1]));
    }

    #[test]
    fn json_lines_output() {
        let spec = SweepSpec {
            fixed: FixedPoint::default(),
            axis1: "Cin:0:1:3".parse().unwrap(),
            axis2: None,
            outputs: vec![OutputColumn::Fidelity],
            include_zero_temperature: false,
        };
        let options = SweepOptions {
            format: Format::JsonLines,
            classify: true,
            ..Default::default()
        };
        let text = csv(&spec, &options);
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines.len(), 3);
        let v: serde_json::Value = serde_json::from_str(lines[2]).unwrap();
        assert_eq!(v["Cin"], 1.0);
        assert!(v["fidelity"].as_f64().unwrap() > 0.7);
        assert!(v["class"].is_string());
    }

    #[test]
    fn validation_errors() {
        let base = SweepSpec {
            fixed: FixedPoint::default(),
            axis1: "J:-1:1:3".parse().unwrap(),
            axis2: Some("J:0:1:3".parse().unwrap()),
            outputs: vec![OutputColumn::Cout],
            include_zero_temperature: false,
        };
        assert!(base.validate().is_err());

        let mut s = base.clone();
        s.axis2 = None;
        assert!(s.validate().is_ok());
        s.axis1 = "J:1:-1:3".parse().unwrap();
        assert!(s.validate().is_err());
        s.axis1 = "J:-1:1:1".parse().unwrap();
        assert!(s.validate().is_err());
        s.axis1 = "T:0:1:3".parse().unwrap();
        assert!(s.validate().is_err());
        s.include_zero_temperature = true;
        assert!(s.validate().is_ok());
        s.axis1 = "Cin:0:1.5:3".parse().unwrap();
        assert!(s.validate().is_err());
        s.axis1 = "Cin:0:1:3".parse().unwrap();
        s.fixed.t = -1.0;
        assert!(matches!(
            s.validate(),
            Err(Error::InvalidParameter { name: "t", .. })
        ));
    }

    #[test]
    fn presets() {
        let s = figure_preset("fig1c").unwrap();
        assert_eq!(s.axis1.variable, Variable::Cin);
        assert_eq!(s.axis2.unwrap().variable, Variable::T);
        assert_eq!(s.axis2.unwrap().min, 0.0);
        assert_eq!((s.fixed.j, s.fixed.dx), (1.0, 1.0));

        let s = figure_preset("fig4c").unwrap();
        assert_eq!(
            (s.axis1.variable, s.axis2.unwrap().variable),
            (Variable::T, Variable::J)
        );
        assert_eq!((s.fixed.cin, s.fixed.dx), (1.0, 1.0));
        assert_eq!(s.outputs, vec![OutputColumn::Fidelity]);

        for name in FIGURE_PRESETS {
            let s = figure_preset(name).unwrap();
            s.validate().unwrap();
            assert_eq!(s.row_count(), PRESET_STEPS * PRESET_STEPS);
        }
        match figure_preset("fig9z") {
            Err(Error::UnknownPreset { valid, .. }) => assert!(valid.contains("fig4c")),
            other => panic!("{other:?}"),
        }
    }
}

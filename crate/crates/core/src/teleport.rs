//! Entanglement teleportation of a two-qubit pure state through two copies
//! of the thermal chain state, treated as a generalized depolarizing channel.
//!
//! Each quantity is available two ways: closed forms in the thermal matrix
//! elements (used for sweeps), and the explicit 16-term Pauli sum evaluated on
//! dense matrices (used as the check).

use std::f64::consts::PI;

use crate::density::DensityMatrix4;
use crate::error::{invalid, Result};
use crate::linalg::{bell_projectors, pauli_pair, ComplexMatrix4, StateVector4, C64};
use crate::model::{thermal_elements, thermal_state, ChannelParams, ThermalElements};

/// Negative values of provably nonnegative quantities down to this size are
/// rounding noise and clamp to zero.
pub const CLAMP_TOL: f64 = 1e-10;

/// Values of C_out at or below this count as zero when locating the critical
/// temperature.
pub const SEPARABLE_TOL: f64 = 1e-12;

const SCAN_POINTS: usize = 256;
const BISECTION_TOL: f64 = 1e-6;

/// Input |ψ⟩ = cos(θ/2)|10⟩ + sin(θ/2)|01⟩ with 0 ≤ θ ≤ π.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct InputState {
    theta: f64,
}

impl InputState {
    pub fn new(theta: f64) -> Result<Self> {
        if !(0.0..=PI).contains(&theta) {
            return Err(invalid("theta", format!("{theta} is outside [0, pi]")));
        }
        Ok(Self { theta })
    }

    /// Input with concurrence `c_in`, taking θ = arcsin(c_in) ∈ [0, π/2].
    pub fn from_concurrence(c_in: f64) -> Result<Self> {
        check_concurrence(c_in)?;
        Self::new(c_in.asin())
    }

    pub fn theta(&self) -> f64 {
        self.theta
    }

    /// C_in = sin θ.
    pub fn c_in(&self) -> f64 {
        self.theta.sin()
    }

    pub fn ket(&self) -> StateVector4 {
        let (s, c) = (0.5 * self.theta).sin_cos();
        StateVector4::from_real([0.0, s, c, 0.0])
    }

    pub fn density(&self) -> Result<DensityMatrix4> {
        input_state(self.theta)
    }
}

fn check_concurrence(c_in: f64) -> Result<()> {
    if !(0.0..=1.0).contains(&c_in) {
        return Err(invalid("cin", format!("{c_in} is outside [0, 1]")));
    }
    Ok(())
}

/// ρ_in = |ψ_in⟩⟨ψ_in|, written out entrywise.
pub fn input_state(theta: f64) -> Result<DensityMatrix4> {
    InputState::new(theta)?;
    let (s, c) = (0.5 * theta).sin_cos();
    let off = 0.5 * theta.sin();
    let mut m = ComplexMatrix4::zeros();
    m[(1, 1)] = C64::new(s * s, 0.0);
    m[(2, 2)] = C64::new(c * c, 0.0);
    m[(1, 2)] = C64::new(off, 0.0);
    m[(2, 1)] = C64::new(off, 0.0);
    DensityMatrix4::new(m)
}

fn clamp_nonnegative(name: &'static str, x: f64) -> Result<f64> {
    if x < -CLAMP_TOL {
        return Err(invalid(name, format!("{x:e} should be nonnegative")));
    }
    Ok(x.max(0.0))
}

/// Bell-basis overlaps Tr[Eⁿρ] for E⁰..E³ = Ψ⁻, Φ⁻, Φ⁺, Ψ⁺.
pub fn bell_overlaps(rho: &DensityMatrix4) -> Result<[f64; 4]> {
    let e = bell_projectors();
    let mut q = [0.0; 4];
    for (qn, en) in q.iter_mut().zip(&e) {
        *qn = clamp_nonnegative("bell overlap", (*en * *rho.matrix()).trace().re)?;
    }
    Ok(q)
}

/// p_nm = Tr[Eⁿρ]·Tr[Eᵐρ].
pub fn channel_probabilities(rho_channel: &DensityMatrix4) -> Result<[[f64; 4]; 4]> {
    let q = bell_overlaps(rho_channel)?;
    Ok(q.map(|qn| q.map(|qm| qn * qm)))
}

/// ρ_out = Σ p_nm (σⁿ⊗σᵐ) ρ_in (σⁿ⊗σᵐ), pairing Bell projector Eⁿ with
/// σⁿ ∈ {I, σˣ, σʸ, σᶻ}. That pairing is the one with (I⊗σⁿ)|Ψ⁻⟩ ∝ the n-th
/// Bell state.
pub fn teleport_output_sum(
    rho_in: &DensityMatrix4,
    rho_channel: &DensityMatrix4,
) -> Result<DensityMatrix4> {
    let p = channel_probabilities(rho_channel)?;
    let mut out = ComplexMatrix4::zeros();
    for (n, row) in p.iter().enumerate() {
        for (m, &pnm) in row.iter().enumerate() {
            if pnm == 0.0 {
                continue;
            }
            let u = pauli_pair(n, m)?;
            out = out + (u * *rho_in.matrix() * u).scale(pnm);
        }
    }
    DensityMatrix4::new(out)
}

/// Closed-form output components, before division by Z².
///
/// Like [`ThermalElements`], these are in ground-shifted units; `z` is the
/// matching shifted partition function.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct OutputComponents {
    pub omega: f64,
    pub chi: f64,
    pub a_plus: f64,
    pub a_minus: f64,
    pub b: f64,
    pub z: f64,
}

impl OutputComponents {
    pub fn from_elements(el: &ThermalElements, theta: f64) -> Self {
        let (sin, cos) = theta.sin_cos();
        let (a2, b2) = (el.a * el.a, el.b * el.b);
        OutputComponents {
            omega: 4.0 * el.a * el.b,
            chi: 4.0 * el.c * el.d * sin,
            a_plus: 2.0 * ((a2 - b2) * cos + a2 + b2),
            a_minus: 2.0 * (-(a2 - b2) * cos + a2 + b2),
            b: 2.0 * (el.c * el.c + el.d * el.d) * sin,
            z: el.z,
        }
    }

    /// X-shaped ρ_out with ω on the outer diagonal, A± on the inner one.
    pub fn matrix(&self) -> ComplexMatrix4 {
        let k = 1.0 / (self.z * self.z);
        let (w, x, ap, am, b) = (
            self.omega * k,
            self.chi * k,
            self.a_plus * k,
            self.a_minus * k,
            self.b * k,
        );
        ComplexMatrix4::from_real([
            [w, 0.0, 0.0, x],
            [0.0, ap, b, 0.0],
            [0.0, b, am, 0.0],
            [x, 0.0, 0.0, w],
        ])
    }
}

/// ρ_out from the thermal matrix elements, together with its components.
pub fn teleport_output_closed(
    params: &ChannelParams,
    theta: f64,
) -> Result<(DensityMatrix4, OutputComponents)> {
    InputState::new(theta)?;
    let comps = OutputComponents::from_elements(&thermal_elements(params), theta);
    Ok((DensityMatrix4::new(comps.matrix())?, comps))
}

/// λ₁..λ₄ in descending order from the thermal elements.
pub fn lambdas_from_elements(el: &ThermalElements, c_in: f64) -> Result<[f64; 4]> {
    let (a, b, c, d) = (el.a, el.b, el.c, el.d);
    let z2 = el.z * el.z;
    let root = ((a * a - b * b).powi(2) * c_in * c_in + 4.0 * a * a * b * b).sqrt();
    let cross = (c * c + d * d) * c_in;
    let raw = [
        4.0 * (a * b + c * d * c_in) / z2,
        4.0 * (a * b - c * d * c_in) / z2,
        2.0 * (root + cross) / z2,
        2.0 * (root - cross) / z2,
    ];
    let mut lambdas = [0.0; 4];
    for (l, x) in lambdas.iter_mut().zip(raw) {
        *l = clamp_nonnegative("lambda", x)?;
    }
    lambdas.sort_by(|x, y| y.total_cmp(x));
    Ok(lambdas)
}

/// max(0, 2·max λ − Σλ).
pub fn concurrence_from_lambdas(lambdas: &[f64; 4]) -> f64 {
    let max = lambdas.iter().copied().fold(0.0, f64::max);
    (2.0 * max - lambdas.iter().sum::<f64>()).max(0.0)
}

/// Square roots of the eigenvalues of R_out = ρ_out S ρ_out* S, descending.
pub fn output_lambdas(params: &ChannelParams, c_in: f64) -> Result<[f64; 4]> {
    check_concurrence(c_in)?;
    lambdas_from_elements(&thermal_elements(params), c_in)
}

/// Concurrence of the teleported state for an input of concurrence `c_in`.
pub fn output_concurrence(params: &ChannelParams, c_in: f64) -> Result<f64> {
    Ok(concurrence_from_lambdas(&output_lambdas(params, c_in)?))
}

/// Teleportation fidelity and its split F = h₁ + h₂·C_in².
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FidelityParts {
    pub fidelity: f64,
    pub h1: f64,
    pub h2: f64,
}

pub fn fidelity_from_elements(el: &ThermalElements, c_in: f64) -> FidelityParts {
    let (a2, b2, c2, d2) = (el.a * el.a, el.b * el.b, el.c * el.c, el.d * el.d);
    let z2 = el.z * el.z;
    FidelityParts {
        fidelity: (2.0 * (a2 - b2 + c2 + d2) * c_in * c_in + 4.0 * b2) / z2,
        h1: 4.0 * b2 / z2,
        h2: 2.0 * (a2 - b2 + c2 + d2) / z2,
    }
}

pub fn output_fidelity(params: &ChannelParams, c_in: f64) -> Result<FidelityParts> {
    check_concurrence(c_in)?;
    Ok(fidelity_from_elements(&thermal_elements(params), c_in))
}

/// Smallest T* ≤ `t_max` above which the output concurrence vanishes.
///
/// Scans 256 evenly spaced temperatures in (0, t_max], then bisects the last
/// entangled/separable bracket down to 1e-6. Returns `None` when C_out is
/// positive at `t_max` or zero at every scanned temperature.
pub fn critical_temperature(j: f64, dx: f64, c_in: f64, t_max: f64) -> Result<Option<f64>> {
    if !t_max.is_finite() || t_max <= 0.0 {
        return Err(invalid(
            "t_max",
            format!("{t_max} is not a positive temperature"),
        ));
    }
    check_concurrence(c_in)?;
    let base = ChannelParams::new(j, dx, t_max)?;
    let entangled = |t: f64| -> Result<bool> {
        Ok(output_concurrence(&base.with_temperature(t)?, c_in)? > SEPARABLE_TOL)
    };

    let step = t_max / SCAN_POINTS as f64;
    let mut last_entangled = None;
    for k in 1..=SCAN_POINTS {
        if entangled(step * k as f64)? {
            last_entangled = Some(k);
        }
    }
    let k = match last_entangled {
        None => return Ok(None),
        Some(k) if k == SCAN_POINTS => return Ok(None),
        Some(k) => k,
    };

    let (mut lo, mut hi) = (step * k as f64, step * (k + 1) as f64);
    while hi - lo > BISECTION_TOL {
        let mid = 0.5 * (lo + hi);
        if entangled(mid)? {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(Some(hi))
}

/// Everything the protocol produces for one channel and one input.
#[derive(Clone, Debug)]
pub struct TeleportOutcome {
    pub c_in: f64,
    pub rho_out: DensityMatrix4,
    pub p: [[f64; 4]; 4],
    pub lambdas: [f64; 4],
    pub c_out: f64,
    pub fidelity: f64,
    pub h1: f64,
    pub h2: f64,
    pub omega: f64,
    pub chi: f64,
    pub a_plus: f64,
    pub a_minus: f64,
    pub b_elem: f64,
}

/// Runs the closed-form protocol for input angle `theta`.
pub fn teleport(params: &ChannelParams, theta: f64) -> Result<TeleportOutcome> {
    let input = InputState::new(theta)?;
    let el = thermal_elements(params);
    let comps = OutputComponents::from_elements(&el, theta);
    let rho_out = DensityMatrix4::new(comps.matrix())?;
    let p = channel_probabilities(&thermal_state(params)?)?;
    let c_in = input.c_in();
    let lambdas = lambdas_from_elements(&el, c_in)?;
    let f = fidelity_from_elements(&el, c_in);
    Ok(TeleportOutcome {
        c_in,
        rho_out,
        p,
        lambdas,
        c_out: concurrence_from_lambdas(&lambdas),
        fidelity: f.fidelity,
        h1: f.h1,
        h2: f.h2,
        omega: comps.omega,
        chi: comps.chi,
        a_plus: comps.a_plus,
        a_minus: comps.a_minus,
        b_elem: comps.b,
    })
}

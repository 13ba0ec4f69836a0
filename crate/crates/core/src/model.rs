//! Two-qubit Heisenberg XXX chain with an x-axis Dzyaloshinskii–Moriya term:
//! Hamiltonian, exact spectrum and the thermal state in closed form.
//!
//! Basis order is |00⟩, |01⟩, |10⟩, |11⟩ with qubit 1 as the left tensor
//! factor. Energies and temperature share units with k_B = 1.

use std::f64::consts::{FRAC_1_SQRT_2, FRAC_PI_2, FRAC_PI_4};

use crate::density::DensityMatrix4;
use crate::error::{invalid, Error, Result};
use crate::linalg::{ComplexMatrix4, StateVector4, C64};

/// Physical parameters of the resource channel.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ChannelParams {
    j: f64,
    dx: f64,
    temperature: f64,
}

impl ChannelParams {
    /// `j`: exchange coupling (J > 0 antiferromagnetic), `dx`: DM x-component,
    /// `temperature` ≥ 0.
    pub fn new(j: f64, dx: f64, temperature: f64) -> Result<Self> {
        if !j.is_finite() {
            return Err(invalid("j", format!("{j} is not finite")));
        }
        if !dx.is_finite() {
            return Err(invalid("dx", format!("{dx} is not finite")));
        }
        if !temperature.is_finite() || temperature < 0.0 {
            return Err(invalid(
                "t",
                format!("{temperature} is not a finite temperature >= 0"),
            ));
        }
        Ok(Self { j, dx, temperature })
    }

    pub fn j(&self) -> f64 {
        self.j
    }

    pub fn dx(&self) -> f64 {
        self.dx
    }

    pub fn temperature(&self) -> f64 {
        self.temperature
    }

    /// 1/T, or `None` when T is zero (or so small that 1/T overflows).
    pub fn beta(&self) -> Option<f64> {
        let beta = 1.0 / self.temperature;
        beta.is_finite().then_some(beta)
    }

    pub fn with_temperature(&self, temperature: f64) -> Result<Self> {
        Self::new(self.j, self.dx, temperature)
    }

    pub fn with_dx(&self, dx: f64) -> Result<Self> {
        Self::new(self.j, dx, self.temperature)
    }
}

/// Eigenvalues ε₁..ε₄ and the mixing angles of the two Dₓ-dependent
/// eigenvectors.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Spectrum {
    pub energies: [f64; 4],
    pub theta1: f64,
    pub theta2: f64,
}

impl Spectrum {
    pub fn ground_energy(&self) -> f64 {
        self.energies.iter().copied().fold(f64::INFINITY, f64::min)
    }
}

/// Hamiltonian matrix in the computational basis.
pub fn build_hamiltonian(params: &ChannelParams) -> ComplexMatrix4 {
    let j = params.j;
    let id = C64::new(0.0, params.dx);
    let r = |x: f64| C64::new(x, 0.0);
    let z = r(0.0);
    ComplexMatrix4([
        [r(j), id, -id, z],
        [-id, r(-j), r(2.0 * j), id],
        [id, r(2.0 * j), r(-j), -id],
        [z, -id, id, r(j)],
    ])
}

/// Exact spectrum: ε₁ = ε₂ = J, ε₃,₄ = −J ± 2√(Dₓ² + J²), and
/// θ₁,₂ = arctan(Dₓ / (√(Dₓ² + J²) ∓ J)).
///
/// At Dₓ = 0 one of the two angles is 0/0; it takes its Dₓ → 0⁺ limit
/// (π/2 for the vanishing denominator, π/4 for both when J = 0 too).
pub fn eigensystem(params: &ChannelParams) -> Spectrum {
    let (j, dx) = (params.j, params.dx);
    let r = dx.hypot(j);
    let energies = [j, j, -j + 2.0 * r, -j - 2.0 * r];

    let (theta1, theta2) = if dx == 0.0 {
        if j > 0.0 {
            (FRAC_PI_2, 0.0)
        } else if j < 0.0 {
            (0.0, FRAC_PI_2)
        } else {
            (FRAC_PI_4, FRAC_PI_4)
        }
    } else {
        // r ∓ J without cancellation: (r − J)(r + J) = Dₓ²
        let (r_minus_j, r_plus_j) = if j > 0.0 {
            (dx * dx / (r + j), r + j)
        } else {
            (r - j, dx * dx / (r - j))
        };
        (dx.atan2(r_minus_j), dx.atan2(r_plus_j))
    };

    Spectrum {
        energies,
        theta1,
        theta2,
    }
}

/// Eigenvectors φ₁..φ₄ paired with `spectrum.energies`.
///
/// φ₁ = (|00⟩ + |11⟩)/√2 and φ₂ = (|01⟩ + |10⟩)/√2 do not depend on the
/// couplings; φ₃ and φ₄ mix |00⟩ − |11⟩ with i(|01⟩ − |10⟩).
pub fn eigenvectors(spectrum: &Spectrum) -> [StateVector4; 4] {
    let h = FRAC_1_SQRT_2;
    let (s1, c1) = spectrum.theta1.sin_cos();
    let (s2, c2) = spectrum.theta2.sin_cos();
    let re = |x: f64| C64::new(x, 0.0);
    let im = |x: f64| C64::new(0.0, x);
    [
        StateVector4::from_real([h, 0.0, 0.0, h]),
        StateVector4::from_real([0.0, h, h, 0.0]),
        StateVector4([re(-h * s1), im(h * c1), im(-h * c1), re(h * s1)]),
        StateVector4([re(-h * s2), im(-h * c2), im(h * c2), re(h * s2)]),
    ]
}

/// Boltzmann weights relative to the ground level and the log of the factor
/// that restores absolute weights (`None` at zero temperature).
fn shifted_weights(params: &ChannelParams, spectrum: &Spectrum) -> ([f64; 4], Option<f64>) {
    let e_min = spectrum.ground_energy();
    match params.beta() {
        Some(beta) => (
            spectrum.energies.map(|e| (-beta * (e - e_min)).exp()),
            Some(-beta * e_min),
        ),
        None => {
            let scale = spectrum
                .energies
                .iter()
                .fold(0.0_f64, |m, e| m.max(e.abs()));
            let tol = 1e-12 * scale;
            (
                spectrum
                    .energies
                    .map(|e| if e - e_min <= tol { 1.0 } else { 0.0 }),
                None,
            )
        }
    }
}

/// Z = 2e^{−βJ} + 2e^{βJ} cosh(2β√(Dₓ² + J²)), summed in ground-shifted form.
///
/// Undefined at T = 0; [`thermal_state`] handles that limit itself.
pub fn partition_function(params: &ChannelParams) -> Result<f64> {
    let spectrum = eigensystem(params);
    match shifted_weights(params, &spectrum) {
        (w, Some(ln_scale)) => Ok(w.iter().sum::<f64>() * ln_scale.exp()),
        (_, None) => Err(Error::ZeroTemperature),
    }
}

/// Matrix elements of the unnormalized thermal state
///
/// ```text
///        ⎛  a   iμ   iν   c ⎞
///  Z·ρ = ⎜ −iμ   b    d  −iν ⎟
///        ⎜ −iν   d    b  −iμ ⎟
///        ⎝  c   iν   iμ   a ⎠
/// ```
///
/// All fields, `z` included, are expressed relative to the ground-state
/// Boltzmann weight: the absolute values are the stored ones times
/// `exp(ln_scale)`. Ratios such as `a / z` are scale-free. At zero temperature
/// `ln_scale` is `None` and the weights are 1 on the ground eigenspace and 0
/// elsewhere.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ThermalElements {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub d: f64,
    pub mu: f64,
    pub nu: f64,
    pub z: f64,
    pub ln_scale: Option<f64>,
}

impl ThermalElements {
    /// Absolute (unshifted) elements. `None` at zero temperature; may overflow
    /// to infinity for very low T.
    pub fn unscaled(&self) -> Option<ThermalElements> {
        let k = self.ln_scale?.exp();
        Some(ThermalElements {
            a: self.a * k,
            b: self.b * k,
            c: self.c * k,
            d: self.d * k,
            mu: self.mu * k,
            nu: self.nu * k,
            z: self.z * k,
            ln_scale: Some(0.0),
        })
    }

    /// Thermal density matrix ρ = (element matrix)/Z.
    pub fn density_matrix(&self) -> ComplexMatrix4 {
        let inv = 1.0 / self.z;
        let (a, b, c, d) = (self.a * inv, self.b * inv, self.c * inv, self.d * inv);
        let mu = C64::new(0.0, self.mu * inv);
        let nu = C64::new(0.0, self.nu * inv);
        let r = |x: f64| C64::new(x, 0.0);
        ComplexMatrix4([
            [r(a), mu, nu, r(c)],
            [-mu, r(b), r(d), -nu],
            [-nu, r(d), r(b), -mu],
            [r(c), nu, mu, r(a)],
        ])
    }
}

/// Thermal matrix elements a, b, c, d, μ, ν and Z from the exact spectrum.
///
/// Valid for every T ≥ 0; at T = 0 this is the ground-projector limit.
pub fn thermal_elements(params: &ChannelParams) -> ThermalElements {
    let spectrum = eigensystem(params);
    let (w, ln_scale) = shifted_weights(params, &spectrum);
    let (s1, c1) = spectrum.theta1.sin_cos();
    let (s2, c2) = spectrum.theta2.sin_cos();
    let half = |x: f64| 0.5 * x;
    ThermalElements {
        a: half(w[0]) + half(w[2] * s1 * s1) + half(w[3] * s2 * s2),
        b: half(w[1]) + half(w[2] * c1 * c1) + half(w[3] * c2 * c2),
        c: half(w[0]) - half(w[2] * s1 * s1) - half(w[3] * s2 * s2),
        d: half(w[1]) - half(w[2] * c1 * c1) - half(w[3] * c2 * c2),
        mu: half(w[2] * s1 * c1) - half(w[3] * s2 * c2),
        nu: half(w[3] * s2 * c2) - half(w[2] * s1 * c1),
        z: w.iter().sum(),
        ln_scale,
    }
}

/// Thermal state ρ(T) = e^{−βH}/Z; at T = 0 the equal-weight mixture over the
/// ground eigenspace.
pub fn thermal_state(params: &ChannelParams) -> Result<DensityMatrix4> {
    DensityMatrix4::new(thermal_elements(params).density_matrix())
}

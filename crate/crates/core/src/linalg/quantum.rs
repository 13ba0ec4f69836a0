use std::f64::consts::FRAC_1_SQRT_2;

use super::eigen::{hermitian_eig, singular_values};
use super::matrix::{kron, ComplexMatrix4, Matrix2, StateVector4, C64};
use crate::density::{check_normalized, DensityMatrix4};
use crate::error::{invalid, Error, Result};

/// Eigenvalues of a density matrix in `[-NEGATIVE_CLAMP, 0)` are treated as
/// zero; anything more negative is an invalid state.
pub const NEGATIVE_CLAMP: f64 = 1e-10;

/// Inverse temperature for [`gibbs_state_oracle`].
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Beta {
    Finite(f64),
    /// Zero temperature: equal-weight mixture over the ground eigenspace.
    Infinite,
}

/// Pauli matrix σⁿ for n = 0 (identity), 1 (x), 2 (y), 3 (z).
pub fn pauli(n: usize) -> Result<Matrix2> {
    let o = C64::new(0.0, 0.0);
    let l = C64::new(1.0, 0.0);
    let i = C64::new(0.0, 1.0);
    Ok(match n {
        0 => [[l, o], [o, l]],
        1 => [[o, l], [l, o]],
        2 => [[o, -i], [i, o]],
        3 => [[l, o], [o, -l]],
        _ => return Err(Error::PauliIndex(n)),
    })
}

/// σⁿ ⊗ σᵐ.
pub fn pauli_pair(n: usize, m: usize) -> Result<ComplexMatrix4> {
    Ok(kron(&pauli(n)?, &pauli(m)?))
}

/// S = σʸ ⊗ σʸ.
pub fn spin_flip() -> ComplexMatrix4 {
    pauli_pair(2, 2).expect("valid index")
}

/// Bell states ordered as the projectors E⁰..E³: |Ψ⁻⟩, |Φ⁻⟩, |Φ⁺⟩, |Ψ⁺⟩.
pub fn bell_states() -> [StateVector4; 4] {
    let h = FRAC_1_SQRT_2;
    [
        StateVector4::from_real([0.0, h, -h, 0.0]),
        StateVector4::from_real([h, 0.0, 0.0, -h]),
        StateVector4::from_real([h, 0.0, 0.0, h]),
        StateVector4::from_real([0.0, h, h, 0.0]),
    ]
}

/// E⁰ = |Ψ⁻⟩⟨Ψ⁻|, E¹ = |Φ⁻⟩⟨Φ⁻|, E² = |Φ⁺⟩⟨Φ⁺|, E³ = |Ψ⁺⟩⟨Ψ⁺|.
pub fn bell_projectors() -> [ComplexMatrix4; 4] {
    bell_states().map(|b| b.projector())
}

/// e^{−βH}/Tr e^{−βH} through a dense eigendecomposition of `h`.
///
/// Boltzmann weights are shifted by the ground energy so large β cannot
/// overflow. `Beta::Infinite` returns the ground-eigenspace projector divided
/// by its dimension; levels within `1e-12·max|ε|` of the minimum count as
/// degenerate.
pub fn gibbs_state_oracle(h: &ComplexMatrix4, beta: Beta) -> Result<DensityMatrix4> {
    let eig = hermitian_eig(h)?;
    let e_min = eig.eigenvalues[0];
    let weights: [f64; 4] = match beta {
        Beta::Finite(b) => {
            if !b.is_finite() || b < 0.0 {
                return Err(invalid("beta", format!("{b} is not a finite value >= 0")));
            }
            eig.eigenvalues.map(|e| (-b * (e - e_min)).exp())
        }
        Beta::Infinite => {
            let scale = eig.eigenvalues.iter().fold(0.0_f64, |m, e| m.max(e.abs()));
            let tol = 1e-12 * scale;
            eig.eigenvalues
                .map(|e| if e - e_min <= tol { 1.0 } else { 0.0 })
        }
    };
    let total: f64 = weights.iter().sum();
    let mut rho = ComplexMatrix4::zeros();
    for (w, v) in weights.iter().zip(&eig.eigenvectors) {
        rho = rho + v.projector().scale(w / total);
    }
    DensityMatrix4::new(rho)
}

/// Square roots λ₁ ≥ λ₂ ≥ λ₃ ≥ λ₄ of the eigenvalues of R = ρ S ρ* S.
///
/// With ρ = W W† and W = V·diag(√p), the spectrum of R equals that of
/// X†X for X = Wᵀ S W, so the λ are the singular values of X. This avoids a
/// non-Hermitian eigensolver and keeps small λ accurate.
pub fn concurrence_lambdas(rho: &DensityMatrix4) -> Result<[f64; 4]> {
    let eig = rho.eigen();
    let mut w = ComplexMatrix4::zeros();
    for (j, (&p, v)) in eig.eigenvalues.iter().zip(&eig.eigenvectors).enumerate() {
        if p < -NEGATIVE_CLAMP {
            return Err(Error::NegativeEigenvalue { value: p });
        }
        let amp = p.max(0.0).sqrt();
        for i in 0..4 {
            w[(i, j)] = v.0[i] * amp;
        }
    }
    let x = w.transpose() * spin_flip() * w;
    Ok(singular_values(&x))
}

/// Wootters concurrence max(0, λ₁ − λ₂ − λ₃ − λ₄).
pub fn wootters_concurrence(rho: &DensityMatrix4) -> Result<f64> {
    let l = concurrence_lambdas(rho)?;
    Ok((2.0 * l[0] - l.iter().sum::<f64>()).max(0.0))
}

/// ⟨ψ|ρ|ψ⟩ for a unit-norm ψ.
pub fn pure_state_fidelity(psi: &StateVector4, rho: &DensityMatrix4) -> Result<f64> {
    check_normalized(psi)?;
    let overlap = psi.inner(&rho.matrix().apply(psi));
    debug_assert!(
        overlap.im.abs() <= 1e-12,
        "imaginary overlap {}",
        overlap.im
    );
    Ok(overlap.re.clamp(0.0, 1.0))
}

use crate::error::{Error, Result};
use crate::linalg::{hermitian_eig, ComplexMatrix4, HermitianEigenResult, StateVector4};

/// Largest |ρ_ij − conj(ρ_ji)| accepted for a density matrix.
pub const HERMITIAN_ATOL: f64 = 1e-12;
/// Largest |Tr ρ − 1| accepted.
pub const TRACE_ATOL: f64 = 1e-12;
/// Most negative eigenvalue accepted as rounding noise.
pub const PSD_ATOL: f64 = 1e-10;
/// Largest |‖ψ‖ − 1| accepted for a physical state vector.
pub const NORM_ATOL: f64 = 1e-12;

/// Validated two-qubit density operator: Hermitian, unit trace and positive
/// semidefinite to the tolerances above.
///
/// The spectrum computed during validation is kept, so spectral functions
/// (square roots, concurrence) do not re-diagonalize.
#[derive(Clone, Debug)]
pub struct DensityMatrix4 {
    matrix: ComplexMatrix4,
    eigen: HermitianEigenResult,
}

impl DensityMatrix4 {
    pub fn new(matrix: ComplexMatrix4) -> Result<Self> {
        let (row, col, deviation) = matrix.hermiticity_violation();
        if deviation > HERMITIAN_ATOL || deviation.is_nan() {
            return Err(Error::NotHermitian {
                row,
                col,
                deviation,
            });
        }
        let trace = matrix.trace().re;
        if (trace - 1.0).abs() > TRACE_ATOL || trace.is_nan() {
            return Err(Error::TraceNotUnit { trace });
        }
        let eigen = hermitian_eig(&matrix)?;
        if eigen.eigenvalues[0] < -PSD_ATOL {
            return Err(Error::NegativeEigenvalue {
                value: eigen.eigenvalues[0],
            });
        }
        Ok(Self { matrix, eigen })
    }

    pub fn maximally_mixed() -> Self {
        Self::new(ComplexMatrix4::identity().scale(0.25)).expect("I/4 is a state")
    }

    /// |ψ⟩⟨ψ| for a unit-norm ψ.
    pub fn from_pure(psi: &StateVector4) -> Result<Self> {
        check_normalized(psi)?;
        Self::new(psi.projector())
    }

    pub fn matrix(&self) -> &ComplexMatrix4 {
        &self.matrix
    }

    /// Spectrum in ascending order, as computed at construction.
    pub fn eigen(&self) -> &HermitianEigenResult {
        &self.eigen
    }

    pub fn min_eigenvalue(&self) -> f64 {
        self.eigen.eigenvalues[0]
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        self.matrix.max_abs_diff(&other.matrix)
    }
}

pub(crate) fn check_normalized(psi: &StateVector4) -> Result<()> {
    let norm = psi.norm();
    if (norm - 1.0).abs() > NORM_ATOL || norm.is_nan() {
        return Err(Error::NotNormalized { norm });
    }
    Ok(())
}

//! Dense 4×4 complex linear algebra and generic two-qubit quantities.
//!
//! Everything here is independent of the spin-chain model: the eigensolver,
//! Gibbs states, concurrence and fidelity are computed by brute force and serve
//! as the reference against which the closed forms in [`crate::model`] and
//! [`crate::teleport`] are checked.

mod eigen;
mod matrix;
mod quantum;

pub use eigen::{hermitian_eig, singular_values, HermitianEigenResult, HERMITIAN_TOL};
pub use matrix::{kron, ComplexMatrix4, Matrix2, StateVector4, C64};
pub use quantum::{
    bell_projectors, bell_states, concurrence_lambdas, gibbs_state_oracle, pauli, pauli_pair,
    pure_state_fidelity, spin_flip, wootters_concurrence, Beta, NEGATIVE_CLAMP,
};

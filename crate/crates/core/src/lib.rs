//! Thermal entanglement teleportation through a two-qubit Heisenberg XXX
//! chain with an x-axis Dzyaloshinskii–Moriya interaction.
//!
//! - [`model`]: Hamiltonian, exact spectrum, thermal state in closed form.
//! - [`teleport`]: output state, output concurrence and fidelity of the
//!   two-copy teleportation channel.
//! - [`linalg`]: dense reference computations (Jacobi eigensolver, Gibbs
//!   states, Wootters concurrence) used to check the closed forms.
//! - [`sweep`]: parameter grids, figure presets and CSV / JSON-lines output.

pub mod density;
pub mod error;
pub mod linalg;
pub mod model;
pub mod sweep;
pub mod teleport;

pub use density::DensityMatrix4;
pub use error::{Error, Result};
pub use model::{ChannelParams, Spectrum, ThermalElements};
pub use teleport::{InputState, TeleportOutcome};

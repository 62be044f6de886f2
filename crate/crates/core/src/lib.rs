//! Squeezing in the resonance fluorescence of a closed-loop Λ atom.
//!
//! Two optical fields drive the excited state |1⟩ to the ground states |3⟩
//! and |2⟩, and a third low-frequency field couples |2⟩ and |3⟩. The
//! relative phase Φ of the three fields controls where squeezing shows up in
//! the light scattered on |1⟩↔|3⟩. The crate computes:
//!
//! * the steady state of the optical Bloch equations ([`liouville`]),
//! * the squeezing spectrum S(ω, θ) through the quantum regression theorem,
//!   with an independent time-domain cross-check ([`spectrum`]),
//! * the dressed states of the rotating-frame Hamiltonian, their coherence
//!   decay rates and a Lorentzian sideband model ([`dressed`]),
//! * the phase-optimized normally ordered variance F ([`variance`]),
//! * a key=value run-config front end writing CSV files ([`cli`]).
//!
//! All frequencies are in units of γ₂.

pub mod checks;
pub mod cli;
pub mod dressed;
pub mod error;
mod linalg;
pub mod liouville;
pub mod model;
pub mod spectrum;
pub mod variance;

pub use error::{Error, Result};
pub use liouville::{
    build_liouvillian, evolve, steady_state, to_density_matrix, DensityMatrix, LiouvilleSystem,
    StateVector, C64,
};
pub use model::{make_params, QuadraturePhase, RawParams, SystemParams};

//! Dense statevector and density-matrix simulation of textbook quantum
//! circuits: reversible classical logic, the standard gate set, Deutsch-Jozsa,
//! Bernstein-Vazirani, Grover search, phase estimation, Shor factoring,
//! entanglement protocols and a simple decoherence model.
//!
//! Qubit 0 is always the most significant bit of a basis index, so `|10⟩`
//! is amplitude 2. States are compared by [`StateVector::fidelity`], which is
//! blind to global phase.
//!
//! ```
//! use qsim::{gates, StateVector};
//!
//! let bell = StateVector::basis(2, 0)?
//!     .apply_gate(&gates::h(), &[0])?
//!     .apply_gate(&gates::cnot(), &[0, 1])?;
//! assert_eq!(bell.dump(), "00 0.707106781187 0\n11 0.707106781187 0\n");
//! # Ok::<(), qsim::Error>(())
//! ```

pub mod algorithms;
pub mod classical;
pub mod decoherence;
pub mod density;
pub mod error;
pub mod gate;
pub mod gates;
mod kernel;
pub mod limits;
pub mod numtheory;
pub mod protocols;
pub mod rng;
pub mod state;
pub mod truth_table;

pub use density::{BlochVector, DensityMatrix};
pub use error::{Error, Result};
pub use gate::{GateMatrix, Structure};
pub use rng::RandomSource;
pub use state::{MeasurementResult, StateVector};
pub use truth_table::TruthTable;

/// Complex amplitude type used throughout.
pub type C64 = num_complex::Complex64;

#[cfg(doctest)]
#[doc = include_str!("../../../README.md")]
mod readme {}

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/states-and-gates.md")]
    mod states_and_gates {}
    #[doc = include_str!("../../../book/src/reversible-logic.md")]
    mod reversible_logic {}
    #[doc = include_str!("../../../book/src/one-query.md")]
    mod one_query {}
    #[doc = include_str!("../../../book/src/grover.md")]
    mod grover {}
    #[doc = include_str!("../../../book/src/phase-estimation.md")]
    mod phase_estimation {}
    #[doc = include_str!("../../../book/src/factoring.md")]
    mod factoring {}
    #[doc = include_str!("../../../book/src/entanglement.md")]
    mod entanglement {}
    #[doc = include_str!("../../../book/src/decoherence.md")]
    mod decoherence {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}

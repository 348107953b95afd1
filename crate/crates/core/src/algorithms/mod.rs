//! End-to-end quantum algorithms.
//!
//! Every algorithm that queries a Boolean function does so only through an
//! [`Oracle`], which counts how many times its gate has been applied.

use std::cell::Cell;

use serde::Serialize;

use crate::error::Result;
use crate::gate::GateMatrix;
use crate::state::StateVector;

mod deutsch;
mod grover;
mod phase;
mod shor;

pub use deutsch::{
    bernstein_vazirani, deutsch, deutsch_jozsa, deutsch_jozsa_state, zero_amplitude, BvOutcome,
    Classification,
};
pub use grover::{grover_iterate, grover_plan, grover_search, grover_state, GroverOutcome, GroverPlan};
pub use phase::{
    pe_register_size, phase_estimation, phase_estimation_distribution, phase_kickback_state,
    PhaseEstimate,
};
pub use shor::{
    default_control_bits, order_eigenstate, order_finding, order_finding_run, shor_attempt,
    shor_factor, u_a_gate, AttemptStatus, OrderRun, ShorAttempt, ShorOutcome, MAX_UA_QUBITS,
};

/// Promise class of a Boolean function.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum FunctionClass {
    Constant,
    Balanced,
}

/// A black-box gate that records how often it is applied.
#[derive(Debug)]
pub struct Oracle {
    gate: GateMatrix,
    calls: Cell<usize>,
}

impl Oracle {
    pub fn new(gate: GateMatrix) -> Self {
        Self { gate, calls: Cell::new(0) }
    }

    pub fn arity(&self) -> usize {
        self.gate.arity()
    }

    pub fn apply(&self, state: &mut StateVector, targets: &[usize]) -> Result<()> {
        state.apply_gate_mut(&self.gate, targets)?;
        self.calls.set(self.calls.get() + 1);
        Ok(())
    }

    pub fn calls(&self) -> usize {
        self.calls.get()
    }
}

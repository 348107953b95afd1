use serde::Serialize;

use crate::error::{Error, Result};
use crate::gate::GateMatrix;
use crate::gates::{controlled, hadamard_n, qft};
use crate::rng::RandomSource;
use crate::state::StateVector;

/// Measured control register of a phase-estimation run.
#[derive(Debug, Clone, Serialize)]
pub struct PhaseEstimate {
    /// Register value, qubit 0 most significant.
    pub x: usize,
    pub n_bits: usize,
    /// `x / 2^n_bits`, the estimate of `φ/2π`.
    pub fraction: f64,
    /// Born probability of `x`.
    pub probability: f64,
}

/// Control-register qubits needed for `n_bits` of accuracy with failure
/// probability at most `delta`: `n + ⌈log₂(2 + 1/(2δ))⌉`.
pub fn pe_register_size(n_bits: usize, delta: f64) -> Result<usize> {
    if !(delta > 0.0 && delta < 1.0) {
        return Err(Error::InvalidArgument(format!("δ = {delta} outside (0, 1)")));
    }
    let extra = (2.0 + 1.0 / (2.0 * delta)).log2().ceil() as usize;
    Ok(n_bits + extra)
}

/// Controls `|0…0⟩` followed by the target `u`; Hadamards on the controls;
/// control `j` drives `U^(2^(n−1−j))`. The result is
/// `2^{-n/2} Σ_Y |Y⟩ ⊗ U^Y|u⟩`.
pub fn phase_kickback_state(u_gate: &GateMatrix, u: &StateVector, n_bits: usize) -> Result<StateVector> {
    if u_gate.arity() != u.n_qubits() {
        return Err(Error::DimensionMismatch { expected: u_gate.arity(), found: u.n_qubits() });
    }
    if n_bits == 0 {
        return Err(Error::ZeroQubits);
    }
    let m = u.n_qubits();
    let controls = StateVector::basis(n_bits, 0)?;
    let mut state = controls.tensor(u)?;
    let control_wires: Vec<usize> = (0..n_bits).collect();
    state.apply_gate_mut(&hadamard_n(n_bits)?, &control_wires)?;
    let mut power = u_gate.clone();
    // least significant control first: it needs U^1, then square each step
    for j in (0..n_bits).rev() {
        let mut wires = vec![j];
        wires.extend(n_bits..n_bits + m);
        state.apply_gate_mut(&controlled(&power, 1)?, &wires)?;
        if j > 0 {
            power = power.matmul(&power);
        }
    }
    Ok(state)
}

/// State just before readout: the kickback register followed by the
/// inverse Fourier transform on the controls.
fn readout_state(u_gate: &GateMatrix, u: &StateVector, n_bits: usize) -> Result<StateVector> {
    let mut state = phase_kickback_state(u_gate, u, n_bits)?;
    let control_wires: Vec<usize> = (0..n_bits).collect();
    state.apply_gate_mut(&qft(n_bits, true)?, &control_wires)?;
    Ok(state)
}

/// Outcome distribution of the control register.
pub fn phase_estimation_distribution(
    u_gate: &GateMatrix,
    u: &StateVector,
    n_bits: usize,
) -> Result<Vec<f64>> {
    let state = readout_state(u_gate, u, n_bits)?;
    state.marginal_probabilities(&(0..n_bits).collect::<Vec<_>>())
}

/// Estimate the eigenphase of `u_gate` on `u` to `n_bits` bits.
pub fn phase_estimation(
    u_gate: &GateMatrix,
    u: &StateVector,
    n_bits: usize,
    rng: &mut RandomSource,
) -> Result<PhaseEstimate> {
    let state = readout_state(u_gate, u, n_bits)?;
    let m = state.measure(&(0..n_bits).collect::<Vec<_>>(), rng)?;
    let x = m.value();
    Ok(PhaseEstimate {
        x,
        n_bits,
        fraction: x as f64 / (1u64 << n_bits) as f64,
        probability: m.probability,
    })
}

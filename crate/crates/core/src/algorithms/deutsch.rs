use serde::Serialize;

use super::{FunctionClass, Oracle};
use crate::error::{Error, Result};
use crate::gates::{h, hadamard_n, xor_oracle};
use crate::state::StateVector;
use crate::truth_table::TruthTable;
use crate::C64;

/// Verdict of a one-query promise algorithm.
#[derive(Debug, Clone, Serialize)]
pub struct Classification {
    pub class: FunctionClass,
    /// Probability that the query register reads all zeros.
    pub zero_probability: f64,
    pub oracle_calls: usize,
}

impl Classification {
    fn from_zero_probability(zero_probability: f64, oracle_calls: usize) -> Self {
        let class = if zero_probability > 0.5 {
            FunctionClass::Constant
        } else {
            FunctionClass::Balanced
        };
        Self { class, zero_probability, oracle_calls }
    }
}

/// Register `|O⟩`, ancilla `|1⟩`, Hadamards on everything, one XOR-oracle
/// query, Hadamards on the register. The ancilla is the last qubit and stays
/// in `(|0⟩ − |1⟩)/√2` throughout.
fn query_circuit(oracle: &Oracle) -> Result<StateVector> {
    let n = oracle.arity() - 1;
    let register: Vec<usize> = (0..n).collect();
    let all: Vec<usize> = (0..=n).collect();
    let mut state = StateVector::basis(n + 1, 1)?;
    state.apply_gate_mut(&hadamard_n(n + 1)?, &all)?;
    oracle.apply(&mut state, &all)?;
    state.apply_gate_mut(&hadamard_n(n)?, &register)?;
    Ok(state)
}

/// Deutsch's problem for a one-bit function.
pub fn deutsch(f: &TruthTable) -> Result<Classification> {
    if f.n_inputs() != 1 {
        return Err(Error::InvalidArgument(format!(
            "Deutsch's problem takes a 1-input function, got {}",
            f.n_inputs()
        )));
    }
    let oracle = Oracle::new(xor_oracle(f)?);
    let mut state = StateVector::basis(2, 1)?;
    state.apply_gate_mut(&h(), &[0])?;
    state.apply_gate_mut(&h(), &[1])?;
    oracle.apply(&mut state, &[0, 1])?;
    state.apply_gate_mut(&h(), &[0])?;
    let p0 = state.marginal_probabilities(&[0])?[0];
    Ok(Classification::from_zero_probability(p0, oracle.calls()))
}

/// Final state of the Deutsch-Jozsa circuit, with the oracle call count.
pub fn deutsch_jozsa_state(f: &TruthTable) -> Result<(StateVector, usize)> {
    let oracle = Oracle::new(xor_oracle(f)?);
    let state = query_circuit(&oracle)?;
    Ok((state, oracle.calls()))
}

/// Decide constant vs balanced with a single query. Functions outside the
/// promise are rejected.
pub fn deutsch_jozsa(f: &TruthTable) -> Result<Classification> {
    if !(f.is_constant() || f.is_balanced()) {
        return Err(Error::PromiseViolated);
    }
    let (state, calls) = deutsch_jozsa_state(f)?;
    let register: Vec<usize> = (0..f.n_inputs()).collect();
    let p0 = state.marginal_probabilities(&register)?[0];
    Ok(Classification::from_zero_probability(p0, calls))
}

/// Register amplitude of `|O⟩` with the ancilla projected on `|−⟩`.
pub fn zero_amplitude(state: &StateVector) -> C64 {
    (state.amplitude(0) - state.amplitude(1)) * std::f64::consts::FRAC_1_SQRT_2
}

#[derive(Debug, Clone, Serialize)]
pub struct BvOutcome {
    pub value: usize,
    pub probability: f64,
    pub oracle_calls: usize,
}

/// Recover the hidden string `A` of `f_A(X) = A·X` with one query.
pub fn bernstein_vazirani(a: usize, n: usize) -> Result<BvOutcome> {
    let f = TruthTable::dot_product(n, a)?;
    if a >= f.len() {
        return Err(Error::IndexOutOfRange { index: a, n_qubits: n });
    }
    let oracle = Oracle::new(xor_oracle(&f)?);
    let state = query_circuit(&oracle)?;
    let register: Vec<usize> = (0..n).collect();
    let probs = state.marginal_probabilities(&register)?;
    let (value, &probability) = probs
        .iter()
        .enumerate()
        .max_by(|x, y| x.1.total_cmp(y.1))
        .expect("nonempty distribution");
    Ok(BvOutcome { value, probability, oracle_calls: oracle.calls() })
}

use std::f64::consts::PI;

use serde::Serialize;

use super::Oracle;
use crate::error::{Error, Result};
use crate::gates::{conditional_phase_shift, hadamard_n, phase_oracle};
use crate::rng::RandomSource;
use crate::state::StateVector;
use crate::truth_table::TruthTable;

/// Rotation geometry for `M` marked items among `N`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GroverPlan {
    pub n_items: u64,
    pub solutions: u64,
    /// `θ = 2 arcsin √(M/N)`: the rotation angle of one iteration.
    pub theta: f64,
    /// `round(π/(2θ) − ½)`, floored at 0.
    pub k_opt: u64,
}

impl GroverPlan {
    /// `sin²((2k+1)θ/2)`.
    pub fn success_probability(&self, k: u64) -> f64 {
        ((2 * k + 1) as f64 * self.theta / 2.0).sin().powi(2)
    }
}

pub fn grover_plan(n_items: u64, solutions: u64) -> Result<GroverPlan> {
    if !n_items.is_power_of_two() || n_items < 2 {
        return Err(Error::InvalidArgument(format!("database size {n_items} is not 2^n")));
    }
    if solutions == 0 || solutions > n_items {
        return Err(Error::InvalidArgument(format!(
            "solution count {solutions} outside [1, {n_items}]"
        )));
    }
    let theta = 2.0 * (solutions as f64 / n_items as f64).sqrt().asin();
    let k_opt = (PI / (2.0 * theta) - 0.5).round().max(0.0) as u64;
    Ok(GroverPlan { n_items, solutions, theta, k_opt })
}

/// One Grover iteration `(2|ψ⟩⟨ψ| − I)·O`, with the reflection about the
/// uniform state built as `H⊗n · (2|O⟩⟨O| − I) · H⊗n`.
pub fn grover_iterate(state: &mut StateVector, oracle: &Oracle) -> Result<()> {
    let n = state.n_qubits();
    let register: Vec<usize> = (0..n).collect();
    let hn = hadamard_n(n)?;
    oracle.apply(state, &register)?;
    state.apply_gate_mut(&hn, &register)?;
    state.apply_gate_mut(&conditional_phase_shift(n)?, &register)?;
    state.apply_gate_mut(&hn, &register)?;
    Ok(())
}

/// The register after `k` iterations from the uniform superposition, and
/// the number of oracle calls spent.
pub fn grover_state(f: &TruthTable, k: u64) -> Result<(StateVector, usize)> {
    let n = f.n_inputs();
    let oracle = Oracle::new(phase_oracle(f)?);
    let register: Vec<usize> = (0..n).collect();
    let mut state = StateVector::basis(n, 0)?;
    state.apply_gate_mut(&hadamard_n(n)?, &register)?;
    for _ in 0..k {
        grover_iterate(&mut state, &oracle)?;
    }
    Ok((state, oracle.calls()))
}

#[derive(Debug, Clone, Serialize)]
pub struct GroverOutcome {
    pub index: usize,
    /// `f(index)`: whether the measured item is a solution.
    pub verified: bool,
    pub iterations: u64,
    /// Simulated probability of measuring any solution.
    pub success_probability: f64,
    pub plan: GroverPlan,
    pub oracle_calls: usize,
}

/// Search for a marked item given the number of solutions `m`.
pub fn grover_search(f: &TruthTable, m: u64, rng: &mut RandomSource) -> Result<GroverOutcome> {
    let actual = f.count_ones() as u64;
    if actual != m {
        return Err(Error::InvalidArgument(format!(
            "declared {m} solutions but the table marks {actual}"
        )));
    }
    let plan = grover_plan(f.len() as u64, m)?;
    let (state, oracle_calls) = grover_state(f, plan.k_opt)?;
    let success_probability = f.ones().map(|x| state.amplitude(x).norm_sqr()).sum();
    let register: Vec<usize> = (0..f.n_inputs()).collect();
    let index = state.measure(&register, rng)?.value();
    Ok(GroverOutcome {
        index,
        verified: f.get(index),
        iterations: plan.k_opt,
        success_probability,
        plan,
        oracle_calls,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn plan_examples() {
        let p = grover_plan(4, 1).unwrap();
        assert!((p.theta - PI / 3.0).abs() < 1e-12);
        assert_eq!(p.k_opt, 1);
        let all = grover_plan(8, 8).unwrap();
        assert!((all.theta - PI).abs() < 1e-12);
        assert_eq!(all.k_opt, 0);
        assert_eq!(grover_plan(1 << 20, 1).unwrap().k_opt, 804);
        assert!(grover_plan(6, 1).is_err());
        assert!(grover_plan(4, 5).is_err());
        assert!(grover_plan(4, 0).is_err());
    }

    #[test]
    fn plan_angle_invariant() {
        for (n, m) in [(4u64, 1u64), (16, 3), (64, 5), (1024, 1000)] {
            let p = grover_plan(n, m).unwrap();
            assert!(((p.theta / 2.0).sin() - (m as f64 / n as f64).sqrt()).abs() < 1e-12);
        }
    }

    #[test]
    fn four_items_one_solution_is_certain() {
        let f = TruthTable::marking(2, &[2]).unwrap();
        for seed in 0..10 {
            let r = grover_search(&f, 1, &mut RandomSource::new(seed)).unwrap();
            assert_eq!(r.index, 2);
            assert!(r.verified);
            assert_eq!(r.iterations, 1);
            assert_eq!(r.oracle_calls, 1);
            assert!((r.success_probability - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn sixteen_items_three_iterations() {
        let f = TruthTable::marking(4, &[9]).unwrap();
        let r = grover_search(&f, 1, &mut RandomSource::new(0)).unwrap();
        assert_eq!(r.iterations, 3);
        assert!(r.success_probability >= 0.96);
        let theta = 2.0 * 0.25f64.asin();
        assert!((r.success_probability - (3.5 * theta).sin().powi(2)).abs() < 1e-12);
    }

    #[test]
    fn everything_marked() {
        let f = TruthTable::constant(3, true).unwrap();
        let r = grover_search(&f, 8, &mut RandomSource::new(3)).unwrap();
        assert!(r.verified);
        assert_eq!(r.iterations, 0);
        assert_eq!(r.oracle_calls, 0);
    }

    #[test]
    fn wrong_solution_count_rejected() {
        let f = TruthTable::marking(3, &[1, 2]).unwrap();
        assert!(grover_search(&f, 1, &mut RandomSource::new(0)).is_err());
    }
}

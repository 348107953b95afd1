//! Dephasing by entanglement with an apparatus or environment.
//!
//! The environment never appears as a state. Only the overlap
//! `γ = ⟨e₀|e₁⟩` enters, and it multiplies the off-diagonal entries of the
//! affected qubit.

use serde::Serialize;

use crate::density::DensityMatrix;
use crate::error::{Error, Result};
use crate::gates::{h, hadamard_n, xor_oracle};
use crate::state::StateVector;
use crate::truth_table::TruthTable;
use crate::C64;

/// Real overlap `⟨e₀|e₁⟩ ∈ [0, 1]`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Serialize)]
#[serde(transparent)]
pub struct Overlap(f64);

impl Overlap {
    pub const NONE: Overlap = Overlap(0.0);
    pub const FULL: Overlap = Overlap(1.0);

    pub fn new(gamma: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&gamma) {
            return Err(Error::InvalidArgument(format!("overlap {gamma} outside [0, 1]")));
        }
        Ok(Self(gamma))
    }

    pub fn value(self) -> f64 {
        self.0
    }
}

/// Overlap decaying as `e^{−λt}`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DecayModel {
    lambda: f64,
}

impl DecayModel {
    pub fn new(lambda: f64) -> Result<Self> {
        if !(lambda > 0.0 && lambda.is_finite()) {
            return Err(Error::InvalidArgument(format!("decay rate {lambda} must be positive")));
        }
        Ok(Self { lambda })
    }

    pub fn lambda(&self) -> f64 {
        self.lambda
    }

    /// Decoherence time `1/λ`.
    pub fn tau(&self) -> f64 {
        1.0 / self.lambda
    }
}

pub fn overlap_at(model: DecayModel, t: f64) -> Result<Overlap> {
    if !(t >= 0.0) {
        return Err(Error::InvalidArgument(format!("time {t} is negative")));
    }
    Ok(Overlap((-model.lambda * t).exp()))
}

/// Reduced state of a qubit `α|0⟩ + β|1⟩` after it has marked the apparatus
/// states `|m₀⟩, |m₁⟩`, with `overlap_m = ⟨m₀|m₁⟩`.
pub fn apparatus_reduced_density(alpha: C64, beta: C64, overlap_m: C64) -> Result<DensityMatrix> {
    let norm = alpha.norm_sqr() + beta.norm_sqr();
    if (norm - 1.0).abs() > 1e-10 {
        return Err(Error::NotNormalized(norm));
    }
    if overlap_m.norm() > 1.0 + 1e-12 {
        return Err(Error::InvalidArgument(format!("|⟨m₀|m₁⟩| = {} exceeds 1", overlap_m.norm())));
    }
    let entries = vec![
        C64::new(alpha.norm_sqr(), 0.0),
        alpha * beta.conj() * overlap_m.conj(),
        alpha.conj() * beta * overlap_m,
        C64::new(beta.norm_sqr(), 0.0),
    ];
    DensityMatrix::from_entries(1, entries)
}

/// Scale every entry whose row and column disagree on `qubit` by `gamma`.
pub fn dephase(rho: &DensityMatrix, qubit: usize, gamma: Overlap) -> Result<DensityMatrix> {
    let n = rho.n_qubits();
    if qubit >= n {
        return Err(Error::QubitOutOfRange { qubit, n_qubits: n });
    }
    let bit = 1 << (n - 1 - qubit);
    let mut out = rho.clone();
    for row in 0..rho.dim() {
        for col in 0..rho.dim() {
            if (row ^ col) & bit != 0 {
                *out.entry_mut(row, col) *= gamma.0;
            }
        }
    }
    Ok(out)
}

/// Off-diagonals of a single-qubit state scaled by `gamma`.
pub fn decohere_qubit(rho: &DensityMatrix, gamma: Overlap) -> Result<DensityMatrix> {
    if rho.n_qubits() != 1 {
        return Err(Error::DimensionMismatch { expected: 1, found: rho.n_qubits() });
    }
    dephase(rho, 0, gamma)
}

/// Probabilities `(P0, P1)` of reading the Deutsch control qubit when it
/// dephases with overlap `gamma` between the oracle and the final Hadamard.
pub fn deutsch_decohered(f: &TruthTable, gamma: Overlap) -> Result<(f64, f64)> {
    if f.n_inputs() != 1 {
        return Err(Error::InvalidArgument(format!(
            "Deutsch's problem takes a 1-input function, got {}",
            f.n_inputs()
        )));
    }
    let start = DensityMatrix::from_state(&StateVector::basis(2, 1)?)?;
    let rho = start
        .apply_gate(&hadamard_n(2)?, &[0, 1])?
        .apply_gate(&xor_oracle(f)?, &[0, 1])?;
    let rho = dephase(&rho, 0, gamma)?.apply_gate(&h(), &[0])?;
    let control = rho.partial_trace(&[0])?.diagonal();
    Ok((control[0], control[1]))
}

/// `½[1 ± (−1)^{f(0)+f(1)} γ]`.
pub fn deutsch_decohered_closed_form(f: &TruthTable, gamma: Overlap) -> (f64, f64) {
    let sign = if f.get(0) == f.get(1) { 1.0 } else { -1.0 };
    (0.5 * (1.0 + sign * gamma.0), 0.5 * (1.0 - sign * gamma.0))
}

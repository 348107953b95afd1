//! Bell states, superdense coding and one-qubit teleportation.

use std::fmt;

use serde::Serialize;

use crate::density::DensityMatrix;
use crate::error::{Error, Result};
use crate::gates::{cnot, h, x, z};
use crate::rng::RandomSource;
use crate::state::StateVector;

/// Tolerance for recognising a Bell state.
const BELL_TOL: f64 = 1e-9;

/// `β_xy`, the output of the Bell circuit on `|xy⟩`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct BellLabel {
    pub x: u8,
    pub y: u8,
}

impl BellLabel {
    pub const ALL: [BellLabel; 4] = [
        BellLabel { x: 0, y: 0 },
        BellLabel { x: 0, y: 1 },
        BellLabel { x: 1, y: 0 },
        BellLabel { x: 1, y: 1 },
    ];

    pub fn new(x: u8, y: u8) -> Result<Self> {
        if x > 1 || y > 1 {
            return Err(Error::InvalidArgument(format!("Bell label ({x},{y}) is not a bit pair")));
        }
        Ok(Self { x, y })
    }

    fn index(self) -> usize {
        (self.x as usize) << 1 | self.y as usize
    }
}

impl fmt::Display for BellLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "β{}{}", self.x, self.y)
    }
}

/// H on the first qubit of `|xy⟩`, then CNOT.
pub fn bell_state(label: BellLabel) -> StateVector {
    StateVector::basis(2, label.index())
        .and_then(|s| s.apply_gate(&h(), &[0]))
        .and_then(|s| s.apply_gate(&cnot(), &[0, 1]))
        .expect("two-qubit circuit")
}

/// Alice's operation on her half of `β00` to send `bits`: `I`, `X`, `Z` or `ZX`.
pub fn superdense_encode(bits: (u8, u8), shared: &StateVector) -> Result<StateVector> {
    let label = BellLabel::new(bits.0, bits.1)?;
    if shared.n_qubits() != 2 {
        return Err(Error::DimensionMismatch { expected: 2, found: shared.n_qubits() });
    }
    if shared.fidelity(&bell_state(BellLabel::new(0, 0)?))? < 1.0 - BELL_TOL {
        return Err(Error::InvalidArgument("shared pair is not β00".into()));
    }
    let mut state = shared.clone();
    if label.y == 1 {
        state.apply_gate_mut(&x(), &[0])?;
    }
    if label.x == 1 {
        state.apply_gate_mut(&z(), &[0])?;
    }
    Ok(state)
}

/// Bob's Bell measurement: the inverse Bell circuit leaves a basis state.
pub fn superdense_decode(state: &StateVector) -> Result<(u8, u8)> {
    if state.n_qubits() != 2 {
        return Err(Error::DimensionMismatch { expected: 2, found: state.n_qubits() });
    }
    let out = state.apply_gate(&cnot(), &[0, 1])?.apply_gate(&h(), &[0])?;
    let probs = out.probabilities();
    let idx = (0..4)
        .find(|&i| probs[i] >= 1.0 - BELL_TOL)
        .ok_or_else(|| Error::InvalidArgument("state is not a Bell state".into()))?;
    Ok(((idx >> 1) as u8, (idx & 1) as u8))
}

/// Bob's correction `Z^z X^x` (X applied first) for each label and outcome.
///
/// Indexed by label, then by `m1 m2`. The `β11` row was found by trying all
/// sixteen Pauli products on each outcome; see the `beta11_table` test.
const CORRECTIONS: [[(u8, u8); 4]; 4] = [
    // β00: Z^{m1} X^{m2}
    [(0, 0), (0, 1), (1, 0), (1, 1)],
    // β01
    [(0, 1), (0, 0), (1, 1), (1, 0)],
    // β10
    [(1, 0), (1, 1), (0, 0), (0, 1)],
    // β11: Z^{1⊕m1} X^{1⊕m2}
    [(1, 1), (1, 0), (0, 1), (0, 0)],
];

/// `(z, x)` exponents Bob applies as `Z^z X^x` after outcome `(m1, m2)`.
pub fn teleport_correction(label: BellLabel, m1: u8, m2: u8) -> (u8, u8) {
    CORRECTIONS[label.index()][(m1 as usize) << 1 | m2 as usize]
}

fn apply_correction(bob: &StateVector, (zp, xp): (u8, u8)) -> Result<StateVector> {
    let mut out = bob.clone();
    if xp == 1 {
        out.apply_gate_mut(&x(), &[0])?;
    }
    if zp == 1 {
        out.apply_gate_mut(&z(), &[0])?;
    }
    Ok(out)
}

#[derive(Debug, Clone)]
pub struct TeleportRecord {
    pub label: BellLabel,
    pub m1: u8,
    pub m2: u8,
    /// Probability of the outcome `(m1, m2)`.
    pub probability: f64,
    /// `(z, x)` exponents of the applied correction.
    pub correction: (u8, u8),
    pub bob_before: StateVector,
    pub bob_after: StateVector,
}

/// Three-qubit state after Alice's CNOT and Hadamard, before she measures.
fn alice_rotated(psi: &StateVector, label: BellLabel) -> Result<StateVector> {
    if psi.n_qubits() != 1 {
        return Err(Error::DimensionMismatch { expected: 1, found: psi.n_qubits() });
    }
    psi.tensor(&bell_state(label))?
        .apply_gate(&cnot(), &[0, 1])?
        .apply_gate(&h(), &[0])
}

/// Send `psi` (qubit 0) to Bob (qubit 2) through the shared pair `β_label`.
pub fn teleport(psi: &StateVector, label: BellLabel, rng: &mut RandomSource) -> Result<TeleportRecord> {
    let state = alice_rotated(psi, label)?;
    let m = state.measure(&[0, 1], rng)?;
    let (m1, m2) = (m.bits[0], m.bits[1]);
    let base = (m1 as usize) << 2 | (m2 as usize) << 1;
    let bob_before = StateVector::normalized(vec![
        m.post_state.amplitude(base),
        m.post_state.amplitude(base | 1),
    ])?;
    let correction = teleport_correction(label, m1, m2);
    let bob_after = apply_correction(&bob_before, correction)?;
    Ok(TeleportRecord { label, m1, m2, probability: m.probability, correction, bob_before, bob_after })
}

/// Bob's reduced state after Alice's operations but before any classical
/// message arrives.
pub fn bob_reduced_density(psi: &StateVector, label: BellLabel) -> Result<DensityMatrix> {
    DensityMatrix::from_state(&alice_rotated(psi, label)?)?.partial_trace(&[2])
}

/// Whether a two-qubit pure state fails to factor, judged by the purity of
/// the first qubit's reduced state.
pub fn is_entangled(state: &StateVector) -> Result<bool> {
    if state.n_qubits() != 2 {
        return Err(Error::DimensionMismatch { expected: 2, found: state.n_qubits() });
    }
    let reduced = DensityMatrix::from_state(state)?.partial_trace(&[0])?;
    Ok(reduced.purity() < 1.0 - 1e-9)
}

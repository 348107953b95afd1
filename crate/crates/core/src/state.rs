//! Dense pure-state registers.
//!
//! Qubit 0 is the most significant: the basis state `|q₀q₁…q_{n−1}⟩` sits at
//! index `Σ qᵢ·2^{n−1−i}`, so `|10⟩` is index 2.

use std::fmt::Write as _;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::gate::GateMatrix;
use crate::rng::RandomSource;
use crate::{kernel, limits, C64};

/// Tolerance on `Σ|a|² = 1` for states handed in from outside.
pub const NORM_TOL: f64 = 1e-10;

/// A normalized `n`-qubit pure state.
#[derive(Debug, Clone, PartialEq)]
pub struct StateVector {
    n_qubits: usize,
    amps: Vec<C64>,
}

/// Outcome of a projective measurement in the computational basis.
#[derive(Debug, Clone, PartialEq)]
pub struct MeasurementResult {
    /// Measured bits in the order the targets were listed.
    pub bits: Vec<u8>,
    /// Renormalized conditional state.
    pub post_state: StateVector,
    /// Born probability of `bits` before measurement.
    pub probability: f64,
}

impl MeasurementResult {
    /// The bits read as an integer, first target most significant.
    pub fn value(&self) -> usize {
        self.bits.iter().fold(0, |acc, &b| (acc << 1) | b as usize)
    }
}

pub(crate) fn check_targets(targets: &[usize], n_qubits: usize) -> Result<()> {
    let mut seen = 0u64;
    for &q in targets {
        if q >= n_qubits {
            return Err(Error::QubitOutOfRange { qubit: q, n_qubits });
        }
        if seen & (1 << q) != 0 {
            return Err(Error::DuplicateQubit(q));
        }
        seen |= 1 << q;
    }
    Ok(())
}

impl StateVector {
    /// The computational basis state `|index⟩`.
    pub fn basis(n_qubits: usize, index: usize) -> Result<Self> {
        limits::check_qubits(n_qubits)?;
        let dim = 1usize << n_qubits;
        if index >= dim {
            return Err(Error::IndexOutOfRange { index, n_qubits });
        }
        let mut amps = vec![C64::new(0.0, 0.0); dim];
        amps[index] = C64::new(1.0, 0.0);
        Ok(Self { n_qubits, amps })
    }

    /// Wrap amplitudes that are already normalized within [`NORM_TOL`].
    pub fn from_amplitudes(amps: Vec<C64>) -> Result<Self> {
        let n_qubits = Self::qubits_for_len(amps.len())?;
        if amps.iter().any(|a| !a.re.is_finite() || !a.im.is_finite()) {
            return Err(Error::InvalidArgument("non-finite amplitude".into()));
        }
        let norm: f64 = amps.iter().map(|a| a.norm_sqr()).sum();
        if (norm - 1.0).abs() > NORM_TOL {
            return Err(Error::NotNormalized(norm));
        }
        Ok(Self { n_qubits, amps })
    }

    /// Rescale arbitrary nonzero amplitudes to unit norm.
    pub fn normalized(amps: Vec<C64>) -> Result<Self> {
        let n_qubits = Self::qubits_for_len(amps.len())?;
        let norm: f64 = amps.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
        if !(norm.is_finite() && norm > 0.0) {
            return Err(Error::InvalidArgument("cannot normalize a zero or non-finite vector".into()));
        }
        Ok(Self { n_qubits, amps: amps.into_iter().map(|a| a / norm).collect() })
    }

    fn qubits_for_len(len: usize) -> Result<usize> {
        if len < 2 || !len.is_power_of_two() {
            return Err(Error::InvalidArgument(format!(
                "amplitude count {len} is not 2^n with n ≥ 1"
            )));
        }
        let n = len.trailing_zeros() as usize;
        limits::check_qubits(n)?;
        Ok(n)
    }

    /// `α|0⟩ + β|1⟩`.
    pub fn qubit(alpha: C64, beta: C64) -> Result<Self> {
        Self::from_amplitudes(vec![alpha, beta])
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn dim(&self) -> usize {
        self.amps.len()
    }

    pub fn amplitudes(&self) -> &[C64] {
        &self.amps
    }

    pub fn amplitude(&self, index: usize) -> C64 {
        self.amps[index]
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amps.iter().map(|a| a.norm_sqr()).sum()
    }

    /// `U|ψ⟩` with `gate` acting on `targets`; `self` is left untouched.
    pub fn apply_gate(&self, gate: &GateMatrix, targets: &[usize]) -> Result<Self> {
        let mut out = self.clone();
        out.apply_gate_mut(gate, targets)?;
        Ok(out)
    }

    pub fn apply_gate_mut(&mut self, gate: &GateMatrix, targets: &[usize]) -> Result<()> {
        if gate.arity() != targets.len() {
            return Err(Error::ArityMismatch { arity: gate.arity(), targets: targets.len() });
        }
        check_targets(targets, self.n_qubits)?;
        kernel::apply(&mut self.amps, self.n_qubits, gate, targets);
        Ok(())
    }

    /// `|a⟩ ⊗ |b⟩`; `a` occupies the leading qubits.
    pub fn tensor(&self, other: &StateVector) -> Result<Self> {
        let n_qubits = self.n_qubits + other.n_qubits;
        limits::check_qubits(n_qubits)?;
        let mut amps = Vec::with_capacity(1 << n_qubits);
        for a in &self.amps {
            amps.extend(other.amps.iter().map(|b| a * b));
        }
        Ok(Self { n_qubits, amps })
    }

    /// Born probabilities `|aᵢ|²`.
    pub fn probabilities(&self) -> Vec<f64> {
        self.amps.iter().map(|a| a.norm_sqr()).collect()
    }

    /// Outcome distribution of measuring `targets`; outcome values read the
    /// target bits MSB-first in list order.
    pub fn marginal_probabilities(&self, targets: &[usize]) -> Result<Vec<f64>> {
        if targets.is_empty() {
            return Err(Error::EmptyTargets);
        }
        check_targets(targets, self.n_qubits)?;
        let mut probs = vec![0.0; 1 << targets.len()];
        for (i, a) in self.amps.iter().enumerate() {
            let p = a.norm_sqr();
            if p != 0.0 {
                probs[self.extract(i, targets)] += p;
            }
        }
        Ok(probs)
    }

    fn extract(&self, index: usize, targets: &[usize]) -> usize {
        let n = self.n_qubits;
        targets
            .iter()
            .fold(0, |acc, &q| (acc << 1) | ((index >> (n - 1 - q)) & 1))
    }

    /// Projective measurement of `targets` with collapse.
    pub fn measure(&self, targets: &[usize], rng: &mut RandomSource) -> Result<MeasurementResult> {
        let probs = self.marginal_probabilities(targets)?;
        let outcome = match rng.take_forced() {
            Some(forced) => {
                if probs.get(forced).copied().unwrap_or(0.0) <= 0.0 {
                    return Err(Error::ImpossibleOutcome { outcome: forced });
                }
                forced
            }
            None => rng.sample_index(&probs),
        };
        let probability = probs[outcome];
        let scale = 1.0 / probability.sqrt();
        let amps = self
            .amps
            .iter()
            .enumerate()
            .map(|(i, a)| {
                if self.extract(i, targets) == outcome {
                    a * scale
                } else {
                    C64::new(0.0, 0.0)
                }
            })
            .collect();
        // renormalize explicitly so long measurement chains do not drift
        let post_state = Self::normalized(amps)?;
        let k = targets.len();
        let bits = (0..k).map(|j| ((outcome >> (k - 1 - j)) & 1) as u8).collect();
        Ok(MeasurementResult { bits, post_state, probability })
    }

    /// `⟨self|other⟩`.
    pub fn inner(&self, other: &StateVector) -> Result<C64> {
        if self.n_qubits != other.n_qubits {
            return Err(Error::DimensionMismatch { expected: self.dim(), found: other.dim() });
        }
        Ok(self.amps.iter().zip(&other.amps).map(|(a, b)| a.conj() * b).sum())
    }

    /// `|⟨a|b⟩|²`; insensitive to global phase.
    pub fn fidelity(&self, other: &StateVector) -> Result<f64> {
        Ok(self.inner(other)?.norm_sqr())
    }

    /// Copy with the global phase fixed so the first nonzero amplitude is
    /// real and positive.
    pub fn with_canonical_phase(&self) -> Self {
        let lead = self.amps.iter().find(|a| a.norm() > 1e-12).copied();
        match lead {
            Some(a) => {
                let phase = a.conj() / a.norm();
                Self { n_qubits: self.n_qubits, amps: self.amps.iter().map(|x| x * phase).collect() }
            }
            None => self.clone(),
        }
    }

    /// Text dump: one line per nonzero amplitude, `<binary index> <re> <im>`,
    /// ascending, 12 significant digits.
    pub fn dump(&self) -> String {
        let mut out = String::new();
        for (i, a) in self.amps.iter().enumerate() {
            if a.norm() <= DUMP_ZERO {
                continue;
            }
            let _ = writeln!(
                out,
                "{:0width$b} {} {}",
                i,
                format_sig(a.re),
                format_sig(a.im),
                width = self.n_qubits
            );
        }
        out
    }

    pub fn dump_lines(&self) -> Vec<String> {
        self.dump().lines().map(str::to_owned).collect()
    }
}

/// Amplitudes below this magnitude are treated as zero in dumps.
const DUMP_ZERO: f64 = 1e-12;

/// `printf("%.12g")`-style formatting: 12 significant digits, trailing zeros
/// trimmed, exponent form outside `[1e-4, 1e12)`.
pub fn format_sig(x: f64) -> String {
    const DIGITS: i32 = 12;
    if x == 0.0 || x.abs() < DUMP_ZERO {
        return "0".to_owned();
    }
    let sci = format!("{:.*e}", (DIGITS - 1) as usize, x);
    let (mantissa, exp) = sci.split_once('e').expect("exponent form");
    let exp: i32 = exp.parse().expect("integer exponent");
    if (-4..DIGITS).contains(&exp) {
        let decimals = (DIGITS - 1 - exp).max(0) as usize;
        trim_zeros(&format!("{:.*}", decimals, x))
    } else {
        let sign = if exp < 0 { '-' } else { '+' };
        format!("{}e{}{:02}", trim_zeros(mantissa), sign, exp.abs())
    }
}

fn trim_zeros(s: &str) -> String {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.').to_owned()
    } else {
        s.to_owned()
    }
}

/// JSON-friendly view of a state: dump lines plus raw amplitudes.
#[derive(Debug, Clone, Serialize)]
pub struct StateDump {
    pub n_qubits: usize,
    pub lines: Vec<String>,
}

impl From<&StateVector> for StateDump {
    fn from(s: &StateVector) -> Self {
        Self { n_qubits: s.n_qubits, lines: s.dump_lines() }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gates::{standard_gate, StandardGate};
    use std::f64::consts::FRAC_1_SQRT_2;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    #[test]
    fn basis_examples() {
        assert_eq!(StateVector::basis(1, 0).unwrap().amplitudes(), &[c(1., 0.), c(0., 0.)]);
        let s = StateVector::basis(2, 3).unwrap();
        assert_eq!(s.probabilities(), vec![0., 0., 0., 1.]);
        let o = StateVector::basis(3, 0).unwrap();
        assert_eq!(o.amplitude(0), c(1., 0.));
        assert_eq!(o.dim(), 8);
    }

    #[test]
    fn basis_errors() {
        assert_eq!(
            StateVector::basis(2, 4),
            Err(Error::IndexOutOfRange { index: 4, n_qubits: 2 })
        );
        assert!(matches!(StateVector::basis(25, 0), Err(Error::TooManyQubits { .. })));
        assert_eq!(StateVector::basis(0, 0), Err(Error::ZeroQubits));
    }

    #[test]
    fn apply_gate_leaves_input_alone() {
        let zero = StateVector::basis(1, 0).unwrap();
        let x = standard_gate(StandardGate::X);
        let one = zero.apply_gate(&x, &[0]).unwrap();
        assert_eq!(one.probabilities(), vec![0., 1.]);
        assert_eq!(zero.probabilities(), vec![1., 0.]);
    }

    #[test]
    fn apply_gate_errors() {
        let s = StateVector::basis(2, 0).unwrap();
        let x = standard_gate(StandardGate::X);
        assert_eq!(s.apply_gate(&x, &[0, 1]), Err(Error::ArityMismatch { arity: 1, targets: 2 }));
        assert_eq!(
            s.apply_gate(&x, &[2]),
            Err(Error::QubitOutOfRange { qubit: 2, n_qubits: 2 })
        );
        let cnot = crate::gates::cnot();
        assert_eq!(s.apply_gate(&cnot, &[1, 1]), Err(Error::DuplicateQubit(1)));
    }

    #[test]
    fn tensor_examples() {
        let one = StateVector::basis(1, 1).unwrap();
        let zero = StateVector::basis(1, 0).unwrap();
        assert_eq!(one.tensor(&zero).unwrap(), StateVector::basis(2, 2).unwrap());

        let plus = zero.apply_gate(&standard_gate(StandardGate::H), &[0]).unwrap();
        let uniform = plus.tensor(&plus).unwrap();
        for a in uniform.amplitudes() {
            assert!((a - c(0.5, 0.)).norm() < 1e-12);
        }

        let psi = StateVector::qubit(c(0.6, 0.), c(0., 0.8)).unwrap();
        let t = psi.tensor(&zero).unwrap();
        assert_eq!(t.amplitudes(), &[c(0.6, 0.), c(0., 0.), c(0., 0.8), c(0., 0.)]);
    }

    #[test]
    fn measure_basis_state_is_certain() {
        let s = StateVector::basis(2, 3).unwrap();
        for seed in 0..20 {
            let m = s.measure(&[0, 1], &mut RandomSource::new(seed)).unwrap();
            assert_eq!(m.bits, vec![1, 1]);
            assert_eq!(m.probability, 1.0);
        }
        assert_eq!(s.measure(&[], &mut RandomSource::new(0)), Err(Error::EmptyTargets));
    }

    #[test]
    fn forced_outcome_must_be_possible() {
        let s = StateVector::basis(2, 3).unwrap();
        let mut rng = RandomSource::scripted(0, [0]);
        assert_eq!(s.measure(&[0, 1], &mut rng), Err(Error::ImpossibleOutcome { outcome: 0 }));
    }

    #[test]
    fn fidelity_examples() {
        let zero = StateVector::basis(1, 0).unwrap();
        let one = StateVector::basis(1, 1).unwrap();
        assert_eq!(zero.fidelity(&zero).unwrap(), 1.0);
        assert_eq!(zero.fidelity(&one).unwrap(), 0.0);
        assert!(zero.fidelity(&StateVector::basis(2, 0).unwrap()).is_err());
    }

    #[test]
    fn dump_format() {
        let s = StateVector::from_amplitudes(vec![
            c(FRAC_1_SQRT_2, 0.),
            c(0., 0.),
            c(0., 0.),
            c(0., -FRAC_1_SQRT_2),
        ])
        .unwrap();
        assert_eq!(s.dump(), "00 0.707106781187 0\n11 0 -0.707106781187\n");
    }

    #[test]
    fn sig_formatting() {
        assert_eq!(format_sig(0.5), "0.5");
        assert_eq!(format_sig(-1.0), "-1");
        assert_eq!(format_sig(1.0 / 3.0), "0.333333333333");
        assert_eq!(format_sig(1.234e-7), "1.234e-07");
        assert_eq!(format_sig(123456.0), "123456");
        assert_eq!(format_sig(0.25e-4), "2.5e-05");
        assert_eq!(format_sig(1e-13), "0");
    }

    #[test]
    fn canonical_phase() {
        let s = StateVector::qubit(c(0., 0.6), c(-0.8, 0.)).unwrap();
        let t = s.with_canonical_phase();
        assert!((t.amplitude(0) - c(0.6, 0.)).norm() < 1e-12);
        assert!((t.amplitude(1) - c(0., 0.8)).norm() < 1e-12);
    }
}

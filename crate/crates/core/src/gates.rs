//! Constructors for the gates used throughout the crate.
//!
//! Multi-qubit gates list their wires MSB-first. Controls come before
//! targets, with one exception: [`fredkin`] takes its control last.

use std::f64::consts::FRAC_1_SQRT_2;
use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::gate::{GateMatrix, Repr};
use crate::truth_table::TruthTable;
use crate::{limits, C64};

/// Named single-qubit gates.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum StandardGate {
    X,
    Z,
    H,
    SqrtNot,
    /// Bloch rotation about y by the given angle in radians.
    Ry(f64),
    /// Bloch rotation about z by the given angle in radians.
    Rz(f64),
}

impl FromStr for StandardGate {
    type Err = Error;

    /// Accepts `X`, `Z`, `H`, `SQRT_NOT`, `RY(<angle>)`, `RZ(<angle>)`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let upper = s.to_ascii_uppercase();
        let angle = |prefix: &str| -> Option<f64> {
            upper
                .strip_prefix(prefix)?
                .strip_prefix('(')?
                .strip_suffix(')')?
                .trim()
                .parse()
                .ok()
        };
        match upper.as_str() {
            "X" => Ok(Self::X),
            "Z" => Ok(Self::Z),
            "H" => Ok(Self::H),
            "SQRT_NOT" => Ok(Self::SqrtNot),
            _ => {
                if let Some(t) = angle("RY") {
                    Ok(Self::Ry(t))
                } else if let Some(t) = angle("RZ") {
                    Ok(Self::Rz(t))
                } else {
                    Err(Error::UnknownGate(s.to_owned()))
                }
            }
        }
    }
}

impl fmt::Display for StandardGate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::X => write!(f, "X"),
            Self::Z => write!(f, "Z"),
            Self::H => write!(f, "H"),
            Self::SqrtNot => write!(f, "SQRT_NOT"),
            Self::Ry(t) => write!(f, "RY({t})"),
            Self::Rz(t) => write!(f, "RZ({t})"),
        }
    }
}

fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

pub fn standard_gate(gate: StandardGate) -> GateMatrix {
    match gate {
        StandardGate::X => GateMatrix::permutation(vec![1, 0]),
        StandardGate::Z => GateMatrix::diagonal(vec![c(1., 0.), c(-1., 0.)]),
        StandardGate::H => {
            let h = FRAC_1_SQRT_2;
            GateMatrix::dense(1, vec![c(h, 0.), c(h, 0.), c(h, 0.), c(-h, 0.)])
        }
        StandardGate::SqrtNot => GateMatrix::dense(
            1,
            vec![c(0.5, 0.5), c(0.5, -0.5), c(0.5, -0.5), c(0.5, 0.5)],
        ),
        StandardGate::Ry(theta) => {
            let (s, co) = (theta / 2.0).sin_cos();
            GateMatrix::dense(1, vec![c(co, 0.), c(-s, 0.), c(s, 0.), c(co, 0.)])
        }
        StandardGate::Rz(theta) => GateMatrix::diagonal(vec![
            Complex64::from_polar(1.0, -theta / 2.0),
            Complex64::from_polar(1.0, theta / 2.0),
        ]),
    }
}

pub fn x() -> GateMatrix {
    standard_gate(StandardGate::X)
}

pub fn z() -> GateMatrix {
    standard_gate(StandardGate::Z)
}

pub fn h() -> GateMatrix {
    standard_gate(StandardGate::H)
}

/// `base` controlled on `n_controls` leading qubits.
pub fn controlled(base: &GateMatrix, n_controls: usize) -> Result<GateMatrix> {
    if n_controls == 0 {
        return Err(Error::InvalidArgument("controlled gate needs at least one control".into()));
    }
    let arity = base.arity() + n_controls;
    limits::check_qubits(arity)?;
    let dim = 1usize << arity;
    let block = dim - base.dim();
    Ok(match &base.repr {
        Repr::Permutation(p) => {
            let perm = (0..dim)
                .map(|l| if l < block { l } else { block + p[l - block] })
                .collect();
            GateMatrix::from_repr(arity, Repr::Permutation(perm))
        }
        Repr::Diagonal(d) => {
            let mut diag = vec![c(1., 0.); block];
            diag.extend_from_slice(d);
            GateMatrix::from_repr(arity, Repr::Diagonal(diag))
        }
        Repr::Controlled { n_controls: inner, base: inner_base } => GateMatrix::from_repr(
            arity,
            Repr::Controlled { n_controls: n_controls + inner, base: inner_base.clone() },
        ),
        _ => GateMatrix::from_repr(arity, Repr::Controlled { n_controls, base: Box::new(base.clone()) }),
    })
}

/// `|a,b⟩ → |a, a⊕b⟩`.
pub fn cnot() -> GateMatrix {
    controlled(&x(), 1).expect("two qubits fit any cap")
}

/// `|a,b,c⟩ → |a,b,c⊕ab⟩`.
pub fn toffoli() -> GateMatrix {
    controlled(&x(), 2).expect("three qubits fit any cap")
}

/// Controlled swap with the control as the last wire: `|a,b,1⟩ → |b,a,1⟩`.
pub fn fredkin() -> GateMatrix {
    let perm = (0..8)
        .map(|l: usize| {
            let (a, b, ctl) = ((l >> 2) & 1, (l >> 1) & 1, l & 1);
            if ctl == 1 {
                (b << 2) | (a << 1) | ctl
            } else {
                l
            }
        })
        .collect();
    GateMatrix::permutation(perm)
}

/// The two-qubit swap as a single permutation.
pub fn swap() -> GateMatrix {
    GateMatrix::permutation(vec![0, 2, 1, 3])
}

/// Swap realized as three CNOTs with alternating direction.
pub fn swap_circuit() -> Vec<(GateMatrix, Vec<usize>)> {
    vec![(cnot(), vec![0, 1]), (cnot(), vec![1, 0]), (cnot(), vec![0, 1])]
}

/// `H⊗n`, entry `(Y, X) = (−1)^{X·Y} / √2^n`.
pub fn hadamard_n(n: usize) -> Result<GateMatrix> {
    limits::check_qubits(n)?;
    if n == 1 {
        return Ok(h());
    }
    Ok(GateMatrix::from_repr(n, Repr::Tensor(vec![h(); n])))
}

/// Quantum Fourier transform on `n` qubits, or its inverse.
pub fn qft(n: usize, inverse: bool) -> Result<GateMatrix> {
    limits::check_qubits(n)?;
    Ok(GateMatrix::from_repr(n, Repr::Fourier { inverse }))
}

/// `|X, y⟩ → |X, y ⊕ f(X)⟩`; the ancilla is the last wire.
pub fn xor_oracle(f: &TruthTable) -> Result<GateMatrix> {
    let arity = f.n_inputs() + 1;
    limits::check_qubits(arity)?;
    let perm = (0..1usize << arity)
        .map(|l| l ^ usize::from(f.get(l >> 1)))
        .collect();
    Ok(GateMatrix::from_repr(arity, Repr::Permutation(perm)))
}

/// `|X⟩ → (−1)^{f(X)} |X⟩`.
pub fn phase_oracle(f: &TruthTable) -> Result<GateMatrix> {
    limits::check_qubits(f.n_inputs())?;
    let diag = (0..f.len())
        .map(|x| if f.get(x) { c(-1., 0.) } else { c(1., 0.) })
        .collect();
    Ok(GateMatrix::from_repr(f.n_inputs(), Repr::Diagonal(diag)))
}

/// `2|O⟩⟨O| − I`: keeps `|O⟩`, flips the sign of every other basis state.
pub fn conditional_phase_shift(n: usize) -> Result<GateMatrix> {
    limits::check_qubits(n)?;
    let mut diag = vec![c(-1., 0.); 1 << n];
    diag[0] = c(1., 0.);
    Ok(GateMatrix::from_repr(n, Repr::Diagonal(diag)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gate::Structure;
    use crate::state::StateVector;
    use std::f64::consts::PI;

    fn basis_map(g: &GateMatrix, input: usize) -> usize {
        let s = StateVector::basis(g.arity(), input).unwrap().apply_gate(g, &(0..g.arity()).collect::<Vec<_>>()).unwrap();
        let probs = s.probabilities();
        let out = probs.iter().position(|&p| (p - 1.0).abs() < 1e-12).expect("basis output");
        out
    }

    #[test]
    fn hadamard_matrix() {
        let h = h();
        let r = FRAC_1_SQRT_2;
        let expected = [r, r, r, -r];
        for (e, want) in h.to_dense().iter().zip(expected) {
            assert!((e - c(want, 0.)).norm() < 1e-15);
        }
    }

    #[test]
    fn sqrt_not_squares_to_not() {
        let s = standard_gate(StandardGate::SqrtNot);
        assert!(s.matmul(&s).approx_eq(&x(), 1e-10));
    }

    #[test]
    fn rz_pi_is_z_up_to_phase() {
        let rz = standard_gate(StandardGate::Rz(PI));
        assert!(rz.approx_eq_up_to_phase(&z(), 1e-12));
        assert!(!rz.approx_eq(&z(), 1e-3));
    }

    #[test]
    fn ry_pi_flips() {
        let ry = standard_gate(StandardGate::Ry(PI));
        assert!(ry.approx_eq_up_to_phase(&GateMatrix::dense(1, vec![c(0., 0.), c(-1., 0.), c(1., 0.), c(0., 0.)]), 1e-12));
    }

    #[test]
    fn parse_gate_names() {
        assert_eq!("h".parse::<StandardGate>().unwrap(), StandardGate::H);
        assert_eq!("SQRT_NOT".parse::<StandardGate>().unwrap(), StandardGate::SqrtNot);
        assert_eq!("RZ(0.5)".parse::<StandardGate>().unwrap(), StandardGate::Rz(0.5));
        assert_eq!("Y".parse::<StandardGate>(), Err(Error::UnknownGate("Y".into())));
        assert!("RY(abc)".parse::<StandardGate>().is_err());
    }

    #[test]
    fn cnot_and_toffoli_truth() {
        let cx = cnot();
        for (a, b) in [(0, 0), (0, 1), (1, 0), (1, 1)] {
            assert_eq!(basis_map(&cx, (a << 1) | b), (a << 1) | (a ^ b));
        }
        let t = toffoli();
        for l in 0..8 {
            let (a, b, cc) = (l >> 2, (l >> 1) & 1, l & 1);
            assert_eq!(basis_map(&t, l), (a << 2) | (b << 1) | (cc ^ (a & b)));
        }
    }

    #[test]
    fn controlled_identity_is_identity() {
        let ci = controlled(&GateMatrix::identity(1), 1).unwrap();
        assert!(ci.approx_eq(&GateMatrix::identity(2), 0.0));
    }

    #[test]
    fn controlled_dense_keeps_structure() {
        let ch = controlled(&h(), 2).unwrap();
        assert_eq!(ch.structure(), Structure::Controlled);
        assert_eq!(ch.arity(), 3);
        let cch = controlled(&ch, 1).unwrap();
        assert_eq!(cch.arity(), 4);
        // only |111x⟩ is touched
        assert_eq!(cch.entry(0b1110, 0b1111), c(FRAC_1_SQRT_2, 0.));
        assert_eq!(cch.entry(0b0110, 0b0111), c(0., 0.));
        assert_eq!(cch.entry(0b0110, 0b0110), c(1., 0.));
        assert!(controlled(&h(), 0).is_err());
        assert!(matches!(controlled(&h(), 24), Err(Error::TooManyQubits { .. })));
    }

    #[test]
    fn fredkin_examples() {
        let f = fredkin();
        for l in [0b000, 0b010, 0b100, 0b110] {
            assert_eq!(basis_map(&f, l), l);
        }
        assert_eq!(basis_map(&f, 0b011), 0b101);
        assert!(f.matmul(&f).approx_eq(&GateMatrix::identity(3), 0.0));
    }

    #[test]
    fn swap_circuit_is_three_cnots() {
        let steps = swap_circuit();
        assert_eq!(steps.len(), 3);
        assert!(steps.iter().all(|(g, _)| *g == cnot()));
        for a in 0..2 {
            for b in 0..2 {
                let mut s = StateVector::basis(2, (a << 1) | b).unwrap();
                for (g, t) in &steps {
                    s.apply_gate_mut(g, t).unwrap();
                }
                assert_eq!(s, StateVector::basis(2, (b << 1) | a).unwrap());
            }
        }
    }

    #[test]
    fn qft_one_qubit_is_hadamard() {
        assert!(qft(1, false).unwrap().approx_eq(&h(), 1e-15));
        assert!(qft(1, true).unwrap().approx_eq(&h(), 1e-15));
    }

    #[test]
    fn qft_two_on_01() {
        let s = StateVector::basis(2, 1).unwrap().apply_gate(&qft(2, false).unwrap(), &[0, 1]).unwrap();
        let want = [c(0.5, 0.), c(0., 0.5), c(-0.5, 0.), c(0., -0.5)];
        for (a, w) in s.amplitudes().iter().zip(want) {
            assert!((a - w).norm() < 1e-12, "{a} vs {w}");
        }
    }

    #[test]
    fn qft_kernel_matches_definition() {
        for n in 1..=5 {
            let dim = 1usize << n;
            for inverse in [false, true] {
                let sign = if inverse { -1.0 } else { 1.0 };
                let g = qft(n, inverse).unwrap();
                let wires: Vec<usize> = (0..n).collect();
                for k in 0..dim {
                    let s = StateVector::basis(n, k).unwrap().apply_gate(&g, &wires).unwrap();
                    for j in 0..dim {
                        let angle = sign * 2.0 * PI * (j * k) as f64 / dim as f64;
                        let want = C64::from_polar(1.0 / (dim as f64).sqrt(), angle);
                        assert!((s.amplitude(j) - want).norm() < 1e-12, "n={n} k={k} j={j}");
                    }
                }
                // same answer as the dense matrix on scattered wires of a bigger register
                let dense = GateMatrix::dense(n, g.to_dense());
                let amps: Vec<C64> = (0..1 << (n + 2)).map(|i| c((i % 7) as f64 - 3.0, (i % 3) as f64)).collect();
                let s = StateVector::normalized(amps).unwrap();
                let targets: Vec<usize> = (0..n + 2).rev().filter(|&w| w != 1 && w != n).take(n).collect();
                let fast = s.apply_gate(&g, &targets).unwrap();
                let slow = s.apply_gate(&dense, &targets).unwrap();
                assert!(fast.fidelity(&slow).unwrap() > 1.0 - 1e-12);
                for (a, b) in fast.amplitudes().iter().zip(slow.amplitudes()) {
                    assert!((a - b).norm() < 1e-12);
                }
            }
        }
    }

    #[test]
    fn hadamard_n_on_11() {
        let s = StateVector::basis(2, 3).unwrap().apply_gate(&hadamard_n(2).unwrap(), &[0, 1]).unwrap();
        let want = [0.5, -0.5, -0.5, 0.5];
        for (a, w) in s.amplitudes().iter().zip(want) {
            assert!((a - c(w, 0.)).norm() < 1e-12);
        }
    }

    #[test]
    fn xor_oracle_identity_is_cnot() {
        let f = TruthTable::from_bits(&[false, true]).unwrap();
        assert!(xor_oracle(&f).unwrap().approx_eq(&cnot(), 0.0));
    }

    #[test]
    fn phase_oracle_examples() {
        let zero = TruthTable::constant(2, false).unwrap();
        assert!(phase_oracle(&zero).unwrap().approx_eq(&GateMatrix::identity(2), 0.0));
        let f = TruthTable::marking(2, &[3]).unwrap();
        let want = GateMatrix::diagonal(vec![c(1., 0.), c(1., 0.), c(1., 0.), c(-1., 0.)]);
        assert!(phase_oracle(&f).unwrap().approx_eq(&want, 0.0));
    }

    #[test]
    fn conditional_phase_shift_signs() {
        let cps = conditional_phase_shift(3).unwrap();
        assert_eq!(cps.entry(0, 0), c(1., 0.));
        for x in 1..8 {
            assert_eq!(cps.entry(x, x), c(-1., 0.));
        }
        assert!(cps.matmul(&cps).approx_eq(&GateMatrix::identity(3), 0.0));
    }
}

//! Density matrices, partial traces and the Bloch sphere.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::gate::GateMatrix;
use crate::state::{check_targets, StateVector};
use crate::{kernel, limits, C64};

const ZERO: C64 = C64::new(0.0, 0.0);
const ONE: C64 = C64::new(1.0, 0.0);
const I: C64 = C64::new(0.0, 1.0);

/// Pauli matrices, row-major.
pub const PAULI_X: [C64; 4] = [ZERO, ONE, ONE, ZERO];
pub const PAULI_Y: [C64; 4] = [ZERO, C64::new(0.0, -1.0), I, ZERO];
pub const PAULI_Z: [C64; 4] = [ONE, ZERO, ZERO, C64::new(-1.0, 0.0)];

/// A Hermitian, unit-trace operator on `n` qubits, stored row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    n_qubits: usize,
    entries: Vec<C64>,
}

/// Coordinates `r` in `ρ = ½(I + r·σ)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BlochVector {
    pub rx: f64,
    pub ry: f64,
    pub rz: f64,
}

impl BlochVector {
    pub fn new(rx: f64, ry: f64, rz: f64) -> Self {
        Self { rx, ry, rz }
    }

    pub fn norm(&self) -> f64 {
        (self.rx * self.rx + self.ry * self.ry + self.rz * self.rz).sqrt()
    }
}

impl DensityMatrix {
    /// `|ψ⟩⟨ψ|`.
    pub fn from_state(state: &StateVector) -> Result<Self> {
        let n = state.n_qubits();
        limits::check_density_qubits(n)?;
        let a = state.amplitudes();
        let mut entries = Vec::with_capacity(a.len() * a.len());
        for x in a {
            entries.extend(a.iter().map(|y| x * y.conj()));
        }
        Ok(Self { n_qubits: n, entries })
    }

    /// Validate and wrap row-major entries.
    pub fn from_entries(n_qubits: usize, entries: Vec<C64>) -> Result<Self> {
        limits::check_density_qubits(n_qubits)?;
        let dim = 1usize << n_qubits;
        if entries.len() != dim * dim {
            return Err(Error::DimensionMismatch { expected: dim * dim, found: entries.len() });
        }
        let rho = Self { n_qubits, entries };
        if !rho.is_hermitian(1e-10) {
            return Err(Error::InvalidArgument("matrix is not Hermitian".into()));
        }
        let tr = rho.trace();
        if (tr.re - 1.0).abs() > 1e-10 || tr.im.abs() > 1e-10 {
            return Err(Error::InvalidArgument(format!("trace {tr} is not 1")));
        }
        Ok(rho)
    }

    /// `I / 2^n`.
    pub fn maximally_mixed(n_qubits: usize) -> Result<Self> {
        limits::check_density_qubits(n_qubits)?;
        let dim = 1usize << n_qubits;
        let mut entries = vec![ZERO; dim * dim];
        for i in 0..dim {
            entries[i * dim + i] = C64::new(1.0 / dim as f64, 0.0);
        }
        Ok(Self { n_qubits, entries })
    }

    /// Convex combination `Σ wᵢ ρᵢ`; weights must sum to 1.
    pub fn mixture(parts: &[(f64, &DensityMatrix)]) -> Result<Self> {
        let first = parts.first().ok_or(Error::EmptyTargets)?.1;
        let mut entries = vec![ZERO; first.entries.len()];
        for (w, rho) in parts {
            if rho.n_qubits != first.n_qubits {
                return Err(Error::DimensionMismatch { expected: first.dim(), found: rho.dim() });
            }
            for (e, x) in entries.iter_mut().zip(&rho.entries) {
                *e += x * *w;
            }
        }
        Self::from_entries(first.n_qubits, entries)
    }

    /// `½(I + r·σ)`.
    pub fn from_bloch(r: BlochVector) -> Self {
        let entries = vec![
            C64::new((1.0 + r.rz) / 2.0, 0.0),
            C64::new(r.rx / 2.0, -r.ry / 2.0),
            C64::new(r.rx / 2.0, r.ry / 2.0),
            C64::new((1.0 - r.rz) / 2.0, 0.0),
        ];
        Self { n_qubits: 1, entries }
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn dim(&self) -> usize {
        1 << self.n_qubits
    }

    pub fn entries(&self) -> &[C64] {
        &self.entries
    }

    pub fn entry(&self, row: usize, col: usize) -> C64 {
        self.entries[row * self.dim() + col]
    }

    pub(crate) fn entry_mut(&mut self, row: usize, col: usize) -> &mut C64 {
        let dim = self.dim();
        &mut self.entries[row * dim + col]
    }

    pub fn trace(&self) -> C64 {
        (0..self.dim()).map(|i| self.entry(i, i)).sum()
    }

    /// `Tr ρ²`; 1 for pure states, `1/2^n` for the maximally mixed state.
    pub fn purity(&self) -> f64 {
        // Tr ρ² = Σ_ij ρ_ij ρ_ji = Σ_ij |ρ_ij|² for Hermitian ρ
        self.entries.iter().map(|x| x.norm_sqr()).sum()
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        let dim = self.dim();
        (0..dim).all(|r| (r..dim).all(|c| (self.entry(r, c) - self.entry(c, r).conj()).norm() <= tol))
    }

    /// Entrywise equality within `tol`.
    pub fn approx_eq(&self, other: &DensityMatrix, tol: f64) -> bool {
        self.n_qubits == other.n_qubits
            && self.entries.iter().zip(&other.entries).all(|(a, b)| (a - b).norm() <= tol)
    }

    /// Diagonal of ρ: outcome probabilities in the computational basis.
    pub fn diagonal(&self) -> Vec<f64> {
        (0..self.dim()).map(|i| self.entry(i, i).re).collect()
    }

    /// Reduced state on `keep` (in list order, MSB first), tracing out the
    /// remaining qubits.
    pub fn partial_trace(&self, keep: &[usize]) -> Result<Self> {
        if keep.is_empty() {
            return Err(Error::EmptyTargets);
        }
        check_targets(keep, self.n_qubits)?;
        let n = self.n_qubits;
        let traced: Vec<usize> = (0..n).filter(|q| !keep.contains(q)).collect();
        let spread = |local: usize, qubits: &[usize]| -> usize {
            let k = qubits.len();
            qubits
                .iter()
                .enumerate()
                .filter(|(j, _)| (local >> (k - 1 - j)) & 1 == 1)
                .fold(0, |acc, (_, &q)| acc | (1 << (n - 1 - q)))
        };
        let kept_offsets: Vec<usize> = (0..1 << keep.len()).map(|l| spread(l, keep)).collect();
        let traced_offsets: Vec<usize> = (0..1 << traced.len()).map(|l| spread(l, &traced)).collect();
        let out_dim = kept_offsets.len();
        let mut entries = vec![ZERO; out_dim * out_dim];
        for (a, &ra) in kept_offsets.iter().enumerate() {
            for (b, &cb) in kept_offsets.iter().enumerate() {
                entries[a * out_dim + b] = traced_offsets
                    .iter()
                    .map(|&t| self.entry(ra | t, cb | t))
                    .sum();
            }
        }
        Ok(Self { n_qubits: keep.len(), entries })
    }

    /// `U ρ U†` with `gate` acting on `targets`.
    pub fn apply_gate(&self, gate: &GateMatrix, targets: &[usize]) -> Result<Self> {
        if gate.arity() != targets.len() {
            return Err(Error::ArityMismatch { arity: gate.arity(), targets: targets.len() });
        }
        check_targets(targets, self.n_qubits)?;
        // Row-major storage is a 2n-qubit vector with the row index in the
        // leading n qubits, so UρU† = (U ⊗ U*) vec(ρ).
        let n = self.n_qubits;
        let mut out = self.clone();
        kernel::apply(&mut out.entries, 2 * n, gate, targets);
        let col_targets: Vec<usize> = targets.iter().map(|q| q + n).collect();
        kernel::apply(&mut out.entries, 2 * n, &gate.conjugate(), &col_targets);
        Ok(out)
    }

    /// `rᵢ = Tr(ρ σᵢ)` for a single qubit.
    pub fn bloch_vector(&self) -> Result<BlochVector> {
        if self.n_qubits != 1 {
            return Err(Error::InvalidArgument(format!(
                "Bloch vector needs one qubit, got {}",
                self.n_qubits
            )));
        }
        let tr = |p: &[C64; 4]| -> f64 {
            (0..2)
                .map(|i| (0..2).map(|k| self.entry(i, k) * p[k * 2 + i]).sum::<C64>())
                .sum::<C64>()
                .re
        };
        Ok(BlochVector::new(tr(&PAULI_X), tr(&PAULI_Y), tr(&PAULI_Z)))
    }

    /// Eigenvalues in ascending order via Jacobi rotation of the real
    /// symmetric embedding `[[A, −B], [B, A]]` (each eigenvalue appears twice
    /// there). Intended for small matrices.
    pub fn eigenvalues(&self) -> Vec<f64> {
        let dim = self.dim();
        let m = 2 * dim;
        let mut a = vec![0.0; m * m];
        for r in 0..dim {
            for c in 0..dim {
                let z = self.entry(r, c);
                a[r * m + c] = z.re;
                a[(r + dim) * m + c + dim] = z.re;
                a[r * m + c + dim] = -z.im;
                a[(r + dim) * m + c] = z.im;
            }
        }
        jacobi_eigenvalues(&mut a, m);
        let mut ev: Vec<f64> = (0..m).map(|i| a[i * m + i]).collect();
        ev.sort_by(f64::total_cmp);
        ev.into_iter().step_by(2).collect()
    }
}

fn jacobi_eigenvalues(a: &mut [f64], m: usize) {
    for _sweep in 0..100 {
        let off: f64 = (0..m)
            .flat_map(|i| (0..m).filter(move |&j| j != i).map(move |j| (i, j)))
            .map(|(i, j)| a[i * m + j] * a[i * m + j])
            .sum();
        if off < 1e-30 {
            return;
        }
        for p in 0..m {
            for q in p + 1..m {
                let apq = a[p * m + q];
                if apq.abs() < 1e-300 {
                    continue;
                }
                let theta = (a[q * m + q] - a[p * m + p]) / (2.0 * apq);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let t = if theta == 0.0 { 1.0 } else { t };
                let cs = 1.0 / (t * t + 1.0).sqrt();
                let sn = t * cs;
                for k in 0..m {
                    let akp = a[k * m + p];
                    let akq = a[k * m + q];
                    a[k * m + p] = cs * akp - sn * akq;
                    a[k * m + q] = sn * akp + cs * akq;
                }
                for k in 0..m {
                    let apk = a[p * m + k];
                    let aqk = a[q * m + k];
                    a[p * m + k] = cs * apk - sn * aqk;
                    a[q * m + k] = sn * apk + cs * aqk;
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gates::{cnot, h, x};
    use std::f64::consts::FRAC_1_SQRT_2;

    fn plus() -> StateVector {
        StateVector::basis(1, 0).unwrap().apply_gate(&h(), &[0]).unwrap()
    }

    fn bell() -> StateVector {
        StateVector::basis(2, 0)
            .unwrap()
            .apply_gate(&h(), &[0])
            .unwrap()
            .apply_gate(&cnot(), &[0, 1])
            .unwrap()
    }

    fn close(a: C64, re: f64) -> bool {
        (a - C64::new(re, 0.0)).norm() < 1e-12
    }

    #[test]
    fn density_of_plus() {
        let rho = DensityMatrix::from_state(&plus()).unwrap();
        assert!(rho.entries().iter().all(|&e| close(e, 0.5)));
        let zero = DensityMatrix::from_state(&StateVector::basis(1, 0).unwrap()).unwrap();
        assert_eq!(zero.entries(), &[ONE, ZERO, ZERO, ZERO]);
    }

    #[test]
    fn density_of_bell_has_corners() {
        let rho = DensityMatrix::from_state(&bell()).unwrap();
        for r in 0..4 {
            for c in 0..4 {
                let corner = (r == 0 || r == 3) && (c == 0 || c == 3);
                assert!(close(rho.entry(r, c), if corner { 0.5 } else { 0.0 }));
            }
        }
        assert!((rho.purity() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn partial_trace_examples() {
        let reduced = DensityMatrix::from_state(&bell()).unwrap().partial_trace(&[0]).unwrap();
        assert!(reduced.approx_eq(&DensityMatrix::maximally_mixed(1).unwrap(), 1e-10));
        assert!((reduced.purity() - 0.5).abs() < 1e-12);

        let s01 = DensityMatrix::from_state(&StateVector::basis(2, 1).unwrap()).unwrap();
        let second = s01.partial_trace(&[1]).unwrap();
        assert_eq!(second.entries(), &[ZERO, ZERO, ZERO, ONE]);
        assert_eq!(s01.partial_trace(&[]), Err(Error::EmptyTargets));
        assert!(s01.partial_trace(&[0, 0]).is_err());
    }

    #[test]
    fn partial_trace_respects_keep_order() {
        // |01⟩ kept as [1, 0] reads |10⟩
        let rho = DensityMatrix::from_state(&StateVector::basis(2, 1).unwrap()).unwrap();
        let swapped = rho.partial_trace(&[1, 0]).unwrap();
        assert!(close(swapped.entry(2, 2), 1.0));
    }

    #[test]
    fn bloch_examples() {
        let z = DensityMatrix::from_state(&StateVector::basis(1, 0).unwrap()).unwrap();
        assert_eq!(z.bloch_vector().unwrap(), BlochVector::new(0.0, 0.0, 1.0));
        let p = DensityMatrix::from_state(&plus()).unwrap().bloch_vector().unwrap();
        assert!((p.rx - 1.0).abs() < 1e-12 && p.ry.abs() < 1e-12 && p.rz.abs() < 1e-12);
        let mixed = DensityMatrix::maximally_mixed(1).unwrap().bloch_vector().unwrap();
        assert_eq!(mixed.norm(), 0.0);
        let two = DensityMatrix::from_state(&bell()).unwrap();
        assert!(two.bloch_vector().is_err());
    }

    #[test]
    fn y_component_sign() {
        // (|0⟩ + i|1⟩)/√2 points along +y
        let s = StateVector::qubit(C64::new(FRAC_1_SQRT_2, 0.0), C64::new(0.0, FRAC_1_SQRT_2)).unwrap();
        let r = DensityMatrix::from_state(&s).unwrap().bloch_vector().unwrap();
        assert!((r.ry - 1.0).abs() < 1e-12);
    }

    #[test]
    fn conjugation_matches_statevector() {
        let s = bell();
        let rho = DensityMatrix::from_state(&s).unwrap();
        let g = h().kron(&x());
        let via_rho = rho.apply_gate(&g, &[1, 0]).unwrap();
        let via_psi = DensityMatrix::from_state(&s.apply_gate(&g, &[1, 0]).unwrap()).unwrap();
        assert!(via_rho.approx_eq(&via_psi, 1e-12));
    }

    #[test]
    fn eigenvalues_of_known_states() {
        let ev = DensityMatrix::from_state(&bell()).unwrap().eigenvalues();
        assert_eq!(ev.len(), 4);
        assert!((ev[3] - 1.0).abs() < 1e-10);
        assert!(ev[..3].iter().all(|e| e.abs() < 1e-10));
        let ev = DensityMatrix::maximally_mixed(2).unwrap().eigenvalues();
        assert!(ev.iter().all(|e| (e - 0.25).abs() < 1e-12));
    }

    #[test]
    fn from_entries_validates() {
        assert!(DensityMatrix::from_entries(1, vec![ONE, ONE, ZERO, ZERO]).is_err());
        assert!(DensityMatrix::from_entries(1, vec![ONE, ZERO, ZERO, ONE]).is_err());
        assert!(DensityMatrix::from_entries(1, vec![ONE, ZERO, ZERO]).is_err());
    }
}

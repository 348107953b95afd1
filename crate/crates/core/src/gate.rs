//! The [`GateMatrix`] operator type.
//!
//! A gate is a unitary on `arity` qubits. Many of the gates used here have a
//! lot of structure (oracles are permutations or diagonals, the Fourier
//! transform is an FFT, `H⊗n` is a tensor power), and storing them densely
//! would cost `4^arity` complex numbers. Each gate therefore keeps a
//! structural representation; entries are computed on demand and the
//! statevector kernels dispatch on the structure.

use num_complex::Complex64;

use crate::C64;

/// Structural tag exposed for inspection and kernel dispatch.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Structure {
    Dense,
    Diagonal,
    Permutation,
    Controlled,
    Tensor,
    Fourier,
}

#[derive(Debug, Clone, PartialEq)]
pub(crate) enum Repr {
    /// Row-major `dim × dim` entries.
    Dense(Vec<C64>),
    Diagonal(Vec<C64>),
    /// Basis state `|l⟩` maps to `|perm[l]⟩`.
    Permutation(Vec<usize>),
    /// Identity unless the leading `n_controls` qubits are all 1.
    Controlled {
        n_controls: usize,
        base: Box<GateMatrix>,
    },
    /// Kronecker product; the first factor acts on the leading qubits.
    Tensor(Vec<GateMatrix>),
    /// `|X⟩ → 2^{-n/2} Σ_Y e^{±2πi XY/2^n} |Y⟩`, minus sign when inverse.
    Fourier { inverse: bool },
}

/// A unitary operator on `arity` qubits, MSB-first local indexing.
#[derive(Debug, Clone, PartialEq)]
pub struct GateMatrix {
    arity: usize,
    pub(crate) repr: Repr,
}

impl GateMatrix {
    pub(crate) fn from_repr(arity: usize, repr: Repr) -> Self {
        Self { arity, repr }
    }

    /// Build a dense gate from row-major entries. Unitarity is not checked;
    /// use [`GateMatrix::is_unitary`].
    ///
    /// Panics if `entries.len()` is not `4^arity`.
    pub fn dense(arity: usize, entries: Vec<C64>) -> Self {
        let dim = 1usize << arity;
        assert_eq!(entries.len(), dim * dim, "dense gate needs dim² entries");
        Self::from_repr(arity, Repr::Dense(entries))
    }

    /// Diagonal gate from its diagonal.
    ///
    /// Panics if the length is not a power of two.
    pub fn diagonal(diag: Vec<C64>) -> Self {
        assert!(diag.len().is_power_of_two(), "diagonal length must be 2^k");
        let arity = diag.len().trailing_zeros() as usize;
        Self::from_repr(arity, Repr::Diagonal(diag))
    }

    /// Permutation gate mapping `|l⟩` to `|perm[l]⟩`.
    ///
    /// Panics if `perm` is not a bijection on `0..2^k`.
    pub fn permutation(perm: Vec<usize>) -> Self {
        assert!(perm.len().is_power_of_two(), "permutation length must be 2^k");
        let mut seen = vec![false; perm.len()];
        for &p in &perm {
            assert!(p < perm.len() && !seen[p], "not a permutation");
            seen[p] = true;
        }
        let arity = perm.len().trailing_zeros() as usize;
        Self::from_repr(arity, Repr::Permutation(perm))
    }

    pub fn identity(arity: usize) -> Self {
        Self::from_repr(arity, Repr::Diagonal(vec![C64::new(1.0, 0.0); 1 << arity]))
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn dim(&self) -> usize {
        1 << self.arity
    }

    pub fn structure(&self) -> Structure {
        match self.repr {
            Repr::Dense(_) => Structure::Dense,
            Repr::Diagonal(_) => Structure::Diagonal,
            Repr::Permutation(_) => Structure::Permutation,
            Repr::Controlled { .. } => Structure::Controlled,
            Repr::Tensor(_) => Structure::Tensor,
            Repr::Fourier { .. } => Structure::Fourier,
        }
    }

    /// Matrix entry `⟨row|U|col⟩`.
    pub fn entry(&self, row: usize, col: usize) -> C64 {
        let zero = C64::new(0.0, 0.0);
        let one = C64::new(1.0, 0.0);
        match &self.repr {
            Repr::Dense(m) => m[row * self.dim() + col],
            Repr::Diagonal(d) => {
                if row == col {
                    d[row]
                } else {
                    zero
                }
            }
            Repr::Permutation(p) => {
                if p[col] == row {
                    one
                } else {
                    zero
                }
            }
            Repr::Controlled { n_controls, base } => {
                let shift = base.arity;
                let low = (1 << shift) - 1;
                let ctrl_all = (1 << n_controls) - 1;
                let (rc, cc) = (row >> shift, col >> shift);
                if rc != cc {
                    zero
                } else if rc == ctrl_all {
                    base.entry(row & low, col & low)
                } else if row == col {
                    one
                } else {
                    zero
                }
            }
            Repr::Tensor(factors) => {
                let mut shift = self.arity;
                let mut acc = one;
                for f in factors {
                    shift -= f.arity;
                    let mask = (1 << f.arity) - 1;
                    acc *= f.entry((row >> shift) & mask, (col >> shift) & mask);
                    if acc == zero {
                        break;
                    }
                }
                acc
            }
            Repr::Fourier { inverse } => {
                let dim = self.dim();
                let sign = if *inverse { -1.0 } else { 1.0 };
                // reduce the exponent mod dim before converting to an angle
                let k = ((row as u128 * col as u128) % dim as u128) as f64;
                let angle = sign * 2.0 * std::f64::consts::PI * k / dim as f64;
                Complex64::from_polar(1.0 / (dim as f64).sqrt(), angle)
            }
        }
    }

    /// Materialize the full `dim × dim` matrix, row-major. Costs `4^arity`.
    pub fn to_dense(&self) -> Vec<C64> {
        let dim = self.dim();
        let mut out = Vec::with_capacity(dim * dim);
        for r in 0..dim {
            for c in 0..dim {
                out.push(self.entry(r, c));
            }
        }
        out
    }

    /// Matrix product `self · other` (apply `other` first).
    ///
    /// Panics on arity mismatch.
    pub fn matmul(&self, other: &GateMatrix) -> GateMatrix {
        assert_eq!(self.arity, other.arity, "matmul arity mismatch");
        match (&self.repr, &other.repr) {
            (Repr::Permutation(a), Repr::Permutation(b)) => {
                Self::from_repr(self.arity, Repr::Permutation(b.iter().map(|&l| a[l]).collect()))
            }
            (Repr::Diagonal(a), Repr::Diagonal(b)) => Self::from_repr(
                self.arity,
                Repr::Diagonal(a.iter().zip(b).map(|(x, y)| x * y).collect()),
            ),
            (
                Repr::Controlled { n_controls: na, base: ba },
                Repr::Controlled { n_controls: nb, base: bb },
            ) if na == nb => Self::from_repr(
                self.arity,
                Repr::Controlled { n_controls: *na, base: Box::new(ba.matmul(bb)) },
            ),
            (Repr::Tensor(fa), Repr::Tensor(fb))
                if fa.len() == fb.len() && fa.iter().zip(fb).all(|(x, y)| x.arity == y.arity) =>
            {
                Self::from_repr(
                    self.arity,
                    Repr::Tensor(fa.iter().zip(fb).map(|(x, y)| x.matmul(y)).collect()),
                )
            }
            _ => {
                let dim = self.dim();
                let a = self.to_dense();
                let b = other.to_dense();
                let mut out = vec![C64::new(0.0, 0.0); dim * dim];
                for i in 0..dim {
                    for k in 0..dim {
                        let aik = a[i * dim + k];
                        if aik == C64::new(0.0, 0.0) {
                            continue;
                        }
                        for j in 0..dim {
                            out[i * dim + j] += aik * b[k * dim + j];
                        }
                    }
                }
                Self::from_repr(self.arity, Repr::Dense(out))
            }
        }
    }

    /// Conjugate transpose.
    pub fn dagger(&self) -> GateMatrix {
        let repr = match &self.repr {
            Repr::Dense(m) => {
                let dim = self.dim();
                let mut out = vec![C64::new(0.0, 0.0); dim * dim];
                for r in 0..dim {
                    for c in 0..dim {
                        out[c * dim + r] = m[r * dim + c].conj();
                    }
                }
                Repr::Dense(out)
            }
            Repr::Diagonal(d) => Repr::Diagonal(d.iter().map(|x| x.conj()).collect()),
            Repr::Permutation(p) => {
                let mut inv = vec![0; p.len()];
                for (l, &t) in p.iter().enumerate() {
                    inv[t] = l;
                }
                Repr::Permutation(inv)
            }
            Repr::Controlled { n_controls, base } => Repr::Controlled {
                n_controls: *n_controls,
                base: Box::new(base.dagger()),
            },
            Repr::Tensor(fs) => Repr::Tensor(fs.iter().map(GateMatrix::dagger).collect()),
            Repr::Fourier { inverse } => Repr::Fourier { inverse: !inverse },
        };
        Self::from_repr(self.arity, repr)
    }

    /// Entrywise complex conjugate.
    pub fn conjugate(&self) -> GateMatrix {
        let repr = match &self.repr {
            Repr::Dense(m) => Repr::Dense(m.iter().map(|x| x.conj()).collect()),
            Repr::Diagonal(d) => Repr::Diagonal(d.iter().map(|x| x.conj()).collect()),
            Repr::Permutation(p) => Repr::Permutation(p.clone()),
            Repr::Controlled { n_controls, base } => Repr::Controlled {
                n_controls: *n_controls,
                base: Box::new(base.conjugate()),
            },
            Repr::Tensor(fs) => Repr::Tensor(fs.iter().map(GateMatrix::conjugate).collect()),
            // the Fourier matrix is symmetric, so conj = dagger
            Repr::Fourier { inverse } => Repr::Fourier { inverse: !inverse },
        };
        Self::from_repr(self.arity, repr)
    }

    /// `U^(2^j)` by repeated squaring.
    pub fn pow2(&self, j: u32) -> GateMatrix {
        let mut g = self.clone();
        for _ in 0..j {
            g = g.matmul(&g);
        }
        g
    }

    /// Kronecker product `self ⊗ other`; `self` acts on the leading qubits.
    pub fn kron(&self, other: &GateMatrix) -> GateMatrix {
        let mut factors = Vec::new();
        for g in [self, other] {
            match &g.repr {
                Repr::Tensor(fs) => factors.extend(fs.iter().cloned()),
                _ => factors.push(g.clone()),
            }
        }
        Self::from_repr(self.arity + other.arity, Repr::Tensor(factors))
    }

    /// `U†U = I` within `tol`, entrywise.
    pub fn is_unitary(&self, tol: f64) -> bool {
        match &self.repr {
            Repr::Permutation(_) | Repr::Fourier { .. } => true,
            Repr::Diagonal(d) => d.iter().all(|x| (x.norm() - 1.0).abs() <= tol),
            Repr::Controlled { base, .. } => base.is_unitary(tol),
            Repr::Tensor(fs) => fs.iter().all(|f| f.is_unitary(tol)),
            Repr::Dense(_) => {
                let product = self.dagger().matmul(self);
                GateMatrix::identity(self.arity).approx_eq(&product, tol)
            }
        }
    }

    /// Entrywise equality within `tol`.
    pub fn approx_eq(&self, other: &GateMatrix, tol: f64) -> bool {
        if self.arity != other.arity {
            return false;
        }
        let dim = self.dim();
        (0..dim).all(|r| (0..dim).all(|c| (self.entry(r, c) - other.entry(r, c)).norm() <= tol))
    }

    /// Equality up to a global phase, within `tol` after phase alignment.
    pub fn approx_eq_up_to_phase(&self, other: &GateMatrix, tol: f64) -> bool {
        if self.arity != other.arity {
            return false;
        }
        let dim = self.dim();
        let mut phase = None;
        'find: for r in 0..dim {
            for c in 0..dim {
                let a = self.entry(r, c);
                let b = other.entry(r, c);
                if a.norm() > 1e-6 && b.norm() > 1e-6 {
                    phase = Some(b / a);
                    break 'find;
                }
            }
        }
        let Some(phase) = phase else {
            return self.approx_eq(other, tol);
        };
        let phase = phase / phase.norm();
        (0..dim).all(|r| {
            (0..dim).all(|c| (self.entry(r, c) * phase - other.entry(r, c)).norm() <= tol)
        })
    }

    /// Apply to a local amplitude vector of length `dim`.
    pub fn apply_to_vector(&self, v: &[C64]) -> Vec<C64> {
        let dim = self.dim();
        assert_eq!(v.len(), dim);
        let mut out = vec![C64::new(0.0, 0.0); dim];
        for (r, o) in out.iter_mut().enumerate() {
            for (c, x) in v.iter().enumerate() {
                *o += self.entry(r, c) * x;
            }
        }
        out
    }
}

//! In-place gate application on amplitude arrays.
//!
//! A `k`-qubit gate on an `n`-qubit register is applied by walking the
//! `2^(n-k)` strata of basis indices that agree on all non-target bits. The
//! full `2^n × 2^n` operator is never formed. Qubit `q` lives at bit
//! `n - 1 - q` of the basis index.

use rustfft::FftPlanner;

use crate::gate::{GateMatrix, Repr};
use crate::C64;

/// Apply `gate` to `targets` of the register held in `amps`.
///
/// Targets must already be validated: distinct, in range, `len == arity`.
pub(crate) fn apply(amps: &mut [C64], n: usize, gate: &GateMatrix, targets: &[usize]) {
    apply_masked(amps, n, gate, targets, 0);
}

/// As [`apply`], restricted to basis indices with every bit of `cond` set.
fn apply_masked(amps: &mut [C64], n: usize, gate: &GateMatrix, targets: &[usize], cond: usize) {
    match &gate.repr {
        Repr::Dense(m) if targets.len() == 1 => single_qubit(amps, n, m, targets[0], cond),
        Repr::Dense(m) => dense(amps, n, m, targets, cond),
        Repr::Diagonal(d) => diagonal(amps, n, d, targets, cond),
        Repr::Permutation(p) => permutation(amps, n, p, targets, cond),
        Repr::Controlled { n_controls, base } => {
            let mask = targets[..*n_controls]
                .iter()
                .fold(cond, |m, &q| m | bit(n, q));
            apply_masked(amps, n, base, &targets[*n_controls..], mask);
        }
        Repr::Tensor(factors) => {
            let mut offset = 0;
            for f in factors {
                apply_masked(amps, n, f, &targets[offset..offset + f.arity()], cond);
                offset += f.arity();
            }
        }
        Repr::Fourier { inverse } => fourier(amps, n, *inverse, targets, cond),
    }
}

#[inline]
fn bit(n: usize, q: usize) -> usize {
    1 << (n - 1 - q)
}

/// Local-index offsets: `offsets[l]` is the global bit pattern of local
/// index `l` (MSB of `l` ↔ `targets[0]`).
fn offsets(n: usize, targets: &[usize]) -> Vec<usize> {
    let k = targets.len();
    (0..1usize << k)
        .map(|l| {
            targets
                .iter()
                .enumerate()
                .filter(|(j, _)| (l >> (k - 1 - j)) & 1 == 1)
                .fold(0, |acc, (_, &q)| acc | bit(n, q))
        })
        .collect()
}

/// Iterate the base index of every stratum: indices with all target bits
/// clear and all `cond` bits set.
fn strata(n: usize, targets: &[usize], cond: usize) -> impl Iterator<Item = usize> {
    let mut positions: Vec<usize> = targets.iter().map(|&q| n - 1 - q).collect();
    positions.sort_unstable();
    let count = 1usize << (n - targets.len());
    (0..count).filter_map(move |s| {
        let mut base = s;
        for &p in &positions {
            let low = base & ((1 << p) - 1);
            base = ((base >> p) << (p + 1)) | low;
        }
        (base & cond == cond).then_some(base)
    })
}

fn single_qubit(amps: &mut [C64], n: usize, m: &[C64], target: usize, cond: usize) {
    let stride = bit(n, target);
    let (m00, m01, m10, m11) = (m[0], m[1], m[2], m[3]);
    for block in (0..amps.len()).step_by(2 * stride) {
        for i in block..block + stride {
            if i & cond != cond {
                continue;
            }
            let a = amps[i];
            let b = amps[i + stride];
            amps[i] = m00 * a + m01 * b;
            amps[i + stride] = m10 * a + m11 * b;
        }
    }
}

fn dense(amps: &mut [C64], n: usize, m: &[C64], targets: &[usize], cond: usize) {
    let offs = offsets(n, targets);
    let dim = offs.len();
    let mut buf = vec![C64::new(0.0, 0.0); dim];
    for base in strata(n, targets, cond) {
        for (b, &o) in buf.iter_mut().zip(&offs) {
            *b = amps[base | o];
        }
        for (r, &o) in offs.iter().enumerate() {
            let row = &m[r * dim..(r + 1) * dim];
            amps[base | o] = row.iter().zip(&buf).map(|(x, y)| x * y).sum();
        }
    }
}

fn diagonal(amps: &mut [C64], n: usize, d: &[C64], targets: &[usize], cond: usize) {
    let offs = offsets(n, targets);
    for base in strata(n, targets, cond) {
        for (l, &o) in offs.iter().enumerate() {
            amps[base | o] *= d[l];
        }
    }
}

fn permutation(amps: &mut [C64], n: usize, p: &[usize], targets: &[usize], cond: usize) {
    let offs = offsets(n, targets);
    let mut buf = vec![C64::new(0.0, 0.0); offs.len()];
    for base in strata(n, targets, cond) {
        for (b, &o) in buf.iter_mut().zip(&offs) {
            *b = amps[base | o];
        }
        for (l, &dst) in p.iter().enumerate() {
            amps[base | offs[dst]] = buf[l];
        }
    }
}

fn fourier(amps: &mut [C64], n: usize, inverse: bool, targets: &[usize], cond: usize) {
    let offs = offsets(n, targets);
    let dim = offs.len();
    let mut planner = FftPlanner::<f64>::new();
    // The transform's kernel is e^{+2πi XY/N}, which is rustfft's "inverse"
    // direction; both directions are unnormalized.
    let fft = if inverse {
        planner.plan_fft_forward(dim)
    } else {
        planner.plan_fft_inverse(dim)
    };
    let scale = 1.0 / (dim as f64).sqrt();
    let mut buf = vec![C64::new(0.0, 0.0); dim];
    let mut scratch = vec![C64::new(0.0, 0.0); fft.get_inplace_scratch_len()];
    for base in strata(n, targets, cond) {
        for (b, &o) in buf.iter_mut().zip(&offs) {
            *b = amps[base | o];
        }
        fft.process_with_scratch(&mut buf, &mut scratch);
        for (b, &o) in buf.iter().zip(&offs) {
            amps[base | o] = b * scale;
        }
    }
}

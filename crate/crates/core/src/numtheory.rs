//! Exact integer arithmetic for order finding and factoring.
//!
//! Moduli are capped at `2^31`; products go through `u128` so no
//! intermediate can overflow.

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};

/// Largest modulus accepted by the order-finding routines.
pub const MAX_MODULUS: u64 = 1 << 31;

/// Largest argument of the brute-force [`euler_phi`] oracle.
pub const MAX_PHI_ARGUMENT: u64 = 1_000_000;

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

fn mulmod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

/// `a^e mod n` by square-and-multiply.
pub fn modpow(a: u64, mut e: u64, n: u64) -> Result<u64> {
    if n < 2 {
        return Err(Error::InvalidArgument(format!("modulus {n} must be at least 2")));
    }
    let mut base = a % n;
    let mut acc = 1 % n;
    while e > 0 {
        if e & 1 == 1 {
            acc = mulmod(acc, base, n);
        }
        base = mulmod(base, base, n);
        e >>= 1;
    }
    Ok(acc)
}

/// Number of bits needed to write `n`.
pub fn bit_length(n: u64) -> u32 {
    u64::BITS - n.leading_zeros()
}

/// A nonnegative rational `num/den`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct Fraction {
    pub num: u64,
    pub den: u64,
}

impl Fraction {
    pub fn new(num: u64, den: u64) -> Self {
        Self { num, den }
    }

    pub fn reduced(&self) -> Self {
        let g = gcd(self.num, self.den).max(1);
        Self { num: self.num / g, den: self.den / g }
    }

    pub fn value(&self) -> f64 {
        self.num as f64 / self.den as f64
    }
}

impl fmt::Display for Fraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.num, self.den)
    }
}

/// Coefficients `[a₀; a₁, a₂, …]` of a finite continued fraction.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CfExpansion(pub Vec<u64>);

impl CfExpansion {
    pub fn coefficients(&self) -> &[u64] {
        &self.0
    }
}

/// Expansion of `num/den` with `0 ≤ num ≤ den`.
pub fn continued_fraction(mut num: u64, mut den: u64) -> Result<CfExpansion> {
    if den == 0 {
        return Err(Error::InvalidArgument("zero denominator".into()));
    }
    if num > den {
        return Err(Error::InvalidArgument(format!("{num}/{den} exceeds 1")));
    }
    let mut coeffs = Vec::new();
    loop {
        coeffs.push(num / den);
        let rem = num % den;
        if rem == 0 {
            break;
        }
        (num, den) = (den, rem);
    }
    Ok(CfExpansion(coeffs))
}

/// Successive truncations `p_k/q_k` by the standard recurrence; each is in
/// lowest terms.
pub fn convergents(cf: &CfExpansion) -> Vec<Fraction> {
    let (mut p_prev, mut p) = (0u64, 1u64);
    let (mut q_prev, mut q) = (1u64, 0u64);
    cf.0
        .iter()
        .map(|&a| {
            (p_prev, p) = (p, a * p + p_prev);
            (q_prev, q) = (q, a * q + q_prev);
            Fraction::new(p, q)
        })
        .collect()
}

/// Recover the order of `a` mod `modulus` from a phase-estimation readout
/// `x` on `n_bits` bits: scan the convergents of `x/2^n_bits` and return the
/// first denominator `t < modulus` with `a^t ≡ 1`.
pub fn recover_order(x: u64, n_bits: u32, a: u64, modulus: u64) -> Result<Option<u64>> {
    if n_bits == 0 || n_bits >= 63 {
        return Err(Error::InvalidArgument(format!("register width {n_bits} out of range")));
    }
    let scale = 1u64 << n_bits;
    if x >= scale {
        return Err(Error::InvalidArgument(format!("readout {x} does not fit in {n_bits} bits")));
    }
    check_modulus(modulus)?;
    if gcd(a % modulus, modulus) != 1 {
        return Err(Error::NotCoprime { a, modulus });
    }
    for c in convergents(&continued_fraction(x, scale)?) {
        if c.den < modulus && modpow(a, c.den, modulus)? == 1 {
            return Ok(Some(c.den));
        }
    }
    Ok(None)
}

fn check_modulus(n: u64) -> Result<()> {
    if !(2..=MAX_MODULUS).contains(&n) {
        return Err(Error::InvalidArgument(format!("modulus {n} outside [2, 2^31]")));
    }
    Ok(())
}

/// Count of `1 ≤ k < n` coprime to `n`, by enumeration.
pub fn euler_phi(n: u64) -> Result<u64> {
    if !(2..=MAX_PHI_ARGUMENT).contains(&n) {
        return Err(Error::InvalidArgument(format!("φ argument {n} outside [2, 10^6]")));
    }
    Ok((1..n).filter(|&k| gcd(k, n) == 1).count() as u64)
}

/// Smallest `r ≥ 1` with `a^r ≡ 1 mod n`, by iterated multiplication.
pub fn order_bruteforce(a: u64, n: u64) -> Result<u64> {
    check_modulus(n)?;
    let a = a % n;
    if gcd(a, n) != 1 {
        return Err(Error::NotCoprime { a, modulus: n });
    }
    let mut acc = a;
    let mut r = 1;
    while acc != 1 {
        acc = mulmod(acc, a, n);
        r += 1;
    }
    Ok(r)
}

/// Primality by trial division.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n.is_multiple_of(2) {
        return n == 2;
    }
    let mut d = 3;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

/// `Some((b, k))` with `b^k = n`, `k ≥ 2` and `b` prime, if `n` is a prime power.
pub fn prime_power(n: u64) -> Option<(u64, u32)> {
    if n < 4 {
        return None;
    }
    for k in (2..=bit_length(n)).rev() {
        let approx = (n as f64).powf(1.0 / k as f64).round() as u64;
        for b in approx.saturating_sub(1).max(2)..=approx + 1 {
            if b.checked_pow(k) == Some(n) && is_prime(b) {
                return Some((b, k));
            }
        }
    }
    None
}

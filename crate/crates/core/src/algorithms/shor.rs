use std::f64::consts::PI;

use num_complex::Complex64;
use serde::Serialize;

use super::phase::phase_estimation;
use crate::error::{Error, Result};
use crate::gate::GateMatrix;
use crate::numtheory::{bit_length, continued_fraction, convergents, gcd, is_prime, modpow, prime_power, recover_order, Fraction};
use crate::rng::RandomSource;
use crate::state::StateVector;
use crate::C64;

/// `U_a` is a permutation on `bit_length(N)` qubits; this caps that width.
pub const MAX_UA_QUBITS: u32 = 12;

fn check_base(a: u64, modulus: u64) -> Result<u32> {
    if modulus < 2 {
        return Err(Error::InvalidArgument(format!("modulus {modulus} must be at least 2")));
    }
    if a == 0 || a >= modulus {
        return Err(Error::InvalidArgument(format!("base {a} outside [1, {modulus})")));
    }
    if gcd(a, modulus) != 1 {
        return Err(Error::NotCoprime { a, modulus });
    }
    let m = bit_length(modulus);
    if m > MAX_UA_QUBITS {
        return Err(Error::TooManyQubits { requested: m as usize, max: MAX_UA_QUBITS as usize });
    }
    Ok(m)
}

/// `U_a|X⟩ = |aX mod N⟩` for `X < N`, identity on `X ≥ N`.
pub fn u_a_gate(a: u64, modulus: u64) -> Result<GateMatrix> {
    let m = check_base(a, modulus)?;
    let perm = (0..1u64 << m)
        .map(|x| if x < modulus { (a * x % modulus) as usize } else { x as usize })
        .collect();
    Ok(GateMatrix::permutation(perm))
}

/// `|u_k⟩ = r^{-1/2} Σ_j e^{−2πi jk/r} |a^j mod N⟩`, where `r` is the order
/// of `a`. Eigenvector of `U_a` with eigenvalue `e^{2πi k/r}`.
pub fn order_eigenstate(a: u64, modulus: u64, order: u64, k: u64) -> Result<StateVector> {
    let m = check_base(a, modulus)?;
    let mut amps = vec![C64::new(0.0, 0.0); 1 << m];
    let norm = 1.0 / (order as f64).sqrt();
    let mut power = 1u64;
    for j in 0..order {
        let angle = -2.0 * PI * ((j * k) % order) as f64 / order as f64;
        amps[power as usize] += Complex64::from_polar(norm, angle);
        power = power * a % modulus;
    }
    StateVector::from_amplitudes(amps)
}

/// `2m + 1` control qubits for an `m`-bit modulus.
pub fn default_control_bits(modulus: u64) -> u32 {
    2 * bit_length(modulus) + 1
}

/// One quantum order-finding run and its classical post-processing.
#[derive(Debug, Clone, Serialize)]
pub struct OrderRun {
    /// Measured control register.
    pub x: u64,
    pub control_bits: u32,
    /// Convergents of `x / 2^control_bits`.
    pub convergents: Vec<Fraction>,
    /// First convergent denominator `t < N` with `a^t ≡ 1`.
    pub order: Option<u64>,
}

/// Phase estimation of `U_a` on the target `|1⟩ = r^{-1/2} Σ_k |u_k⟩`,
/// followed by continued-fraction recovery.
pub fn order_finding_run(a: u64, modulus: u64, control_bits: u32, rng: &mut RandomSource) -> Result<OrderRun> {
    let m = check_base(a, modulus)?;
    if control_bits <= 2 * m {
        return Err(Error::InvalidArgument(format!(
            "need more than {} control bits for a {m}-bit modulus",
            2 * m
        )));
    }
    let u_gate = u_a_gate(a, modulus)?;
    let target = StateVector::basis(m as usize, 1)?;
    let est = phase_estimation(&u_gate, &target, control_bits as usize, rng)?;
    let x = est.x as u64;
    let convergents = convergents(&continued_fraction(x, 1 << control_bits)?);
    let order = recover_order(x, control_bits, a, modulus)?;
    Ok(OrderRun { x, control_bits, convergents, order })
}

/// Order of `a` modulo `modulus`, retrying failed runs up to `max_attempts`.
pub fn order_finding(a: u64, modulus: u64, rng: &mut RandomSource, max_attempts: usize) -> Result<Option<u64>> {
    check_base(a, modulus)?;
    if a == 1 {
        return Ok(Some(1));
    }
    let bits = default_control_bits(modulus);
    for _ in 0..max_attempts {
        if let Some(r) = order_finding_run(a, modulus, bits, rng)?.order {
            if modpow(a, r, modulus)? == 1 {
                return Ok(Some(r));
            }
        }
    }
    Ok(None)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum AttemptStatus {
    /// `N` is even; no quantum step needed.
    EvenModulus,
    /// `gcd(a, N) > 1` already splits `N`.
    SharedFactor,
    /// Continued fractions produced no verified order.
    OrderNotFound,
    OddOrder,
    /// `a^{r/2} ≡ −1 mod N`.
    TrivialRoot,
    /// Neither `gcd(a^{r/2} ± 1, N)` is a proper factor.
    NoFactor,
    Factored,
}

/// Record of one base tried by [`shor_factor`].
#[derive(Debug, Clone, Serialize)]
pub struct ShorAttempt {
    pub a: u64,
    pub run: Option<OrderRun>,
    /// `a^{r/2}`, exact when it fits in 64 bits and reduced mod `N` otherwise.
    pub half_power: Option<u64>,
    /// `(a^{r/2} + 1, gcd)` and `(a^{r/2} − 1, gcd)`.
    pub gcd_plus: Option<(u64, u64)>,
    pub gcd_minus: Option<(u64, u64)>,
    pub status: AttemptStatus,
    pub factors: Option<(u64, u64)>,
}

#[derive(Debug, Clone, Serialize)]
pub struct ShorOutcome {
    pub n: u64,
    /// `p ≤ q`, `p·q = n`, both greater than 1.
    pub factors: (u64, u64),
    pub attempts: Vec<ShorAttempt>,
}

fn split(n: u64, p: u64) -> (u64, u64) {
    let q = n / p;
    (p.min(q), p.max(q))
}

/// Steps 1–3 of the factoring loop for a fixed base `a`.
pub fn shor_attempt(n: u64, a: u64, control_bits: u32, rng: &mut RandomSource) -> Result<ShorAttempt> {
    let mut attempt = ShorAttempt {
        a,
        run: None,
        half_power: None,
        gcd_plus: None,
        gcd_minus: None,
        status: AttemptStatus::OrderNotFound,
        factors: None,
    };
    let g = gcd(a, n);
    if g > 1 {
        attempt.status = AttemptStatus::SharedFactor;
        attempt.factors = Some(split(n, g));
        return Ok(attempt);
    }
    let run = order_finding_run(a, n, control_bits, rng)?;
    let order = run.order;
    attempt.run = Some(run);
    let Some(r) = order else {
        return Ok(attempt);
    };
    if r % 2 == 1 {
        attempt.status = AttemptStatus::OddOrder;
        return Ok(attempt);
    }
    let reduced = modpow(a, r / 2, n)?;
    if reduced == n - 1 {
        attempt.status = AttemptStatus::TrivialRoot;
        return Ok(attempt);
    }
    let half = u32::try_from(r / 2)
        .ok()
        .and_then(|e| a.checked_pow(e))
        .filter(|h| *h < u64::MAX)
        .unwrap_or(reduced);
    attempt.half_power = Some(half);
    let plus = (half + 1, gcd(half + 1, n));
    let minus = (half - 1, gcd(half - 1, n));
    attempt.gcd_plus = Some(plus);
    attempt.gcd_minus = Some(minus);
    let proper = [plus.1, minus.1].into_iter().find(|&d| d > 1 && d < n);
    match proper {
        Some(d) => {
            attempt.status = AttemptStatus::Factored;
            attempt.factors = Some(split(n, d));
        }
        None => attempt.status = AttemptStatus::NoFactor,
    }
    Ok(attempt)
}

/// Factor `n` by random bases and quantum order finding.
pub fn shor_factor(n: u64, rng: &mut RandomSource, max_attempts: usize) -> Result<ShorOutcome> {
    if n < 4 {
        return Err(Error::InvalidArgument(format!("{n} is too small to factor")));
    }
    if n.is_multiple_of(2) {
        let attempt = ShorAttempt {
            a: 2,
            run: None,
            half_power: None,
            gcd_plus: None,
            gcd_minus: None,
            status: AttemptStatus::EvenModulus,
            factors: Some(split(n, 2)),
        };
        return Ok(ShorOutcome { n, factors: split(n, 2), attempts: vec![attempt] });
    }
    if is_prime(n) {
        return Err(Error::Prime(n));
    }
    if let Some((base, exp)) = prime_power(n) {
        return Err(Error::PrimePower { n, base, exp });
    }
    let bits = default_control_bits(n);
    let mut attempts = Vec::new();
    for _ in 0..max_attempts {
        let a = rng.range_inclusive(2, n - 1);
        let attempt = shor_attempt(n, a, bits, rng)?;
        let factors = attempt.factors;
        attempts.push(attempt);
        if let Some(factors) = factors {
            return Ok(ShorOutcome { n, factors, attempts });
        }
    }
    Err(Error::AttemptsExhausted(max_attempts))
}

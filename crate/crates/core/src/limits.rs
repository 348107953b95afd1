//! Process-wide register size caps.
//!
//! A statevector over `n` qubits holds `2^n` complex doubles and a density
//! matrix holds `4^n`, so both are capped. The caps can be raised or lowered
//! at runtime, e.g. from the `QSIM_MAX_QUBITS` environment variable in the CLI.

use std::sync::atomic::{AtomicUsize, Ordering};

use crate::error::{Error, Result};

pub const DEFAULT_MAX_QUBITS: usize = 24;
pub const DEFAULT_MAX_DENSITY_QUBITS: usize = 12;

/// Hard ceiling regardless of configuration; indices are `usize` bit masks.
const ABSOLUTE_MAX_QUBITS: usize = 40;

static MAX_QUBITS: AtomicUsize = AtomicUsize::new(DEFAULT_MAX_QUBITS);
static MAX_DENSITY_QUBITS: AtomicUsize = AtomicUsize::new(DEFAULT_MAX_DENSITY_QUBITS);

pub fn max_qubits() -> usize {
    MAX_QUBITS.load(Ordering::Relaxed)
}

pub fn max_density_qubits() -> usize {
    MAX_DENSITY_QUBITS.load(Ordering::Relaxed)
}

pub fn set_max_qubits(n: usize) {
    MAX_QUBITS.store(n.min(ABSOLUTE_MAX_QUBITS), Ordering::Relaxed);
}

pub fn set_max_density_qubits(n: usize) {
    MAX_DENSITY_QUBITS.store(n.min(ABSOLUTE_MAX_QUBITS / 2), Ordering::Relaxed);
}

pub(crate) fn check_qubits(n: usize) -> Result<()> {
    if n == 0 {
        return Err(Error::ZeroQubits);
    }
    let max = max_qubits();
    if n > max {
        return Err(Error::TooManyQubits { requested: n, max });
    }
    Ok(())
}

pub(crate) fn check_density_qubits(n: usize) -> Result<()> {
    if n == 0 {
        return Err(Error::ZeroQubits);
    }
    let max = max_density_qubits();
    if n > max {
        return Err(Error::TooManyQubits { requested: n, max });
    }
    Ok(())
}

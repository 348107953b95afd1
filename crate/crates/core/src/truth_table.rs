use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// Largest oracle input width; tables hold `2^n` bits.
pub const MAX_ORACLE_INPUTS: usize = 20;

/// A Boolean function `{0,1}^n → {0,1}` stored as a packed bit array indexed
/// by the integer value of the input.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TruthTable {
    n_inputs: usize,
    words: Vec<u64>,
}

impl TruthTable {
    fn check_width(n_inputs: usize) -> Result<()> {
        if n_inputs == 0 {
            return Err(Error::TruthTable("n must be at least 1".into()));
        }
        if n_inputs > MAX_ORACLE_INPUTS {
            return Err(Error::TooManyQubits { requested: n_inputs, max: MAX_ORACLE_INPUTS });
        }
        Ok(())
    }

    pub fn from_fn(n_inputs: usize, f: impl Fn(usize) -> bool) -> Result<Self> {
        Self::check_width(n_inputs)?;
        let len = 1usize << n_inputs;
        let mut words = vec![0u64; len.div_ceil(64)];
        for x in 0..len {
            if f(x) {
                words[x / 64] |= 1 << (x % 64);
            }
        }
        Ok(Self { n_inputs, words })
    }

    /// From `2^n` bits, index ascending.
    pub fn from_bits(bits: &[bool]) -> Result<Self> {
        if bits.len() < 2 || !bits.len().is_power_of_two() {
            return Err(Error::TruthTable(format!(
                "bit count {} is not 2^n with n ≥ 1",
                bits.len()
            )));
        }
        Self::from_fn(bits.len().trailing_zeros() as usize, |x| bits[x])
    }

    pub fn constant(n_inputs: usize, value: bool) -> Result<Self> {
        Self::from_fn(n_inputs, |_| value)
    }

    /// The function marking exactly the listed inputs.
    pub fn marking(n_inputs: usize, marked: &[usize]) -> Result<Self> {
        let len = 1usize << n_inputs.min(MAX_ORACLE_INPUTS);
        if let Some(&bad) = marked.iter().find(|&&x| x >= len) {
            return Err(Error::IndexOutOfRange { index: bad, n_qubits: n_inputs });
        }
        Self::from_fn(n_inputs, |x| marked.contains(&x))
    }

    /// `f_A(X) = A·X mod 2`, the bitwise scalar product.
    pub fn dot_product(n_inputs: usize, a: usize) -> Result<Self> {
        Self::from_fn(n_inputs, |x| (a & x).count_ones() % 2 == 1)
    }

    pub fn n_inputs(&self) -> usize {
        self.n_inputs
    }

    pub fn len(&self) -> usize {
        1 << self.n_inputs
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn get(&self, x: usize) -> bool {
        assert!(x < self.len(), "truth table index out of range");
        (self.words[x / 64] >> (x % 64)) & 1 == 1
    }

    pub fn count_ones(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn ones(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.len()).filter(|&x| self.get(x))
    }

    pub fn is_constant(&self) -> bool {
        let ones = self.count_ones();
        ones == 0 || ones == self.len()
    }

    pub fn is_balanced(&self) -> bool {
        self.count_ones() == self.len() / 2
    }

    pub fn to_bit_string(&self) -> String {
        (0..self.len()).map(|x| if self.get(x) { '1' } else { '0' }).collect()
    }
}

/// File format: `n=<int>` on the first line, then `2^n` characters of
/// `{0,1}`, index ascending.
impl FromStr for TruthTable {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut lines = s.lines().map(str::trim).filter(|l| !l.is_empty());
        let header = lines
            .next()
            .ok_or_else(|| Error::TruthTable("missing `n=<int>` header".into()))?;
        let n: usize = header
            .strip_prefix("n=")
            .and_then(|v| v.trim().parse().ok())
            .ok_or_else(|| Error::TruthTable(format!("malformed header `{header}`")))?;
        Self::check_width(n)?;
        let body = lines
            .next()
            .ok_or_else(|| Error::TruthTable("missing bit string".into()))?;
        if let Some(extra) = lines.next() {
            return Err(Error::TruthTable(format!("unexpected trailing line `{extra}`")));
        }
        if let Some(bad) = body.chars().find(|c| *c != '0' && *c != '1') {
            return Err(Error::TruthTable(format!("invalid character `{bad}`")));
        }
        let expected = 1usize << n;
        if body.len() != expected {
            return Err(Error::TruthTable(format!(
                "expected {expected} bits for n={n}, found {}",
                body.len()
            )));
        }
        let bits: Vec<bool> = body.bytes().map(|b| b == b'1').collect();
        Self::from_fn(n, |x| bits[x])
    }
}

impl fmt::Display for TruthTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "n={}", self.n_inputs)?;
        writeln!(f, "{}", self.to_bit_string())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_examples() {
        let id: TruthTable = "n=1\n01".parse().unwrap();
        assert!(!id.get(0) && id.get(1));
        let bal: TruthTable = "n=2\n0011\n".parse().unwrap();
        assert!(bal.is_balanced());
        assert_eq!(bal.ones().collect::<Vec<_>>(), vec![2, 3]);
    }

    #[test]
    fn parse_errors() {
        let err = "n=2\n001".parse::<TruthTable>().unwrap_err();
        assert!(matches!(err, Error::TruthTable(ref m) if m.contains("expected 4")));
        assert!("m=2\n0011".parse::<TruthTable>().is_err());
        assert!("n=2\n0021".parse::<TruthTable>().is_err());
        assert!("n=2".parse::<TruthTable>().is_err());
        assert!("".parse::<TruthTable>().is_err());
        assert!("n=0\n0".parse::<TruthTable>().is_err());
    }

    #[test]
    fn display_round_trips() {
        let t = TruthTable::dot_product(3, 5).unwrap();
        let back: TruthTable = t.to_string().parse().unwrap();
        assert_eq!(t, back);
    }

    #[test]
    fn wide_tables_pack_across_words() {
        let t = TruthTable::marking(8, &[0, 63, 64, 200]).unwrap();
        assert_eq!(t.count_ones(), 4);
        assert!(t.get(64) && t.get(200) && !t.get(65));
    }
}

//! Irreversible Boolean gates and reversible circuits over classical bits.
//!
//! Reversible circuits are built from NOT, CNOT, Toffoli and Fredkin steps.
//! FANOUT and ERASE have no primitive form: fan-out is a CNOT onto a fresh 0
//! wire and erasure happens by uncomputation ([`compute_with_uncompute`]).

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::gate::GateMatrix;
use crate::gates;

/// Elementary irreversible gates.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LogicGate {
    Not,
    And,
    Or,
    Xor,
    Nand,
    Nor,
}

impl LogicGate {
    pub fn is_unary(self) -> bool {
        self == LogicGate::Not
    }
}

impl FromStr for LogicGate {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s.to_ascii_uppercase().as_str() {
            "NOT" => Self::Not,
            "AND" => Self::And,
            "OR" => Self::Or,
            "XOR" => Self::Xor,
            "NAND" => Self::Nand,
            "NOR" => Self::Nor,
            _ => return Err(Error::UnknownGate(s.to_owned())),
        })
    }
}

/// Evaluate a gate; `b` must be present exactly for binary gates.
pub fn eval_gate(kind: LogicGate, a: bool, b: Option<bool>) -> Result<bool> {
    match (kind, b) {
        (LogicGate::Not, None) => Ok(!a),
        (LogicGate::Not, Some(_)) => Err(Error::ArityMismatch { arity: 1, targets: 2 }),
        (_, None) => Err(Error::ArityMismatch { arity: 2, targets: 1 }),
        (LogicGate::And, Some(b)) => Ok(a & b),
        (LogicGate::Or, Some(b)) => Ok(a | b),
        (LogicGate::Xor, Some(b)) => Ok(a ^ b),
        (LogicGate::Nand, Some(b)) => Ok(!(a & b)),
        (LogicGate::Nor, Some(b)) => Ok(!(a | b)),
    }
}

/// One reversible step.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Step {
    Not(usize),
    /// `(control, target)`.
    Cnot(usize, usize),
    /// `(a, b, c)`: `c ← c ⊕ ab`.
    Toffoli(usize, usize, usize),
    /// `(a, b, c)`: swap `a`, `b` when `c = 1`.
    Fredkin(usize, usize, usize),
}

impl Step {
    pub fn wires(&self) -> Vec<usize> {
        match *self {
            Step::Not(a) => vec![a],
            Step::Cnot(a, b) => vec![a, b],
            Step::Toffoli(a, b, c) | Step::Fredkin(a, b, c) => vec![a, b, c],
        }
    }

    fn apply(&self, bits: &mut [bool]) {
        match *self {
            Step::Not(a) => bits[a] = !bits[a],
            Step::Cnot(a, b) => bits[b] ^= bits[a],
            Step::Toffoli(a, b, c) => bits[c] ^= bits[a] & bits[b],
            Step::Fredkin(a, b, c) => {
                if bits[c] {
                    bits.swap(a, b);
                }
            }
        }
    }

    /// The equivalent quantum gate and its wire list.
    pub fn to_quantum(&self) -> (GateMatrix, Vec<usize>) {
        let gate = match self {
            Step::Not(_) => gates::x(),
            Step::Cnot(..) => gates::cnot(),
            Step::Toffoli(..) => gates::toffoli(),
            Step::Fredkin(..) => gates::fredkin(),
        };
        (gate, self.wires())
    }
}

impl fmt::Display for Step {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Step::Not(a) => write!(f, "not {a}"),
            Step::Cnot(a, b) => write!(f, "cnot {a} {b}"),
            Step::Toffoli(a, b, c) => write!(f, "toffoli {a} {b} {c}"),
            Step::Fredkin(a, b, c) => write!(f, "fredkin {a} {b} {c}"),
        }
    }
}

/// What a wire carries in a compute/uncompute pipeline.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WireRole {
    Input,
    /// Starts at 0, must end at 0.
    Ancilla,
    /// Starts at 0; holds `r(x)` after the forward pass.
    Result,
    /// Starts at 0; holds scratch values after the forward pass.
    Garbage,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReversibleCircuit {
    n_wires: usize,
    roles: Vec<WireRole>,
    steps: Vec<Step>,
}

impl ReversibleCircuit {
    /// Empty circuit; every wire is an input until roles are assigned.
    pub fn new(n_wires: usize) -> Result<Self> {
        if n_wires == 0 {
            return Err(Error::Circuit("circuit needs at least one wire".into()));
        }
        Ok(Self { n_wires, roles: vec![WireRole::Input; n_wires], steps: Vec::new() })
    }

    pub fn with_roles(roles: Vec<WireRole>) -> Result<Self> {
        let mut c = Self::new(roles.len())?;
        c.roles = roles;
        Ok(c)
    }

    pub fn push(&mut self, step: Step) -> Result<&mut Self> {
        let wires = step.wires();
        for (i, &w) in wires.iter().enumerate() {
            if w >= self.n_wires {
                return Err(Error::Circuit(format!("wire {w} out of range in `{step}`")));
            }
            if wires[..i].contains(&w) {
                return Err(Error::Circuit(format!("wire {w} repeated in `{step}`")));
            }
        }
        self.steps.push(step);
        Ok(self)
    }

    pub fn from_steps(n_wires: usize, steps: impl IntoIterator<Item = Step>) -> Result<Self> {
        let mut c = Self::new(n_wires)?;
        for s in steps {
            c.push(s)?;
        }
        Ok(c)
    }

    pub fn n_wires(&self) -> usize {
        self.n_wires
    }

    pub fn steps(&self) -> &[Step] {
        &self.steps
    }

    pub fn roles(&self) -> &[WireRole] {
        &self.roles
    }

    pub fn wires_with_role(&self, role: WireRole) -> Vec<usize> {
        (0..self.n_wires).filter(|&w| self.roles[w] == role).collect()
    }

    /// Same steps in reverse order; every step is its own inverse.
    pub fn reversed(&self) -> Self {
        let mut c = self.clone();
        c.steps.reverse();
        c
    }

    pub fn run(&self, input: &[bool]) -> Result<Vec<bool>> {
        if input.len() != self.n_wires {
            return Err(Error::DimensionMismatch { expected: self.n_wires, found: input.len() });
        }
        let mut bits = input.to_vec();
        for s in &self.steps {
            s.apply(&mut bits);
        }
        Ok(bits)
    }

    pub fn run_reverse(&self, output: &[bool]) -> Result<Vec<bool>> {
        self.reversed().run(output)
    }

    pub fn to_quantum(&self) -> Vec<(GateMatrix, Vec<usize>)> {
        self.steps.iter().map(Step::to_quantum).collect()
    }
}

/// Text format: `wires <n>` then one step per line
/// (`toffoli i j k`, `fredkin i j k`, `cnot i j`, `not i`). Blank lines and
/// `#` comments are ignored.
impl FromStr for ReversibleCircuit {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut lines = s
            .lines()
            .map(|l| l.split('#').next().unwrap_or("").trim())
            .filter(|l| !l.is_empty());
        let header = lines.next().ok_or_else(|| Error::Circuit("empty circuit file".into()))?;
        let n_wires = match header.split_whitespace().collect::<Vec<_>>()[..] {
            ["wires", n] => n
                .parse()
                .map_err(|_| Error::Circuit(format!("bad wire count `{n}`")))?,
            _ => return Err(Error::Circuit(format!("expected `wires <n>`, found `{header}`"))),
        };
        let mut circuit = Self::new(n_wires)?;
        for line in lines {
            let parts: Vec<&str> = line.split_whitespace().collect();
            let args = parts[1..]
                .iter()
                .map(|a| a.parse::<usize>())
                .collect::<std::result::Result<Vec<_>, _>>()
                .map_err(|_| Error::Circuit(format!("bad wire index in `{line}`")))?;
            let step = match (parts[0].to_ascii_lowercase().as_str(), &args[..]) {
                ("not", &[a]) => Step::Not(a),
                ("cnot", &[a, b]) => Step::Cnot(a, b),
                ("toffoli", &[a, b, c]) => Step::Toffoli(a, b, c),
                ("fredkin", &[a, b, c]) => Step::Fredkin(a, b, c),
                _ => return Err(Error::Circuit(format!("unrecognized step `{line}`"))),
            };
            circuit.push(step)?;
        }
        Ok(circuit)
    }
}

impl fmt::Display for ReversibleCircuit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "wires {}", self.n_wires)?;
        for s in &self.steps {
            writeln!(f, "{s}")?;
        }
        Ok(())
    }
}

/// Wire values after [`compute_with_uncompute`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UncomputeOutput {
    /// Original wires followed by one copy wire per result wire.
    pub wires: Vec<bool>,
    /// The copied result `r(x)`.
    pub result: Vec<bool>,
}

/// Run `(x,0,0,0) → (x,r,g,0) → (x,r,g,r) → (x,0,0,r)`: compute, copy the
/// result wires onto fresh wires with CNOTs, then run the circuit backwards
/// to clear result and garbage.
pub fn compute_with_uncompute(circuit: &ReversibleCircuit, x: &[bool]) -> Result<UncomputeOutput> {
    let inputs = circuit.wires_with_role(WireRole::Input);
    let results = circuit.wires_with_role(WireRole::Result);
    if inputs.len() != x.len() {
        return Err(Error::DimensionMismatch { expected: inputs.len(), found: x.len() });
    }
    let n = circuit.n_wires();
    let mut pipeline = ReversibleCircuit::new(n + results.len())?;
    for &s in circuit.steps() {
        pipeline.push(s)?;
    }
    for (i, &r) in results.iter().enumerate() {
        pipeline.push(Step::Cnot(r, n + i))?;
    }
    for &s in circuit.steps().iter().rev() {
        pipeline.push(s)?;
    }

    let mut start = vec![false; n + results.len()];
    for (&w, &bit) in inputs.iter().zip(x) {
        start[w] = bit;
    }
    let wires = pipeline.run(&start)?;
    let dirty: Vec<usize> = (0..n)
        .filter(|&w| circuit.roles()[w] != WireRole::Input && wires[w])
        .collect();
    if !dirty.is_empty() {
        return Err(Error::GarbageNotRestored(dirty));
    }
    let result = wires[n..].to_vec();
    Ok(UncomputeOutput { wires, result })
}

/// FANOUT as a CNOT onto a fresh 0 wire.
pub fn fanout(a: bool) -> (bool, bool) {
    let c = ReversibleCircuit::from_steps(2, [Step::Cnot(0, 1)]).expect("valid circuit");
    let out = c.run(&[a, false]).expect("two wires");
    (out[0], out[1])
}

/// In-place half adder on wires `(x, y, 0)`: one Toffoli then one CNOT,
/// leaving `(x, x⊕y, xy)`.
pub fn half_adder_circuit() -> ReversibleCircuit {
    ReversibleCircuit::from_steps(3, [Step::Toffoli(0, 1, 2), Step::Cnot(0, 1)])
        .expect("valid circuit")
}

/// `(sum, carry) = (x⊕y, xy)`.
pub fn half_adder(x: bool, y: bool) -> (bool, bool) {
    let out = half_adder_circuit().run(&[x, y, false]).expect("three wires");
    (out[1], out[2])
}

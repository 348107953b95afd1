use thiserror::Error;

/// Errors raised by the simulator and the algorithms built on it.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("register of {requested} qubits exceeds the configured maximum of {max}")]
    TooManyQubits { requested: usize, max: usize },

    #[error("qubit count must be positive")]
    ZeroQubits,

    #[error("basis index {index} out of range for {n_qubits} qubits")]
    IndexOutOfRange { index: usize, n_qubits: usize },

    #[error("qubit {qubit} out of range for a {n_qubits}-qubit register")]
    QubitOutOfRange { qubit: usize, n_qubits: usize },

    #[error("qubit {0} listed more than once")]
    DuplicateQubit(usize),

    #[error("gate acts on {arity} qubits but {targets} targets were given")]
    ArityMismatch { arity: usize, targets: usize },

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("state is not normalized (norm² = {0})")]
    NotNormalized(f64),

    #[error("empty qubit list")]
    EmptyTargets,

    #[error("unknown gate name `{0}`")]
    UnknownGate(String),

    #[error("malformed truth table: {0}")]
    TruthTable(String),

    #[error("malformed circuit: {0}")]
    Circuit(String),

    #[error("reversible circuit left nonzero ancilla or garbage wires: {0:?}")]
    GarbageNotRestored(Vec<usize>),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("promise violated: function is neither constant nor balanced")]
    PromiseViolated,

    #[error("{a} is not coprime to {modulus}")]
    NotCoprime { a: u64, modulus: u64 },

    #[error("{0} is prime")]
    Prime(u64),

    #[error("{n} is a prime power ({base}^{exp})")]
    PrimePower { n: u64, base: u64, exp: u32 },

    #[error("gave up after {0} attempts")]
    AttemptsExhausted(usize),

    #[error("forced measurement outcome {outcome} has zero probability")]
    ImpossibleOutcome { outcome: usize },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

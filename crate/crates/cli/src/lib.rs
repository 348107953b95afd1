//! Command-line driver for `qsim`.
//!
//! Every subcommand prints one JSON [`RunReport`] on standard output.
//! Exit codes: 0 success, 1 algorithmic failure, 2 usage error.

use std::ffi::OsString;
use std::fmt;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Parser, Subcommand};
use serde::Serialize;
use serde_json::Value;

use qsim::TruthTable;

mod commands;
mod pretty;

pub use pretty::render_pretty;

/// Environment variable overriding the statevector qubit cap.
pub const MAX_QUBITS_ENV: &str = "QSIM_MAX_QUBITS";

#[derive(Debug, Parser)]
#[command(name = "qsim", version, about = "Simulate textbook quantum algorithms and protocols")]
pub struct Cli {
    /// Seed for every random choice and measurement.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Repetitions for sampling summaries; verdicts never depend on it.
    #[arg(long, global = true, default_value_t = 1, value_parser = clap::value_parser!(u64).range(1..))]
    pub shots: u64,
    /// Emit the report as compact JSON (the default).
    #[arg(long, global = true)]
    pub json: bool,
    /// Emit an indented human-readable rendering of the same report.
    #[arg(long, global = true, conflicts_with = "json")]
    pub pretty: bool,
    /// Record wall-clock time in the report. Off by default so output is
    /// byte-identical across runs.
    #[arg(long, global = true)]
    pub timing: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Deutsch's problem for a one-bit function.
    Deutsch {
        #[arg(long)]
        oracle: PathBuf,
    },
    /// Deutsch-Jozsa: constant or balanced with one query.
    Dj {
        #[arg(long)]
        oracle: PathBuf,
    },
    /// Bernstein-Vazirani: recover A from f(X) = A·X.
    Bv {
        /// Hidden string as an integer.
        #[arg(long)]
        a: u64,
        /// Number of input bits.
        #[arg(long)]
        n: usize,
    },
    /// Grover search over 2^n items.
    Grover {
        /// Number of qubits.
        #[arg(long, required_unless_present = "oracle")]
        n: Option<usize>,
        /// Declared number of solutions; defaults to the number marked.
        #[arg(long)]
        solutions: Option<u64>,
        /// Marked index; repeat for several.
        #[arg(long, conflicts_with = "oracle")]
        target: Vec<usize>,
        #[arg(long)]
        oracle: Option<PathBuf>,
    },
    /// Phase estimation of diag(1, e^{2πiφ}) on |1⟩.
    PhaseEst {
        /// φ as a fraction of a turn, e.g. `5/16` or `0.3125`.
        #[arg(long)]
        phase: String,
        /// Control register width.
        #[arg(long)]
        bits: usize,
    },
    /// Quantum order finding of `a` modulo `modulus`.
    Order {
        #[arg(long)]
        a: u64,
        #[arg(long)]
        modulus: u64,
        /// Control register width; defaults to 2m+1 for an m-bit modulus.
        #[arg(long)]
        control_bits: Option<u32>,
        #[arg(long, default_value_t = 16)]
        max_attempts: usize,
    },
    /// Shor factoring.
    Factor {
        #[arg(long)]
        n: u64,
        #[arg(long, default_value_t = 64)]
        max_attempts: usize,
    },
    /// Teleport α|0⟩ + β|1⟩ through a shared Bell pair.
    Teleport {
        /// Amplitude as `re` or `re,im`.
        #[arg(long, default_value = "1", allow_hyphen_values = true)]
        alpha: String,
        #[arg(long, default_value = "0", allow_hyphen_values = true)]
        beta: String,
        /// Shared pair: `00` or `11`.
        #[arg(long, default_value = "00")]
        label: String,
    },
    /// Superdense coding of two classical bits.
    Superdense {
        /// Two bits, e.g. `10`.
        #[arg(long)]
        bits: String,
    },
    /// Bloch vector of α|0⟩ + β|1⟩, optionally mixed with I/2.
    Bloch {
        #[arg(long, allow_hyphen_values = true)]
        alpha: String,
        #[arg(long, allow_hyphen_values = true)]
        beta: String,
        /// Weight of the pure state in a mixture with I/2.
        #[arg(long, default_value_t = 1.0)]
        weight: f64,
    },
    /// Run a reversible circuit file on a bit string.
    RevRun {
        #[arg(long)]
        circuit: PathBuf,
        /// One character per wire, wire 0 first.
        #[arg(long)]
        input: String,
    },
    /// Deutsch's circuit with the control dephased by overlap γ.
    DeutschDecohered {
        #[arg(long)]
        gamma: f64,
        #[arg(long)]
        oracle: PathBuf,
    },
    /// Brute-force multiplicative order and Euler φ.
    OrderClassical {
        #[arg(long)]
        a: u64,
        #[arg(long)]
        modulus: u64,
    },
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Deutsch { .. } => "deutsch",
            Command::Dj { .. } => "dj",
            Command::Bv { .. } => "bv",
            Command::Grover { .. } => "grover",
            Command::PhaseEst { .. } => "phase-est",
            Command::Order { .. } => "order",
            Command::Factor { .. } => "factor",
            Command::Teleport { .. } => "teleport",
            Command::Superdense { .. } => "superdense",
            Command::Bloch { .. } => "bloch",
            Command::RevRun { .. } => "rev-run",
            Command::DeutschDecohered { .. } => "deutsch-decohered",
            Command::OrderClassical { .. } => "order-classical",
        }
    }
}

/// One JSON object per invocation.
#[derive(Debug, Clone, Serialize)]
pub struct RunReport {
    pub subcommand: String,
    pub seed: u64,
    pub inputs: Value,
    pub result: Value,
    /// `null` unless `--timing` was given.
    pub wall_time_ms: Option<f64>,
    /// `null` for subcommands that make no oracle queries.
    pub oracle_call_count: Option<usize>,
}

#[derive(Debug)]
pub enum CliError {
    /// A parameter is outside its allowed range.
    Parameter(String),
    /// An oracle truth-table file failed to parse.
    OracleFile { path: PathBuf, detail: String },
    /// A reversible-circuit file failed to parse.
    CircuitFile { path: PathBuf, detail: String },
    Io { path: PathBuf, detail: String },
    /// The algorithm ran but did not produce an answer.
    Failed(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Failed(_) => 1,
            _ => 2,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Parameter(m) => write!(f, "parameter out of range: {m}"),
            CliError::OracleFile { path, detail } => {
                write!(f, "malformed oracle file `{}`: {detail}", path.display())
            }
            CliError::CircuitFile { path, detail } => {
                write!(f, "malformed circuit file `{}`: {detail}", path.display())
            }
            CliError::Io { path, detail } => write!(f, "cannot read `{}`: {detail}", path.display()),
            CliError::Failed(m) => write!(f, "algorithm failed: {m}"),
        }
    }
}

impl From<qsim::Error> for CliError {
    fn from(e: qsim::Error) -> Self {
        match e {
            qsim::Error::AttemptsExhausted(_) => CliError::Failed(e.to_string()),
            other => CliError::Parameter(other.to_string()),
        }
    }
}

fn read(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|e| CliError::Io { path: path.into(), detail: e.to_string() })
}

/// Parse a truth-table file: `n=<int>` then `2^n` characters of `0`/`1`.
pub fn load_truth_table(path: &Path) -> Result<TruthTable, CliError> {
    read(path)?
        .parse()
        .map_err(|e: qsim::Error| CliError::OracleFile { path: path.into(), detail: e.to_string() })
}

pub fn load_circuit(path: &Path) -> Result<qsim::classical::ReversibleCircuit, CliError> {
    read(path)?
        .parse()
        .map_err(|e: qsim::Error| CliError::CircuitFile { path: path.into(), detail: e.to_string() })
}

fn apply_env_limits() -> Result<(), CliError> {
    if let Some(raw) = std::env::var_os(MAX_QUBITS_ENV) {
        let text = raw.to_string_lossy();
        let n: usize = text
            .trim()
            .parse()
            .ok()
            .filter(|&n| n > 0)
            .ok_or_else(|| CliError::Parameter(format!("{MAX_QUBITS_ENV}=`{text}` is not a positive integer")))?;
        qsim::limits::set_max_qubits(n);
    }
    Ok(())
}

/// Execute a parsed command line and build its report. The second value
/// is a failure that should still exit 1 after the report is printed.
pub fn execute(cli: &Cli) -> Result<(RunReport, Option<CliError>), CliError> {
    apply_env_limits()?;
    let start = Instant::now();
    let out = commands::dispatch(cli)?;
    let wall_time_ms = cli.timing.then(|| start.elapsed().as_secs_f64() * 1e3);
    let report = RunReport {
        subcommand: cli.command.name().to_string(),
        seed: cli.seed,
        inputs: out.inputs,
        result: out.result,
        wall_time_ms,
        oracle_call_count: out.oracle_calls,
    };
    Ok((report, out.failure))
}

/// Parse `args` (including the program name), run, write the report to
/// `out` and diagnostics to `err`. Returns the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let sink: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = write!(sink, "{text}");
            return code;
        }
    };
    match execute(&cli) {
        Ok((report, failure)) => {
            let text = if cli.pretty {
                render_pretty(&serde_json::to_value(&report).expect("report is JSON"))
            } else {
                serde_json::to_string(&report).expect("report is JSON")
            };
            let _ = writeln!(out, "{text}");
            match failure {
                Some(f) => {
                    let _ = writeln!(err, "qsim: {f}");
                    f.exit_code()
                }
                None => 0,
            }
        }
        Err(e) => {
            let _ = writeln!(err, "qsim: {e}");
            e.exit_code()
        }
    }
}

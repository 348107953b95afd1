use std::collections::BTreeMap;
use std::f64::consts::PI;
use std::path::Path;

use serde_json::{json, Value};

use qsim::algorithms::{
    bernstein_vazirani, default_control_bits, deutsch, deutsch_jozsa, grover_search, grover_state,
    order_finding_run, phase_estimation, phase_estimation_distribution, shor_factor,
};
use qsim::decoherence::{deutsch_decohered, deutsch_decohered_closed_form, Overlap};
use qsim::numtheory::{euler_phi, order_bruteforce, MAX_PHI_ARGUMENT};
use qsim::protocols::{bell_state, superdense_decode, superdense_encode, teleport, BellLabel};
use qsim::{DensityMatrix, GateMatrix, RandomSource, StateVector, TruthTable, C64};

use crate::{load_circuit, load_truth_table, Cli, CliError, Command};

pub(crate) struct Outcome {
    pub inputs: Value,
    pub result: Value,
    pub oracle_calls: Option<usize>,
    pub failure: Option<CliError>,
}

impl Outcome {
    fn new(inputs: Value, result: Value) -> Self {
        Self { inputs, result, oracle_calls: None, failure: None }
    }

    fn calls(mut self, n: usize) -> Self {
        self.oracle_calls = Some(n);
        self
    }
}

fn param(msg: impl Into<String>) -> CliError {
    CliError::Parameter(msg.into())
}

fn path_str(p: &Path) -> String {
    p.display().to_string()
}

/// `re` or `re,im`.
fn parse_complex(name: &str, s: &str) -> Result<C64, CliError> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    let num = |t: &str| t.parse::<f64>().map_err(|_| param(format!("--{name} `{s}` is not `re` or `re,im`")));
    match parts[..] {
        [re] => Ok(C64::new(num(re)?, 0.0)),
        [re, im] => Ok(C64::new(num(re)?, num(im)?)),
        _ => Err(param(format!("--{name} `{s}` is not `re` or `re,im`"))),
    }
}

/// `p/q` or a decimal, reduced into `[0, 1)`.
fn parse_turns(s: &str) -> Result<f64, CliError> {
    let bad = || param(format!("--phase `{s}` is not a fraction like `5/16` or `0.3125`"));
    let value = match s.split_once('/') {
        Some((p, q)) => {
            let p: f64 = p.trim().parse().map_err(|_| bad())?;
            let q: f64 = q.trim().parse().map_err(|_| bad())?;
            if q == 0.0 {
                return Err(bad());
            }
            p / q
        }
        None => s.trim().parse().map_err(|_| bad())?,
    };
    if !value.is_finite() {
        return Err(bad());
    }
    Ok(value.rem_euclid(1.0))
}

fn parse_bits(name: &str, s: &str, len: usize) -> Result<Vec<bool>, CliError> {
    if s.chars().count() != len {
        return Err(param(format!("--{name} `{s}` must have {len} characters")));
    }
    s.chars()
        .map(|c| match c {
            '0' => Ok(false),
            '1' => Ok(true),
            _ => Err(param(format!("--{name} `{s}` may only contain 0 and 1"))),
        })
        .collect()
}

fn bit_string(bits: &[bool]) -> String {
    bits.iter().map(|&b| if b { '1' } else { '0' }).collect()
}

fn histogram(samples: impl Iterator<Item = usize>, width: usize) -> BTreeMap<String, u64> {
    let mut counts = BTreeMap::new();
    for x in samples {
        *counts.entry(format!("{x:0width$b}")).or_insert(0) += 1;
    }
    counts
}

pub(crate) fn dispatch(cli: &Cli) -> Result<Outcome, CliError> {
    let mut rng = RandomSource::new(cli.seed);
    let shots = cli.shots;
    match &cli.command {
        Command::Deutsch { oracle } => {
            let f = load_truth_table(oracle)?;
            let c = deutsch(&f)?;
            let calls = c.oracle_calls;
            Ok(Outcome::new(json!({"oracle": path_str(oracle), "table": f.to_bit_string()}), json!(c)).calls(calls))
        }
        Command::Dj { oracle } => {
            let f = load_truth_table(oracle)?;
            let c = deutsch_jozsa(&f).map_err(|e| match e {
                qsim::Error::PromiseViolated => param(format!(
                    "`{}` is neither constant nor balanced",
                    path_str(oracle)
                )),
                other => other.into(),
            })?;
            let calls = c.oracle_calls;
            Ok(Outcome::new(json!({"oracle": path_str(oracle), "table": f.to_bit_string()}), json!(c)).calls(calls))
        }
        Command::Bv { a, n } => {
            if *n == 0 || *n >= 63 || *a >= 1u64 << n {
                return Err(param(format!("--a {a} does not fit in --n {n} bits")));
            }
            let r = bernstein_vazirani(*a as usize, *n)?;
            let calls = r.oracle_calls;
            Ok(Outcome::new(json!({"a": a, "n": n}), json!(r)).calls(calls))
        }
        Command::Grover { n, solutions, target, oracle } => grover(*n, *solutions, target, oracle.as_deref(), shots, &mut rng),
        Command::PhaseEst { phase, bits } => {
            let turns = parse_turns(phase)?;
            if *bits == 0 {
                return Err(param("--bits must be at least 1"));
            }
            let u = GateMatrix::diagonal(vec![C64::new(1.0, 0.0), C64::from_polar(1.0, 2.0 * PI * turns)]);
            let one = StateVector::basis(1, 1)?;
            let est = phase_estimation(&u, &one, *bits, &mut rng)?;
            let probs = phase_estimation_distribution(&u, &one, *bits)?;
            let (best, best_p) = probs
                .iter()
                .copied()
                .enumerate()
                .max_by(|a, b| a.1.total_cmp(&b.1))
                .expect("nonempty distribution");
            let mut result = json!({
                "x": est.x,
                "fraction": est.fraction,
                "probability": est.probability,
                "most_likely": {"x": best, "fraction": best as f64 / probs.len() as f64, "probability": best_p},
            });
            if shots > 1 {
                let counts = histogram((0..shots).map(|_| rng.sample_index(&probs)), *bits);
                result["counts"] = json!(counts);
            }
            Ok(Outcome::new(json!({"phase": phase, "turns": turns, "bits": bits, "shots": shots}), result))
        }
        Command::Order { a, modulus, control_bits, max_attempts } => {
            let bits = control_bits.unwrap_or_else(|| default_control_bits(*modulus));
            let inputs = json!({"a": a, "modulus": modulus, "control_bits": bits, "max_attempts": max_attempts});
            if *a == 1 && *modulus > 1 {
                return Ok(Outcome::new(inputs, json!({"order": 1, "runs": []})));
            }
            let mut runs = Vec::new();
            let mut order = None;
            for _ in 0..*max_attempts {
                let run = order_finding_run(*a, *modulus, bits, &mut rng)?;
                order = run.order;
                runs.push(run);
                if order.is_some() {
                    break;
                }
            }
            let mut out = Outcome::new(inputs, json!({"order": order, "runs": runs}));
            if order.is_none() {
                out.failure = Some(CliError::Failed(format!("no order recovered in {max_attempts} runs")));
            }
            Ok(out)
        }
        Command::Factor { n, max_attempts } => {
            let outcome = shor_factor(*n, &mut rng, *max_attempts)?;
            Ok(Outcome::new(json!({"n": n, "max_attempts": max_attempts}), json!(outcome)))
        }
        Command::Teleport { alpha, beta, label } => {
            let a = parse_complex("alpha", alpha)?;
            let b = parse_complex("beta", beta)?;
            let psi = StateVector::qubit(a, b)?;
            let bits = parse_bits("label", label, 2)?;
            let label = BellLabel::new(bits[0] as u8, bits[1] as u8)?;
            let first = teleport(&psi, label, &mut rng)?;
            let mut min_fidelity = first.bob_after.fidelity(&psi)?;
            let mut counts: BTreeMap<String, u64> = BTreeMap::new();
            *counts.entry(format!("{}{}", first.m1, first.m2)).or_insert(0) += 1;
            for _ in 1..shots {
                let r = teleport(&psi, label, &mut rng)?;
                min_fidelity = min_fidelity.min(r.bob_after.fidelity(&psi)?);
                *counts.entry(format!("{}{}", r.m1, r.m2)).or_insert(0) += 1;
            }
            let result = json!({
                "psi": psi.dump_lines(),
                "m1": first.m1,
                "m2": first.m2,
                "probability": first.probability,
                "correction": {"z": first.correction.0, "x": first.correction.1},
                "bob_before": first.bob_before.dump_lines(),
                "bob_after": first.bob_after.dump_lines(),
                "fidelity": first.bob_after.fidelity(&psi)?,
                "min_fidelity": min_fidelity,
                "outcome_counts": counts,
            });
            Ok(Outcome::new(json!({"alpha": alpha, "beta": beta, "label": bit_string(&bits), "shots": shots}), result))
        }
        Command::Superdense { bits } => {
            let b = parse_bits("bits", bits, 2)?;
            let sent = (b[0] as u8, b[1] as u8);
            let shared = bell_state(BellLabel::new(0, 0)?);
            let encoded = superdense_encode(sent, &shared)?;
            let decoded = superdense_decode(&encoded)?;
            let mut out = Outcome::new(
                json!({"bits": bits}),
                json!({
                    "encoded_state": encoded.dump_lines(),
                    "decoded": format!("{}{}", decoded.0, decoded.1),
                    "round_trip": decoded == sent,
                }),
            );
            if decoded != sent {
                out.failure = Some(CliError::Failed(format!("sent {bits}, decoded {}{}", decoded.0, decoded.1)));
            }
            Ok(out)
        }
        Command::Bloch { alpha, beta, weight } => {
            if !(0.0..=1.0).contains(weight) {
                return Err(param(format!("--weight {weight} outside [0, 1]")));
            }
            let psi = StateVector::qubit(parse_complex("alpha", alpha)?, parse_complex("beta", beta)?)?;
            let pure = DensityMatrix::from_state(&psi)?;
            let mixed = DensityMatrix::maximally_mixed(1)?;
            let rho = DensityMatrix::mixture(&[(*weight, &pure), (1.0 - weight, &mixed)])?;
            let r = rho.bloch_vector()?;
            Ok(Outcome::new(
                json!({"alpha": alpha, "beta": beta, "weight": weight}),
                json!({"bloch": r, "norm": r.norm(), "purity": rho.purity(), "pure": (r.norm() - 1.0).abs() < 1e-9}),
            ))
        }
        Command::RevRun { circuit, input } => {
            let c = load_circuit(circuit)?;
            let x = parse_bits("input", input, c.n_wires())?;
            let y = c.run(&x)?;
            let back = c.run_reverse(&y)?;
            let mut state = StateVector::basis(c.n_wires(), x.iter().fold(0, |acc, &b| acc << 1 | b as usize))?;
            for (g, wires) in c.to_quantum() {
                state.apply_gate_mut(&g, &wires)?;
            }
            let y_index = y.iter().fold(0, |acc, &b| acc << 1 | b as usize);
            let quantum_agrees = (state.amplitude(y_index).norm() - 1.0).abs() < 1e-12;
            Ok(Outcome::new(
                json!({"circuit": path_str(circuit), "input": input}),
                json!({
                    "output": bit_string(&y),
                    "steps": c.steps().len(),
                    "reverse_restores_input": back == x,
                    "quantum_agrees": quantum_agrees,
                }),
            ))
        }
        Command::DeutschDecohered { gamma, oracle } => {
            let g = Overlap::new(*gamma)?;
            let f = load_truth_table(oracle)?;
            let (p0, p1) = deutsch_decohered(&f, g)?;
            let (e0, e1) = deutsch_decohered_closed_form(&f, g);
            let p_correct = if f.is_constant() { e0 } else { e1 };
            Ok(Outcome::new(
                json!({"gamma": gamma, "oracle": path_str(oracle), "table": f.to_bit_string()}),
                json!({
                    "P0": p0,
                    "P1": p1,
                    "p_correct": p_correct,
                    "classification_reliable": p_correct >= 1.0 - 1e-9,
                }),
            )
            .calls(1))
        }
        Command::OrderClassical { a, modulus } => {
            let r = order_bruteforce(*a, *modulus)?;
            let phi = if *modulus <= MAX_PHI_ARGUMENT { Some(euler_phi(*modulus)?) } else { None };
            Ok(Outcome::new(
                json!({"a": a, "modulus": modulus}),
                json!({"order": r, "phi": phi, "order_divides_phi": phi.map(|p| p % r == 0)}),
            ))
        }
    }
}

fn grover(
    n: Option<usize>,
    solutions: Option<u64>,
    targets: &[usize],
    oracle: Option<&Path>,
    shots: u64,
    rng: &mut RandomSource,
) -> Result<Outcome, CliError> {
    let f = match (oracle, n) {
        (Some(path), _) => {
            let f = load_truth_table(path)?;
            if let Some(n) = n.filter(|&n| n != f.n_inputs()) {
                return Err(param(format!("--n {n} disagrees with the oracle's {} inputs", f.n_inputs())));
            }
            f
        }
        (None, Some(n)) => {
            if targets.is_empty() {
                return Err(param("give at least one --target or an --oracle file"));
            }
            if n == 0 || n > qsim::truth_table::MAX_ORACLE_INPUTS {
                return Err(param(format!("--n {n} outside [1, {}]", qsim::truth_table::MAX_ORACLE_INPUTS)));
            }
            if let Some(&t) = targets.iter().find(|&&t| t >= 1 << n) {
                return Err(param(format!("--target {t} outside [0, {})", 1u64 << n)));
            }
            TruthTable::marking(n, targets)?
        }
        (None, None) => return Err(param("give --n with --target, or --oracle")),
    };
    let m = solutions.unwrap_or(f.count_ones() as u64);
    let r = grover_search(&f, m, rng)?;
    let mut result = json!(r);
    if shots > 1 {
        let (state, _) = grover_state(&f, r.iterations)?;
        let probs = state.probabilities();
        let hits = (1..shots).filter(|_| f.get(rng.sample_index(&probs))).count() as u64 + r.verified as u64;
        result["sampled"] = json!({"shots": shots, "solutions_found": hits});
    }
    let inputs = json!({
        "n": f.n_inputs(),
        "solutions": m,
        "targets": targets,
        "oracle": oracle.map(path_str),
        "shots": shots,
    });
    let calls = r.oracle_calls;
    let mut out = Outcome::new(inputs, result).calls(calls);
    if !r.verified {
        out.failure = Some(CliError::Failed(format!("measured index {} is not a solution", r.index)));
    }
    Ok(out)
}

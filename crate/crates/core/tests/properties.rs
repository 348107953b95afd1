use proptest::prelude::*;
use qsim::classical::{ReversibleCircuit, Step};
use qsim::gates::{self, StandardGate};
use qsim::numtheory::{continued_fraction, convergents, euler_phi, gcd, modpow, order_bruteforce, recover_order, bit_length};
use qsim::{BlochVector, DensityMatrix, GateMatrix, RandomSource, StateVector, C64};

fn amplitudes(n: usize) -> impl Strategy<Value = Vec<C64>> {
    prop::collection::vec((-1.0f64..1.0, -1.0f64..1.0), 1 << n)
        .prop_filter("nonzero", |v| v.iter().any(|(a, b)| a.abs() + b.abs() > 1e-3))
        .prop_map(|v| v.into_iter().map(|(re, im)| C64::new(re, im)).collect())
}

fn state(n: usize) -> impl Strategy<Value = StateVector> {
    amplitudes(n).prop_map(|a| StateVector::normalized(a).unwrap())
}

fn standard() -> impl Strategy<Value = StandardGate> {
    prop_oneof![
        Just(StandardGate::X),
        Just(StandardGate::Z),
        Just(StandardGate::H),
        Just(StandardGate::SqrtNot),
        (-6.3f64..6.3).prop_map(StandardGate::Ry),
        (-6.3f64..6.3).prop_map(StandardGate::Rz),
    ]
}

fn ball() -> impl Strategy<Value = BlochVector> {
    (-1.0f64..1.0, -1.0f64..1.0, -1.0f64..1.0)
        .prop_filter("inside the ball", |(x, y, z)| x * x + y * y + z * z <= 1.0)
        .prop_map(|(x, y, z)| BlochVector::new(x, y, z))
}

fn step(n: usize) -> impl Strategy<Value = Step> {
    let triple = prop::sample::subsequence((0..n).collect::<Vec<_>>(), 3).prop_shuffle();
    prop_oneof![
        (0..n).prop_map(Step::Not),
        prop::sample::subsequence((0..n).collect::<Vec<_>>(), 2)
            .prop_shuffle()
            .prop_map(|w| Step::Cnot(w[0], w[1])),
        triple.clone().prop_map(|w| Step::Toffoli(w[0], w[1], w[2])),
        triple.prop_map(|w| Step::Fredkin(w[0], w[1], w[2])),
    ]
}

fn bits(x: usize, n: usize) -> Vec<bool> {
    (0..n).map(|i| (x >> (n - 1 - i)) & 1 == 1).collect()
}

fn index(bits: &[bool]) -> usize {
    bits.iter().fold(0, |acc, &b| acc << 1 | b as usize)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn gates_preserve_norm(
        s in state(5),
        ops in prop::collection::vec((standard(), 0usize..5), 1..30),
        cx in prop::collection::vec((0usize..5, 0usize..5), 0..10),
    ) {
        let mut s = s;
        for (g, q) in ops {
            s.apply_gate_mut(&gates::standard_gate(g), &[q]).unwrap();
        }
        for (c, t) in cx.into_iter().filter(|(c, t)| c != t) {
            s.apply_gate_mut(&gates::cnot(), &[c, t]).unwrap();
        }
        prop_assert!((s.norm_sqr() - 1.0).abs() < 1e-10);
    }

    #[test]
    fn bloch_bijection(r in ball()) {
        let rho = DensityMatrix::from_bloch(r);
        let back = DensityMatrix::from_bloch(rho.bloch_vector().unwrap());
        prop_assert!(back.approx_eq(&rho, 1e-10));
    }

    #[test]
    fn pure_states_lie_on_the_sphere(s in state(1), t in state(1), w in 0.01f64..0.99) {
        let a = DensityMatrix::from_state(&s).unwrap();
        prop_assert!((a.bloch_vector().unwrap().norm() - 1.0).abs() < 1e-9);
        prop_assume!(s.fidelity(&t).unwrap() < 1.0 - 1e-6);
        let b = DensityMatrix::from_state(&t).unwrap();
        let mix = DensityMatrix::mixture(&[(w, &a), (1.0 - w, &b)]).unwrap();
        prop_assert!(mix.bloch_vector().unwrap().norm() < 1.0 - 1e-12);
    }

    #[test]
    fn partial_trace_of_product(a in state(2), b in state(1)) {
        let joint = DensityMatrix::from_state(&a.tensor(&b).unwrap()).unwrap();
        let left = joint.partial_trace(&[0, 1]).unwrap();
        let right = joint.partial_trace(&[2]).unwrap();
        prop_assert!(left.approx_eq(&DensityMatrix::from_state(&a).unwrap(), 1e-10));
        prop_assert!(right.approx_eq(&DensityMatrix::from_state(&b).unwrap(), 1e-10));
    }

    #[test]
    fn reversible_circuits_invert(steps in prop::collection::vec(step(5), 0..20), x in 0usize..32) {
        let c = ReversibleCircuit::from_steps(5, steps).unwrap();
        let input = bits(x, 5);
        let out = c.run(&input).unwrap();
        prop_assert_eq!(c.run_reverse(&out).unwrap(), input);
    }

    #[test]
    fn circuits_agree_with_their_quantum_form(steps in prop::collection::vec(step(4), 0..12), x in 0usize..16) {
        let c = ReversibleCircuit::from_steps(4, steps).unwrap();
        let expect = index(&c.run(&bits(x, 4)).unwrap());
        let mut s = StateVector::basis(4, x).unwrap();
        for (g, w) in c.to_quantum() {
            s.apply_gate_mut(&g, &w).unwrap();
        }
        prop_assert!((s.amplitude(expect) - C64::new(1.0, 0.0)).norm() < 1e-12);
    }

    #[test]
    fn circuit_text_round_trips(steps in prop::collection::vec(step(6), 0..15)) {
        let c = ReversibleCircuit::from_steps(6, steps).unwrap();
        let parsed: ReversibleCircuit = c.to_string().parse().unwrap();
        prop_assert_eq!(parsed.steps(), c.steps());
    }

    #[test]
    fn continued_fraction_round_trip(den in 1u64..1_000_000, num_frac in 0.0f64..=1.0) {
        let num = ((den as f64) * num_frac) as u64;
        let cs = convergents(&continued_fraction(num, den).unwrap());
        let last = *cs.last().unwrap();
        let g = gcd(num, den);
        prop_assert_eq!((last.num, last.den), (num / g, den / g));
        for c in cs {
            prop_assert_eq!(gcd(c.num, c.den), 1);
        }
    }

    #[test]
    fn fermat(p in prop::sample::select(vec![3u64, 5, 7, 11, 13, 97, 101, 7919, 65537]), a in 1u64..1_000_000) {
        prop_assume!(a % p != 0);
        prop_assert_eq!(modpow(a, p - 1, p).unwrap(), 1);
    }

    /// With `n ≥ 2·bits(N)` every readout `x = round(k·2^n/r)` with
    /// `gcd(k, r) = 1` recovers `r`.
    #[test]
    fn recovery_from_ideal_readouts(n_mod in 3u64..2000, a_seed in 0u64..1_000_000, k_seed in 0u64..1_000_000) {
        let a = 2 + a_seed % (n_mod - 2);
        prop_assume!(gcd(a, n_mod) == 1);
        let r = order_bruteforce(a, n_mod).unwrap();
        let k = k_seed % r;
        prop_assume!(gcd(k, r) == 1 && r > 1);
        let bits = 2 * bit_length(n_mod) + 1;
        let x = ((k as f64 / r as f64) * (1u64 << bits) as f64).round() as u64 % (1 << bits);
        prop_assert_eq!(recover_order(x, bits, a, n_mod).unwrap(), Some(r));
    }

    #[test]
    fn phase_and_xor_oracles_agree(n in 1usize..=4, seed in any::<u64>()) {
        let f = qsim::TruthTable::from_fn(n, |x| (seed.rotate_left(x as u32) ^ (x as u64)) & 1 == 1).unwrap();
        kickback_equivalence(&f)?;
    }

    #[test]
    fn grover_amplitudes_follow_rotation(n in 2usize..=6, m_seed in any::<u64>(), k in 0u64..12) {
        let mut rng = RandomSource::new(m_seed);
        let len = 1usize << n;
        let m = rng.range_inclusive(1, len as u64 / 2) as usize;
        let mut marked: Vec<usize> = (0..len).collect();
        for i in 0..m {
            let j = rng.range_inclusive(i as u64, len as u64 - 1) as usize;
            marked.swap(i, j);
        }
        let f = qsim::TruthTable::marking(n, &marked[..m]).unwrap();
        let (s, calls) = qsim::algorithms::grover_state(&f, k).unwrap();
        prop_assert_eq!(calls as u64, k);
        let theta = 2.0 * (m as f64 / len as f64).sqrt().asin();
        let angle = (2 * k + 1) as f64 * theta / 2.0;
        let good = angle.sin() / (m as f64).sqrt();
        let bad = angle.cos() / ((len - m) as f64).sqrt();
        for x in 0..len {
            let want = if f.get(x) { good } else { bad };
            prop_assert!((s.amplitude(x) - C64::new(want, 0.0)).norm() < 1e-9);
        }
    }
}

/// `U_f(|x⟩ ⊗ |−⟩) = (−1)^{f(x)} |x⟩ ⊗ |−⟩`, checked on every basis `x` at once
/// via a generic superposition.
fn kickback_equivalence(f: &qsim::TruthTable) -> Result<(), TestCaseError> {
    let n = f.n_inputs();
    let amps: Vec<C64> = (0..1 << n).map(|i| C64::new(1.0 + i as f64, 0.5 * i as f64)).collect();
    let reg = StateVector::normalized(amps).unwrap();
    let minus = StateVector::basis(1, 1).unwrap().apply_gate(&gates::h(), &[0]).unwrap();
    let all: Vec<usize> = (0..=n).collect();
    let lhs = reg.tensor(&minus).unwrap().apply_gate(&gates::xor_oracle(f).unwrap(), &all).unwrap();
    let rhs = reg
        .apply_gate(&gates::phase_oracle(f).unwrap(), &(0..n).collect::<Vec<_>>())
        .unwrap()
        .tensor(&minus)
        .unwrap();
    for (a, b) in lhs.amplitudes().iter().zip(rhs.amplitudes()) {
        prop_assert!((a - b).norm() < 1e-12);
    }
    Ok(())
}

#[test]
fn kickback_exhaustive_small() {
    for n in 1..=2 {
        for code in 0..1usize << (1 << n) {
            let f = qsim::TruthTable::from_fn(n, |x| (code >> x) & 1 == 1).unwrap();
            kickback_equivalence(&f).unwrap();
        }
    }
}

#[test]
fn order_divides_phi() {
    for n in 2..=200u64 {
        let phi = euler_phi(n).unwrap();
        for a in (1..n).filter(|&a| gcd(a, n) == 1) {
            assert_eq!(phi % order_bruteforce(a, n).unwrap(), 0, "a={a} N={n}");
        }
    }
}

#[test]
fn hadamard_conjugated_cnot_reverses_it() {
    let hh = gates::h().kron(&gates::h());
    let lhs = hh.matmul(&gates::cnot()).matmul(&hh);
    let reversed = GateMatrix::permutation(vec![0, 3, 2, 1]);
    assert!(lhs.approx_eq(&reversed, 1e-12));
}

#[test]
fn toffoli_specialisations() {
    let t = ReversibleCircuit::from_steps(3, [Step::Toffoli(0, 1, 2)]).unwrap();
    for x in 0..8 {
        let i = bits(x, 3);
        let o = t.run(&i).unwrap();
        // c = 0 gives AND, a = 1 gives CNOT from b, a = b = 1 gives NOT
        if !i[2] {
            assert_eq!(o[2], i[0] && i[1]);
        }
        if i[0] {
            assert_eq!(o[2], i[2] ^ i[1]);
        }
        if i[0] && i[1] {
            assert_eq!(o[2], !i[2]);
        }
        assert_eq!(&o[..2], &i[..2]);
    }
}

/// Born-rule sampling: outcome frequencies sit within 3σ of the amplitudes.
#[test]
fn sampling_matches_born_rule() {
    let s = StateVector::normalized(vec![C64::new(0.3, 0.0), C64::new(0.0, 0.5), C64::new(0.6, 0.2), C64::new(-0.4, 0.0)])
        .unwrap();
    let probs = s.probabilities();
    let shots = 40_000;
    let mut counts = [0usize; 4];
    let mut rng = RandomSource::new(2024);
    for _ in 0..shots {
        counts[s.measure(&[0, 1], &mut rng).unwrap().value()] += 1;
    }
    for (c, p) in counts.iter().zip(probs) {
        let sigma = (shots as f64 * p * (1.0 - p)).sqrt();
        assert!((*c as f64 - shots as f64 * p).abs() <= 3.0 * sigma, "{c} vs {p}");
    }
}

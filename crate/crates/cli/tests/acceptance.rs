//! Acceptance criteria, one line each. Exits non-zero if any criterion fails.

use std::f64::consts::{PI, SQRT_2};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::Command;
use std::time::{Duration, Instant};

use num_bigint::BigUint;
use num_complex::Complex64;
use rand::Rng;
use supersinglet_core::bell::{
    corr_closed_m1, corr_closed_m2, correlation_bruteforce, maximize_violation, CorrelationSpec,
};
use supersinglet_core::dfsub::{df_basis, df_dimension, encoding_efficiency};
use supersinglet_core::measurement::JointSampler;
use supersinglet_core::protocols::{
    generate_table, inject_fake_positions, ldp_list, ldp_run, ldp_validate, nsp_assign, ssp_run,
    DeclarationOrder, LdpBehaviors, LdpVerdict, Role, SspOutcome, Strategy, TableSource,
};
use supersinglet_core::qcore::{
    invariance_deviation, make_nn_supersinglet, make_pair_singlet, make_qubit_supersinglet,
    random_rotation, random_unitary, rotation_operator,
};
use supersinglet_core::stats::{chi_square_gof, within_binomial};
use supersinglet_core::{Direction, Permutation, SeededRng, StateVector};

type Check = fn() -> Verdict;
type ClosedForm = fn(usize, f64) -> f64;

/// Outcome of one criterion: pass flag plus a short account of what was measured.
struct Verdict {
    pass: bool,
    detail: String,
}

fn verdict(pass: bool, detail: impl Into<String>) -> Verdict {
    Verdict { pass, detail: detail.into() }
}

fn within_time(start: Instant, limit: Duration) -> (bool, String) {
    let t = start.elapsed();
    (t < limit, format!("{:.2}s of {}s", t.as_secs_f64(), limit.as_secs()))
}

fn c1_bell_maxima() -> Verdict {
    let start = Instant::now();
    let cases = [(2, 1, 2.0 * SQRT_2), (3, 1, 2.552), (4, 2, 2.418), (5, 2, 2.424)];
    let mut pass = true;
    let mut parts = Vec::new();
    for (n, m, target) in cases {
        let v = maximize_violation(n, m).unwrap().value;
        let ok = (v - target).abs() <= 1e-3;
        pass &= ok;
        parts.push(format!("N={n},m={m}: {v:.5} (target {target:.4}{})", if ok { "" } else { " MISS" }));
    }
    let (fast, time) = within_time(start, Duration::from_secs(10));
    verdict(pass && fast, format!("{}; {time}", parts.join("; ")))
}

fn c2_asymptotic() -> Verdict {
    let start = Instant::now();
    let m1 = maximize_violation(1000, 1).unwrap().value;
    let m2 = maximize_violation(1000, 2).unwrap().value;
    let pass = (m1 - 2.481).abs() <= 5e-3 && (m2 - 2.481).abs() <= 5e-3;
    let (fast, time) = within_time(start, Duration::from_secs(5));
    verdict(pass && fast, format!("N=1000: m=1 {m1:.5}, m=2 {m2:.5} (target 2.481 ± 5e-3); {time}"))
}

fn c3_closed_vs_bruteforce() -> Verdict {
    let start = Instant::now();
    let mut rng = SeededRng::new(3);
    let mut pass = true;
    let mut parts = Vec::new();
    for n in 2..=5 {
        let state = make_nn_supersinglet(n).unwrap();
        let forms: Vec<(usize, ClosedForm)> = if n >= 4 {
            vec![(1, corr_closed_m1), (2, corr_closed_m2)]
        } else {
            vec![(1, corr_closed_m1)]
        };
        for (m, closed) in forms {
            let mut worst = 0.0f64;
            for _ in 0..50 {
                let (a, b) = (rng.random_range(-PI..PI), rng.random_range(-PI..PI));
                let spec = CorrelationSpec::planar(n, n, m, a, b).unwrap();
                let brute = correlation_bruteforce(&state, &spec).unwrap();
                worst = worst.max((closed(n, b - a) - brute).abs());
            }
            let ok = worst < 1e-9;
            pass &= ok;
            parts.push(format!("N={n},m={m}: {worst:.1e}{}", if ok { "" } else { " MISS" }));
        }
    }
    let (fast, time) = within_time(start, Duration::from_secs(60));
    verdict(pass && fast, format!("max |closed - brute|: {}; {time}", parts.join(", ")))
}

fn expansion(d: usize, prefactor: f64, terms: &[(f64, &str)]) -> StateVector {
    let n = terms[0].1.len();
    let mut amps = vec![Complex64::new(0.0, 0.0); d.pow(n as u32)];
    for &(c, digits) in terms {
        let idx = digits.bytes().fold(0, |acc, b| acc * d + (b - b'0') as usize);
        amps[idx] += Complex64::new(prefactor * c, 0.0);
    }
    StateVector::new(n, d, amps).unwrap()
}

fn signed(s: &str) -> Vec<(f64, &str)> {
    s.split_whitespace()
        .map(|t| (if t.starts_with('-') { -1.0 } else { 1.0 }, &t[1..]))
        .collect()
}

fn c4_states() -> Verdict {
    let mut six = vec![(3.0, "000111")];
    six.extend(signed(
        "-001011 -001101 -001110 -010011 -010101 -010110 +011001 +011010 +011100 \
         -100011 -100101 -100110 +101001 +101010 +101100 +110001 +110010 +110100",
    ));
    six.push((-3.0, "111000"));
    let cases: Vec<(&str, StateVector, StateVector)> = vec![
        ("S2(2)", make_pair_singlet(2).unwrap(), expansion(2, 1.0 / 2f64.sqrt(), &signed("+01 -10"))),
        ("S2(3)", make_pair_singlet(3).unwrap(), expansion(3, 1.0 / 3f64.sqrt(), &signed("+02 -11 +20"))),
        ("S2(4)", make_pair_singlet(4).unwrap(), expansion(4, 0.5, &signed("+03 -12 +21 -30"))),
        (
            "S3(3)",
            make_nn_supersinglet(3).unwrap(),
            expansion(3, 1.0 / 6f64.sqrt(), &signed("+012 -021 -102 +120 +201 -210")),
        ),
        (
            "S4(4)",
            make_nn_supersinglet(4).unwrap(),
            expansion(
                4,
                1.0 / 24f64.sqrt(),
                &signed(
                    "+0123 -0132 -0213 +0231 +0312 -0321 -1023 +1032 +1203 -1230 -1302 +1320 \
                     +2013 -2031 -2103 +2130 +2301 -2310 -3012 +3021 +3102 -3120 -3201 +3210",
                ),
            ),
        ),
        (
            "S4(2)",
            make_qubit_supersinglet(4).unwrap(),
            expansion(
                2,
                1.0 / (2.0 * 3f64.sqrt()),
                &[(2.0, "0011"), (-1.0, "0101"), (-1.0, "0110"), (-1.0, "1001"), (-1.0, "1010"), (2.0, "1100")],
            ),
        ),
        ("S6(2)", make_qubit_supersinglet(6).unwrap(), expansion(2, 1.0 / 6.0, &six)),
    ];
    let mut pass = true;
    let mut worst = 0.0f64;
    let mut worst_norm = 0.0f64;
    let mut misses = Vec::new();
    for (name, built, expected) in &cases {
        let diff = built.max_abs_diff(expected).unwrap();
        let norm = (built.norm_sqr() - 1.0).abs();
        worst = worst.max(diff);
        worst_norm = worst_norm.max(norm);
        if diff >= 1e-12 || norm >= 1e-12 {
            pass = false;
            misses.push(*name);
        }
    }
    verdict(
        pass,
        format!(
            "{} states, max amplitude error {worst:.1e}, max |norm²-1| {worst_norm:.1e}{}",
            cases.len(),
            if misses.is_empty() { String::new() } else { format!(", mismatches {misses:?}") }
        ),
    )
}

fn c5_invariance() -> Verdict {
    let mut rng = SeededRng::new(5);
    let mut worst = 0.0f64;
    let mut count = 0;
    let mut sweep = |state: &StateVector, rotations_only: bool, rng: &mut SeededRng| {
        for _ in 0..100 {
            let d = state.local_dim();
            let u = if rotations_only { random_rotation(d, rng) } else { random_unitary(d, rng) };
            worst = worst.max(invariance_deviation(state, &u).unwrap());
        }
        count += 1;
    };
    // the d-level pair singlet is a spin singlet: its symmetry group is the spin rotations
    for d in 2..=4 {
        sweep(&make_pair_singlet(d).unwrap(), d > 2, &mut rng);
    }
    for n in 2..=7 {
        sweep(&make_nn_supersinglet(n).unwrap(), false, &mut rng);
    }
    for n in (2..=16).step_by(2) {
        sweep(&make_qubit_supersinglet(n).unwrap(), false, &mut rng);
    }
    let control = StateVector::basis(2, &[0, 0]).unwrap();
    let rx = rotation_operator(2, [1.0, 0.0, 0.0], PI / 2.0).unwrap();
    let neg = invariance_deviation(&control, &rx).unwrap();
    verdict(
        worst < 1e-9 && neg > 0.1,
        format!("{count} states × 100 draws, max deviation {worst:.1e}; product-state control {neg:.3}"),
    )
}

fn c6_uniformity() -> Verdict {
    let mut rng = SeededRng::new(6);
    let mut pass = true;
    let mut parts = Vec::new();
    for n in [3, 4] {
        let state = make_nn_supersinglet(n).unwrap();
        let sampler = JointSampler::new(&state, Direction::random(&mut rng)).unwrap();
        let perms = Permutation::all(n).len();
        let mut counts = vec![0u64; perms];
        let mut violations = 0;
        for _ in 0..10_000 {
            let rec = sampler.sample(&mut rng);
            match Permutation::new(rec.outcomes) {
                Ok(p) => counts[p.lex_rank()] += 1,
                Err(_) => violations += 1,
            }
        }
        let test = chi_square_gof(&counts, &vec![1.0 / perms as f64; perms]).unwrap();
        let ok = test.passes(0.001) && violations == 0;
        pass &= ok;
        parts.push(format!("N={n}: p={:.3}, {violations} non-permutations", test.p_value));
    }
    verdict(pass, parts.join("; "))
}

fn c7_soundness() -> Verdict {
    let trials = 10_000u64;
    let mut pass = true;
    let mut parts = Vec::new();

    let root = SeededRng::new(71);
    let mut fake = Vec::new();
    for n in 1..=6usize {
        let rejected = root
            .fork(n as u64)
            .batch(trials as usize, |_, rng| {
                let t = generate_table(3, 60, TableSource::Quantum, rng).unwrap();
                let symbol = rng.random_range(0..3);
                let padded = inject_fake_positions(&ldp_list(t.row(0), symbol), t.row(0), symbol, n, rng);
                !ldp_validate(&padded, t.row(1), symbol).is_accept()
            })
            .into_iter()
            .filter(|&r| r)
            .count() as u64;
        let p = 1.0 - 0.5f64.powi(n as i32);
        pass &= within_binomial(rejected, trials, p, 4.0);
        fake.push(format!("{:.4}/{p:.4}", rejected as f64 / trials as f64));
    }
    parts.push(format!("fake n=1..6 {}", fake.join(" ")));

    // party 1 lies first; r parties (itself and the dealer included) still hold hidden symbols,
    // and the rate is the chance that one given honest party is the one that catches it
    let mut ssp = Vec::new();
    for r in 2..=5usize {
        let mut rng = SeededRng::new(72 + r as u64);
        let t = generate_table(r, trials as usize, TableSource::Quantum, &mut rng).unwrap();
        let mut behaviors = vec![Strategy::Honest; r];
        behaviors[1] = Strategy::DeclareFalseShare;
        let witness = if r > 2 { 2 } else { 0 };
        let rep = ssp_run(&t, &behaviors, &DeclarationOrder::Fixed((1..r).collect()), &mut rng).unwrap();
        let hits = rep
            .rounds
            .iter()
            .filter(|x| matches!(x.outcome, SspOutcome::Aborted { detector, .. } if detector == witness))
            .count() as u64;
        let p = 1.0 / (r - 1) as f64;
        pass &= within_binomial(hits, trials, p, 4.0);
        ssp.push(format!("{:.4}/{p:.4}", hits as f64 / trials as f64));
    }
    parts.push(format!("ssp r=2..5 {}", ssp.join(" ")));

    let mut nsp = Vec::new();
    for n in 2..=6usize {
        let mut rng = SeededRng::new(80 + n as u64);
        let t = generate_table(n, trials as usize, TableSource::Quantum, &mut rng).unwrap();
        let hits = (0..t.len())
            .filter(|&j| nsp_assign(&t, j).unwrap().self_assigned.contains(&0))
            .count() as u64;
        let p = 1.0 / n as f64;
        pass &= within_binomial(hits, trials, p, 4.0);
        nsp.push(format!("{:.4}/{p:.4}", hits as f64 / trials as f64));
    }
    parts.push(format!("nsp N=2..6 {}", nsp.join(" ")));
    verdict(pass, format!("observed/expected: {}", parts.join("; ")))
}

fn c8_liar_detection() -> Verdict {
    let start = Instant::now();
    let run = |behaviors: LdpBehaviors, seed: u64| {
        SeededRng::new(seed).batch(1000, |_, rng| {
            let t = generate_table(3, 3000, TableSource::Quantum, rng).unwrap();
            let message = rng.random_range(0..3u8);
            let behaviors = match behaviors.a {
                Strategy::SendDifferentMessages { .. } => LdpBehaviors {
                    a: Strategy::SendDifferentMessages { to_b: message, to_c: (message + 2) % 3 },
                    ..behaviors
                },
                _ => match behaviors.b {
                    Strategy::ForwardAlteredMessage { .. } => LdpBehaviors {
                        b: Strategy::ForwardAlteredMessage { to_c: (message + 1) % 3 },
                        ..behaviors
                    },
                    _ => behaviors,
                },
            };
            ldp_run(&t, &behaviors, message, rng).unwrap().verdict
        })
    };
    let honest = run(LdpBehaviors::default(), 81);
    let consistent = honest.iter().filter(|v| **v == LdpVerdict::Consistent).count();
    let a = run(
        LdpBehaviors { a: Strategy::SendDifferentMessages { to_b: 0, to_c: 2 }, b: Strategy::Honest },
        82,
    );
    let a_right = a.iter().filter(|v| v.culprit() == Some(Role::A)).count();
    let b = run(
        LdpBehaviors { a: Strategy::Honest, b: Strategy::ForwardAlteredMessage { to_c: 1 } },
        83,
    );
    let b_right = b.iter().filter(|v| v.culprit() == Some(Role::B)).count();
    let (fast, time) = within_time(start, Duration::from_secs(30));
    verdict(
        consistent == 1000 && a_right >= 990 && b_right >= 990 && fast,
        format!("honest consistent {consistent}/1000, A named {a_right}/1000, B named {b_right}/1000; {time}"),
    )
}

fn c9_df() -> Verdict {
    let mut pass = true;
    let mut ranks = Vec::new();
    for n in (2..=12).step_by(2) {
        let basis = df_basis(n).unwrap();
        let d = df_dimension(n).unwrap();
        pass &= d == BigUint::from(basis.rank);
        ranks.push(format!("{}={d}", basis.rank));
        if n <= 8 {
            let r = basis.projection_residual(&make_qubit_supersinglet(n).unwrap()).unwrap();
            pass &= r < 1e-9;
        }
    }
    let e = encoding_efficiency(1000).unwrap();
    let rel = (e.encoded_qubits - e.asymptotic).abs() / e.encoded_qubits;
    pass &= rel < 0.01;
    verdict(
        pass,
        format!(
            "rank=d(N) for N=2..12: {}; residuals < 1e-9 for N≤8; N=1000 log2 d = {:.3} vs {:.3} (rel {rel:.1e})",
            ranks.join(" "),
            e.encoded_qubits,
            e.asymptotic
        ),
    )
}

fn c10_determinism() -> Verdict {
    let bin = env!("CARGO_BIN_EXE_supersinglet");
    let commands: [&[&str]; 13] = [
        &["state", "--family", "nn", "--N", "4"],
        &["invariance", "--family", "qubit", "--N", "6", "--trials", "20"],
        &["bell-max", "--N", "2,3", "--m", "1"],
        &["corr-check", "--trials", "10"],
        &["sample", "--N", "4", "--trials", "200"],
        &["table", "--N", "5", "--L", "50"],
        &["nsp", "--N", "4", "--L", "50"],
        &["ssp", "--N", "5", "--L", "50", "--dishonest", "2"],
        &["ldp", "--liar", "A", "--L", "300", "--trials", "50"],
        &["ldp", "--L", "300", "--format", "csv"],
        &["dtest", "--N", "4", "--L", "200", "--tamper", "0.05", "--trials", "20"],
        &["df", "--N", "2,4,6,1000"],
        &["sample", "--N", "3", "--trials", "50", "--format", "csv"],
    ];
    let mut failures = Vec::new();
    for args in commands {
        let run = || {
            Command::new(bin)
                .args(args)
                .args(["--seed", "2024"])
                .output()
                .expect("binary runs")
        };
        let (a, b) = (run(), run());
        if !a.status.success() || a.stdout.is_empty() || a.stdout != b.stdout {
            failures.push(args.join(" "));
        }
    }
    verdict(
        failures.is_empty(),
        format!("{} invocations run twice{}", commands.len(), if failures.is_empty() {
            ", stdout byte-identical".to_string()
        } else {
            format!(", differing: {failures:?}")
        }),
    )
}

fn main() {
    let criteria: [(&str, Check); 10] = [
        ("bell maxima", c1_bell_maxima),
        ("asymptotic violation", c2_asymptotic),
        ("closed form vs brute force", c3_closed_vs_bruteforce),
        ("state expansions", c4_states),
        ("collective invariance", c5_invariance),
        ("measurement uniformity", c6_uniformity),
        ("protocol soundness rates", c7_soundness),
        ("liar detection verdicts", c8_liar_detection),
        ("decoherence-free subspace", c9_df),
        ("CLI determinism", c10_determinism),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let v = catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|e| {
            let msg = e
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            verdict(false, format!("panicked: {msg}"))
        });
        if !v.pass {
            failed += 1;
        }
        println!("[{}] {:>2}. {name}: {}", if v.pass { "PASS" } else { "FAIL" }, i + 1, v.detail);
    }
    println!("\n{} of {} acceptance criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}

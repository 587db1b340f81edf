use num_complex::Complex64;
use supersinglet_core::qcore::{
    make_nn_supersinglet, make_pair_singlet, make_qubit_supersinglet, total_spin_squared,
    total_spin_z,
};
use supersinglet_core::{Caps, Error, StateVector};

const TOL: f64 = 1e-12;

/// Builds a state from `"±coef|digits⟩"`-style terms, written as `(coef, "digits")`.
fn expansion(d: usize, prefactor: f64, terms: &[(f64, &str)]) -> StateVector {
    let n = terms[0].1.len();
    let mut amps = vec![Complex64::new(0.0, 0.0); d.pow(n as u32)];
    for &(c, digits) in terms {
        let idx = digits
            .chars()
            .fold(0, |acc, ch| acc * d + ch.to_digit(10).unwrap() as usize);
        amps[idx] += Complex64::new(prefactor * c, 0.0);
    }
    StateVector::new(n, d, amps).unwrap()
}

/// Parses `"+0123 -0132 ..."`.
fn signed_terms(s: &str) -> Vec<(f64, &str)> {
    s.split_whitespace()
        .map(|t| {
            let (sign, digits) = t.split_at(1);
            (if sign == "-" { -1.0 } else { 1.0 }, digits)
        })
        .collect()
}

fn assert_matches(built: &StateVector, expected: &StateVector) {
    let diff = built.max_abs_diff(expected).unwrap();
    assert!(diff < TOL, "max amplitude difference {diff:e}");
    assert!((built.norm_sqr() - 1.0).abs() < TOL);
}

#[test]
fn pair_singlets() {
    let r2 = 1.0 / 2f64.sqrt();
    assert_matches(
        &make_pair_singlet(2).unwrap(),
        &expansion(2, r2, &signed_terms("+01 -10")),
    );
    assert_matches(
        &make_pair_singlet(3).unwrap(),
        &expansion(3, 1.0 / 3f64.sqrt(), &signed_terms("+02 -11 +20")),
    );
    assert_matches(
        &make_pair_singlet(4).unwrap(),
        &expansion(4, 0.5, &signed_terms("+03 -12 +21 -30")),
    );
}

#[test]
fn three_site_three_level() {
    let expected = expansion(3, 1.0 / 6f64.sqrt(), &signed_terms("+012 -021 -102 +120 +201 -210"));
    assert_matches(&make_nn_supersinglet(3).unwrap(), &expected);
}

#[test]
fn four_site_four_level() {
    let terms = signed_terms(
        "+0123 -0132 -0213 +0231 +0312 -0321 -1023 +1032 +1203 -1230 -1302 +1320 \
         +2013 -2031 -2103 +2130 +2301 -2310 -3012 +3021 +3102 -3120 -3201 +3210",
    );
    assert_eq!(terms.len(), 24);
    assert_matches(&make_nn_supersinglet(4).unwrap(), &expansion(4, 1.0 / 24f64.sqrt(), &terms));
}

#[test]
fn four_qubits() {
    let terms = [
        (2.0, "0011"),
        (-1.0, "0101"),
        (-1.0, "0110"),
        (-1.0, "1001"),
        (-1.0, "1010"),
        (2.0, "1100"),
    ];
    let expected = expansion(2, 1.0 / (2.0 * 3f64.sqrt()), &terms);
    assert_matches(&make_qubit_supersinglet(4).unwrap(), &expected);
}

#[test]
fn six_qubits() {
    let mut terms = vec![(3.0, "000111")];
    terms.extend(signed_terms(
        "-001011 -001101 -001110 -010011 -010101 -010110 +011001 +011010 +011100 \
         -100011 -100101 -100110 +101001 +101010 +101100 +110001 +110010 +110100",
    ));
    terms.push((-3.0, "111000"));
    assert_eq!(terms.len(), 20);
    assert_matches(&make_qubit_supersinglet(6).unwrap(), &expansion(2, 1.0 / 6.0, &terms));
}

#[test]
fn two_site_families_coincide() {
    let a = make_pair_singlet(2).unwrap();
    let b = make_nn_supersinglet(2).unwrap();
    let c = make_qubit_supersinglet(2).unwrap();
    assert_eq!(a, b);
    assert_eq!(b, c);
}

#[test]
fn every_constructor_is_normalized() {
    for d in 2..=8 {
        assert!((make_pair_singlet(d).unwrap().norm_sqr() - 1.0).abs() < TOL);
    }
    for n in 2..=7 {
        assert!((make_nn_supersinglet(n).unwrap().norm_sqr() - 1.0).abs() < TOL);
    }
    for n in (2..=16).step_by(2) {
        assert!((make_qubit_supersinglet(n).unwrap().norm_sqr() - 1.0).abs() < TOL);
    }
}

#[test]
fn antisymmetric_under_any_swap() {
    for n in 2..=5 {
        let s = make_nn_supersinglet(n).unwrap();
        let neg = s.scale(Complex64::new(-1.0, 0.0));
        for a in 0..n {
            for b in a + 1..n {
                assert_eq!(s.swap_sites(a, b).unwrap(), neg, "N={n} swap ({a},{b})");
            }
        }
    }
}

#[test]
fn nn_support_is_the_permutations() {
    for n in 2..=5 {
        let s = make_nn_supersinglet(n).unwrap();
        let nonzero = s.amplitudes().iter().filter(|a| a.norm() > 0.0).count();
        let fact: usize = (1..=n).product();
        assert_eq!(nonzero, fact);
        let mag = 1.0 / (fact as f64).sqrt();
        assert!(s
            .amplitudes()
            .iter()
            .filter(|a| a.norm() > 0.0)
            .all(|a| (a.norm() - mag).abs() < TOL));
    }
}

fn max_norm(s: &StateVector) -> f64 {
    s.amplitudes().iter().map(|a| a.norm()).fold(0.0, f64::max)
}

#[test]
fn total_spin_vanishes() {
    let mut states = vec![];
    for d in 2..=5 {
        states.push(make_pair_singlet(d).unwrap());
    }
    for n in 2..=5 {
        states.push(make_nn_supersinglet(n).unwrap());
    }
    for n in (2..=10).step_by(2) {
        states.push(make_qubit_supersinglet(n).unwrap());
    }
    for s in &states {
        assert!(max_norm(&total_spin_z(s).unwrap()) < 1e-10);
        assert!(max_norm(&total_spin_squared(s).unwrap()) < 1e-9);
    }
}

#[test]
fn caps_produce_resource_errors() {
    match make_nn_supersinglet(8) {
        Err(Error::ResourceLimit { required, .. }) => assert!(required.contains("16777216")),
        other => panic!("{other:?}"),
    }
    assert!(matches!(make_qubit_supersinglet(18), Err(Error::ResourceLimit { .. })));
    assert!(matches!(make_qubit_supersinglet(5), Err(Error::InvalidInput(_))));
    assert!(matches!(make_pair_singlet(1), Err(Error::InvalidInput(_))));
    let caps = Caps::default();
    assert_eq!((caps.nn_max, caps.qubit_max, caps.df_max), (7, 16, 12));
}

#[test]
fn json_round_trip() {
    let s = make_nn_supersinglet(3).unwrap();
    let json = serde_json::to_value(&s).unwrap();
    assert_eq!(json["num_sites"], 3);
    assert_eq!(json["local_dim"], 3);
    assert_eq!(json["amplitudes"].as_array().unwrap().len(), 27);
    assert_eq!(json["amplitudes"][5], serde_json::json!([1.0 / 6f64.sqrt(), 0.0]));
    let back: StateVector = serde_json::from_value(json).unwrap();
    assert_eq!(back, s);
}

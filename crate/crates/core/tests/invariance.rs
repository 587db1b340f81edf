use nalgebra::DMatrix;
use num_complex::Complex64;
use supersinglet_core::dfsub::df_basis;
use supersinglet_core::qcore::{
    apply_collective, invariance_check, invariance_deviation, make_nn_supersinglet,
    make_pair_singlet, make_qubit_supersinglet, random_rotation, random_special_unitary,
    random_unitary, rotation_operator,
};
use supersinglet_core::{LocalOperator, SeededRng, StateVector};

const UNITARIES: usize = 100;

fn sweep(state: &StateVector, seed: u64) -> f64 {
    let mut rng = SeededRng::new(seed);
    (0..UNITARIES)
        .map(|_| {
            let u = random_unitary(state.local_dim(), &mut rng);
            invariance_deviation(state, &u).unwrap()
        })
        .fold(0.0, f64::max)
}

#[test]
fn pair_singlets_are_bilaterally_invariant() {
    let worst = sweep(&make_pair_singlet(2).unwrap(), 2);
    assert!(worst < 1e-9, "{worst:e}");
    // for d > 2 the symmetry group is the spin rotations, not all of U(d)
    let mut rng = SeededRng::new(12);
    for d in 2..=6 {
        let s = make_pair_singlet(d).unwrap();
        for _ in 0..UNITARIES {
            let r = random_rotation(d, &mut rng);
            let dev = invariance_deviation(&s, &r).unwrap();
            assert!(dev < 1e-9, "d={d}: {dev:e}");
        }
    }
    let generic = random_unitary(3, &mut rng);
    assert!(invariance_deviation(&make_pair_singlet(3).unwrap(), &generic).unwrap() > 1e-3);
}

#[test]
fn nn_supersinglets_are_invariant_up_to_the_cap() {
    for n in 2..=7 {
        let s = make_nn_supersinglet(n).unwrap();
        let count = if n == 7 { 10 } else { UNITARIES };
        let mut rng = SeededRng::new(100 + n as u64);
        for _ in 0..count {
            let u = random_unitary(n, &mut rng);
            let d = invariance_deviation(&s, &u).unwrap();
            assert!(d < 1e-9, "N={n}: {d:e}");
        }
    }
}

#[test]
fn qubit_supersinglets_are_invariant_up_to_the_cap() {
    for n in (2..=16).step_by(2) {
        let worst = sweep(&make_qubit_supersinglet(n).unwrap(), 200 + n as u64);
        assert!(worst < 1e-9, "N={n}: {worst:e}");
    }
}

#[test]
fn phase_is_the_determinant_power() {
    // U^{⊗N} on the antisymmetric state multiplies it by det U.
    let mut rng = SeededRng::new(3);
    for n in 2..=5 {
        let s = make_nn_supersinglet(n).unwrap();
        for _ in 0..10 {
            let u = random_unitary(n, &mut rng);
            let check = invariance_check(&s, &u).unwrap();
            assert!((check.overlap - u.determinant()).norm() < 1e-9);
        }
    }
    // qubit singlets pick up det(U)^{N/2}
    let s = make_qubit_supersinglet(6).unwrap();
    let u = random_unitary(2, &mut rng);
    let check = invariance_check(&s, &u).unwrap();
    assert!((check.overlap - u.determinant().powu(3)).norm() < 1e-9);
}

#[test]
fn special_unitaries_leave_su3_singlet_unchanged() {
    let s = make_nn_supersinglet(3).unwrap();
    let mut rng = SeededRng::new(9);
    for _ in 0..5 {
        let u = random_special_unitary(3, &mut rng);
        let full: DMatrix<Complex64> = {
            let uu = LocalOperator::from_matrix(u.kron(&u)).unwrap();
            uu.kron(&u)
        };
        let v = nalgebra::DVector::from_column_slice(s.amplitudes());
        let direct = &full * &v;
        let sitewise = apply_collective(&s, &u).unwrap();
        for (a, b) in direct.iter().zip(sitewise.amplitudes()) {
            assert!((a - b).norm() < 1e-12);
        }
        for (a, b) in sitewise.amplitudes().iter().zip(s.amplitudes()) {
            assert!((a - b).norm() < 1e-9);
        }
    }
}

#[test]
fn product_state_is_not_invariant() {
    let s = StateVector::basis(2, &[0, 0]).unwrap();
    let rx = rotation_operator(2, [1.0, 0.0, 0.0], std::f64::consts::FRAC_PI_2).unwrap();
    let d = invariance_deviation(&s, &rx).unwrap();
    assert!(d > 0.1, "{d}");
}

#[test]
fn residual_agrees_with_overlap_formula_away_from_zero() {
    let mut rng = SeededRng::new(21);
    for _ in 0..20 {
        let u = random_unitary(2, &mut rng);
        let v = random_unitary(8, &mut rng);
        let s = StateVector::new(
            3,
            2,
            v.matrix().column(0).iter().copied().collect(),
        )
        .unwrap();
        let check = invariance_check(&s, &u).unwrap();
        let closed = (2.0 - 2.0 * check.overlap.norm()).max(0.0).sqrt();
        assert!((check.deviation - closed).abs() < 1e-7, "{} vs {closed}", check.deviation);
    }
}

#[test]
fn df_span_is_invariant() {
    let mut rng = SeededRng::new(55);
    for n in [4, 6, 8] {
        let basis = df_basis(n).unwrap();
        let combos: Vec<StateVector> = (0..20)
            .map(|_| {
                let mut acc = StateVector::zeros(n, 2).unwrap();
                for v in &basis.vectors {
                    let c = Complex64::new(
                        rand::Rng::random_range(&mut rng, -1.0..1.0),
                        rand::Rng::random_range(&mut rng, -1.0..1.0),
                    );
                    acc = acc.add_scaled(c, v).unwrap();
                }
                acc.normalized().unwrap()
            })
            .collect();
        for _ in 0..20 {
            let u = random_unitary(2, &mut rng);
            for s in basis.vectors.iter().chain(&combos) {
                let d = invariance_deviation(s, &u).unwrap();
                assert!(d < 1e-9, "N={n}: {d:e}");
            }
        }
    }
}

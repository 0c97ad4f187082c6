use std::f64::consts::{FRAC_1_SQRT_2, PI};

use proptest::prelude::*;
use qubit_charts::linalg::{c, cr, CMat2, C64};
use qubit_charts::qubit::{
    commutation_deviation, embed_psi1, gate_commutes_with_embedding, invert_psi1, Gate2, Qubit,
    ORDER_MAX_N, ORDER_TOL,
};
use qubit_charts::sampling::{random_non_special_unitary, random_qubit, random_su2, seeded_rng};

fn qubit() -> impl Strategy<Value = Qubit> {
    any::<u64>().prop_map(|s| random_qubit(&mut seeded_rng(s)))
}

proptest! {
    #[test]
    fn star_is_associative(a in qubit(), b in qubit(), d in qubit()) {
        let lhs = a.star(&b).star(&d);
        let rhs = a.star(&b.star(&d));
        prop_assert!(lhs.distance(&rhs) < 1e-12);
    }

    #[test]
    fn identity_and_inverse_laws(a in qubit()) {
        let e = Qubit::identity();
        prop_assert!(e.star(&a).distance(&a) < 1e-12);
        prop_assert!(a.star(&e).distance(&a) < 1e-12);
        prop_assert!(a.star(&a.star_inverse()).distance(&e) < 1e-12);
        prop_assert!(a.star_inverse().star(&a).distance(&e) < 1e-12);
    }

    #[test]
    fn embedding_is_a_homomorphism(a in qubit(), b in qubit()) {
        let lhs = *embed_psi1(&a.star(&b)).matrix();
        let rhs = *embed_psi1(&a).matrix() * *embed_psi1(&b).matrix();
        prop_assert!(lhs.max_abs_diff(&rhs) < 1e-12);
    }

    #[test]
    fn embedding_is_a_bijection(a in qubit()) {
        let m = embed_psi1(&a);
        prop_assert!(invert_psi1(&m).distance(&a) < 1e-12);
        prop_assert!(embed_psi1(&invert_psi1(&m)).matrix().max_abs_diff(m.matrix()) < 1e-12);
        prop_assert!((m.matrix().det() - cr(1.0)).norm() < 1e-12);
        prop_assert!(m.matrix().unitarity_defect() < 1e-12);
    }

    #[test]
    fn square_matches_closed_form(a in qubit()) {
        let (x0, x1) = (a.x0(), a.x1());
        let want = [x0 * x0 - x1 * x1.conj(), x1 * 2.0 * x0.re];
        let got = a.star_pow(2);
        prop_assert!((got.x0() - want[0]).norm() < 1e-12);
        prop_assert!((got.x1() - want[1]).norm() < 1e-12);
    }

    #[test]
    fn negative_powers_invert(a in qubit(), n in 1i64..40) {
        let p = a.star_pow(n).star(&a.star_pow(-n));
        prop_assert!(p.distance(&Qubit::identity()) < 1e-11);
    }

    #[test]
    fn special_unitary_gates_commute(seed in any::<u64>()) {
        let mut rng = seeded_rng(seed);
        let g = random_su2(&mut rng);
        let x = random_qubit(&mut rng);
        prop_assert!(commutation_deviation(&g, &x) < 1e-10);
    }
}

#[test]
fn powers_stay_on_the_sphere_for_a_million_steps() {
    let x = Qubit::normalized(C64::from_polar(0.6, 1.0), C64::from_polar(0.8, 2f64.sqrt())).unwrap();
    let y = x.star_pow(1_000_000);
    assert!((y.vec().norm() - 1.0).abs() < 1e-10);
}

#[test]
fn orbit_points_are_unit() {
    let x = random_qubit(&mut seeded_rng(11));
    assert!(x.orbit(10_000).iter().all(|q| (q.vec().norm() - 1.0).abs() < 1e-10));
}

#[test]
fn order_table() {
    let cases = [
        (cr(1.0), cr(0.0), 1),
        (cr(-1.0), cr(0.0), 2),
        (cr(0.0), cr(1.0), 4),
        (cr(0.0), cr(-1.0), 4),
    ];
    for (x0, x1, want) in cases {
        assert_eq!(Qubit::new(x0, x1).unwrap().order(ORDER_MAX_N, ORDER_TOL), Some(want));
    }
    for (e0, e1) in [(1.0, 1.0), (1.0, -1.0), (-1.0, 1.0), (-1.0, -1.0)] {
        let x = Qubit::new(cr(e0 * FRAC_1_SQRT_2), cr(e1 * FRAC_1_SQRT_2)).unwrap();
        assert_eq!(x.order(ORDER_MAX_N, ORDER_TOL), Some(8));
    }
}

#[test]
fn commutation_dichotomy() {
    let mut rng = seeded_rng(2024);
    for i in 0..100 {
        let g = random_su2(&mut rng);
        let chk = gate_commutes_with_embedding(&g, 100, 1e-10, i);
        assert!(chk.commutes, "deviation {}", chk.max_deviation);
    }
    for i in 0..100 {
        let g = random_non_special_unitary(&mut rng);
        assert!((g.det() - cr(1.0)).norm() > 0.1);
        let chk = gate_commutes_with_embedding(&g, 100, 1e-10, i);
        assert!(!chk.commutes);
        assert!(chk.max_deviation > 1e-3);
    }
}

#[test]
fn phase_gate_fails_to_commute() {
    let g = Gate2::try_new(CMat2::from_diagonal([cr(1.0), C64::from_polar(1.0, PI / 3.0)])).unwrap();
    let x = Qubit::normalized(c(0.6, 0.0), c(0.0, 0.8)).unwrap();
    assert!(commutation_deviation(&g, &x) > 1e-3);
}

use proptest::prelude::*;
use qubit_charts::charts::{x_p_family, Quregister2};
use qubit_charts::density::{
    binary_entropy, entropy_closed_form, lambda_pair, mix, partial_trace, reduced_entropy, rho1,
    rho2, von_neumann_entropy, MixedState, Subsystem,
};
use qubit_charts::linalg::{cr, hermitian_eigenvalues, kron_mat, CMat2, CVec4};
use qubit_charts::sampling::{random_qubit, random_quregister, seeded_rng};

fn state() -> impl Strategy<Value = Quregister2> {
    any::<u64>().prop_map(|s| random_quregister(&mut seeded_rng(s)))
}

/// The reduced matrices written out symbol by symbol from the coordinates.
fn reduced_by_hand(x: &Quregister2) -> (CMat2, CMat2) {
    let [x0, x1, x2, x3] = x.vec().0;
    let mut first = CMat2::zeros();
    first[(0, 0)] = cr(x0.norm_sqr() + x1.norm_sqr());
    first[(0, 1)] = x0 * x2.conj() + x1 * x3.conj();
    first[(1, 0)] = x2 * x0.conj() + x3 * x1.conj();
    first[(1, 1)] = cr(x2.norm_sqr() + x3.norm_sqr());
    let mut second = CMat2::zeros();
    second[(0, 0)] = cr(x0.norm_sqr() + x2.norm_sqr());
    second[(0, 1)] = x0 * x1.conj() + x2 * x3.conj();
    second[(1, 0)] = x1 * x0.conj() + x3 * x2.conj();
    second[(1, 1)] = cr(x1.norm_sqr() + x3.norm_sqr());
    (first, second)
}

proptest! {
    #[test]
    fn rho2_is_a_projector(x in state()) {
        let m = *rho2(&x).matrix();
        prop_assert!(m.hermitian_defect() < 1e-10);
        prop_assert!((m.trace() - cr(1.0)).norm() < 1e-10);
        prop_assert!((m * m).max_abs_diff(&m) < 1e-10);
    }

    #[test]
    fn rho_of_product_is_product_of_rhos(s in any::<u64>()) {
        let mut rng = seeded_rng(s);
        let (a, b) = (random_qubit(&mut rng), random_qubit(&mut rng));
        let lhs = rho2(&Quregister2::from_product(&a, &b));
        let rhs = kron_mat(rho1(&a).matrix(), rho1(&b).matrix());
        prop_assert!(lhs.matrix().max_abs_diff(&rhs) < 1e-13);
    }

    #[test]
    fn entrywise_partial_traces_match_hand_expansion(x in state()) {
        let (first, second) = reduced_by_hand(&x);
        let m = rho2(&x);
        prop_assert!(partial_trace(&m, Subsystem::First).matrix().max_abs_diff(&first) < 1e-13);
        prop_assert!(partial_trace(&m, Subsystem::Second).matrix().max_abs_diff(&second) < 1e-13);
    }

    #[test]
    fn partial_trace_is_linear(seed in any::<u64>(), w in 0.0f64..=1.0) {
        let mut rng = seeded_rng(seed);
        let (x, y) = (random_quregister(&mut rng), random_quregister(&mut rng));
        let m = mix(&MixedState::try_new(vec![(w, x), (1.0 - w, y)]).unwrap());
        for s in [Subsystem::First, Subsystem::Second] {
            let lhs = *partial_trace(&m, s).matrix();
            let rhs = partial_trace(&rho2(&x), s).matrix().scale(cr(w))
                + partial_trace(&rho2(&y), s).matrix().scale(cr(1.0 - w));
            prop_assert!(lhs.max_abs_diff(&rhs) < 1e-12);
        }
    }

    #[test]
    fn marginals_share_their_spectrum(x in state()) {
        let m = rho2(&x);
        let a = hermitian_eigenvalues(partial_trace(&m, Subsystem::First).matrix()).unwrap();
        let b = hermitian_eigenvalues(partial_trace(&m, Subsystem::Second).matrix()).unwrap();
        let (l0, l1) = lambda_pair(&x);
        for ev in [a, b] {
            prop_assert!((ev[0] - l0).abs() < 1e-10);
            prop_assert!((ev[1] - l1).abs() < 1e-10);
        }
        prop_assert!((l0 + l1 - 1.0).abs() < 1e-12);
    }

    #[test]
    fn entropies_agree(x in state()) {
        let m = rho2(&x);
        let e0 = reduced_entropy(&m, Subsystem::First);
        let e1 = reduced_entropy(&m, Subsystem::Second);
        prop_assert!((e0 - e1).abs() < 1e-10);
        prop_assert!((entropy_closed_form(&x) - e0).abs() < 1e-10);
        prop_assert!(von_neumann_entropy(&m) < 1e-9);
    }

    #[test]
    fn x_p_reduced_entropy_is_shannon(p in 0.0f64..=1.0) {
        let m = rho2(&x_p_family(p).unwrap());
        prop_assert!((reduced_entropy(&m, Subsystem::First) - binary_entropy(p)).abs() < 1e-12);
    }
}

#[test]
fn x_p_density_eigenstructure() {
    for p in [0.1, 0.5, 0.9] {
        let x = x_p_family(p).unwrap();
        let m = *rho2(&x).matrix();
        let ev = hermitian_eigenvalues(&m).unwrap();
        for (g, w) in ev.iter().zip([0.0, 0.0, 0.0, 1.0]) {
            assert!((g - w).abs() < 1e-10);
        }
        assert!(m.matvec(x.vec()).max_abs_diff(x.vec()) < 1e-10);
        let y = CVec4::from_array([cr((1.0 - p).sqrt()), cr(0.0), cr(0.0), cr(-p.sqrt())]);
        assert!(m.matvec(&y).norm() < 1e-10);
    }
}

#[test]
fn x_p_first_marginal_is_diagonal() {
    for i in 0..=10 {
        let p = i as f64 / 10.0;
        let r = partial_trace(&rho2(&x_p_family(p).unwrap()), Subsystem::First);
        let want = CMat2::from_diagonal([cr(p), cr(1.0 - p)]);
        assert!(r.matrix().max_abs_diff(&want) < 1e-13);
    }
}

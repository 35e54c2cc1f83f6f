//! Property tests for the module-level invariants: inversion consistency,
//! deduplication, evaluation symmetry, and the spectrum/feasibility link.

use proptest::prelude::*;

use turan_core::extremal::{build_extremal, fourier_alpha, phi_eval};
use turan_core::problems::{make_lp1_full, BVector, SVector};
use turan_core::{
    b_from_s, make_instance, make_lp1, make_lp2, s_from_b, solve, DEFAULT_TOL,
};

/// Small coprime instances with p >= 2 so the b vector is nonempty.
fn small_instances() -> impl Strategy<Value = (u32, u32)> {
    (2u32..=5, 4u32..=16).prop_filter("coprime, 2p <= q", |&(p, q)| {
        make_instance(p, q).is_ok()
    })
}

fn b_entries(len: usize) -> impl Strategy<Value = Vec<f64>> {
    prop::collection::vec(-0.35f64..0.35, len)
}

proptest! {
    #[test]
    fn inversion_is_identity_on_feasible_b(
        (p, q) in small_instances(),
        raw in b_entries(4),
    ) {
        let inst = make_instance(p, q).unwrap();
        let b = BVector::new(&inst, raw[..p as usize - 1].to_vec()).unwrap();
        prop_assume!(b.is_feasible(&inst, 0.0));
        let sym = s_from_b(&inst, &b, DEFAULT_TOL).unwrap();
        let s = SVector::new(&inst, sym, 1e-9).unwrap();
        let (back, _) = b_from_s(&inst, &s, 1e-9).unwrap();
        for (x, y) in b.b.iter().zip(back.b.iter()) {
            prop_assert!((x - y).abs() < 1e-12);
        }
    }

    #[test]
    fn dedup_does_not_change_optimum((p, q) in small_instances()) {
        let inst = make_instance(p, q).unwrap();
        let dedup = solve(&make_lp1(&inst), DEFAULT_TOL).unwrap();
        let full = solve(&make_lp1_full(&inst), DEFAULT_TOL).unwrap();
        prop_assert!((dedup.value - full.value).abs() < 1e-10);
    }

    #[test]
    fn lp1_optimum_is_feasible((p, q) in small_instances()) {
        let inst = make_instance(p, q).unwrap();
        let sol = solve(&make_lp1(&inst), DEFAULT_TOL).unwrap();
        prop_assert!(sol.max_residual <= 1e-9);
    }

    #[test]
    fn phi_is_even_and_periodic(
        (p, q) in small_instances(),
        raw in b_entries(4),
        x in -3.0f64..3.0,
    ) {
        let inst = make_instance(p, q).unwrap();
        let b = BVector::new(&inst, raw[..p as usize - 1].to_vec()).unwrap();
        prop_assume!(b.is_feasible(&inst, 0.0));
        let f = build_extremal(&inst, &b).unwrap();
        prop_assert!((phi_eval(&f, x) - phi_eval(&f, -x)).abs() <= 1e-12);
        prop_assert!((phi_eval(&f, x) - phi_eval(&f, x + 1.0)).abs() <= 1e-12);
    }

    #[test]
    fn spectrum_sign_matches_residue_polynomial(
        (p, q) in small_instances(),
        raw in b_entries(4),
    ) {
        // min_n alpha_n >= -tol exactly when the residue polynomial is
        // >= -tol at every r: the sin^2 prefactor is nonnegative and
        // vanishes only at multiples of q
        let inst = make_instance(p, q).unwrap();
        let b = BVector::new(&inst, raw[..p as usize - 1].to_vec()).unwrap();
        let poly_ok = b.is_feasible(&inst, 0.0);

        let heights: Vec<f64> = std::iter::once(1.0)
            .chain(b.b.iter().copied())
            .chain(std::iter::once(0.0))
            .collect();
        let f = turan_core::extremal::from_breakpoints(q, heights);
        let alpha_ok = (0..=10 * q).all(|n| fourier_alpha(&f, n) >= 0.0);
        prop_assert_eq!(poly_ok, alpha_ok);
    }

    #[test]
    fn lp2_value_never_below_stechkin((p, q) in small_instances()) {
        // the triangle is always admissible, so A(p/q) >= h
        let inst = make_instance(p, q).unwrap();
        let sol = solve(&make_lp2(&inst), DEFAULT_TOL).unwrap();
        prop_assert!(sol.value >= inst.h() - 1e-10);
    }
}

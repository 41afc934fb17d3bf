//! Randomized invariants over the expression layer: printing round-trips
//! through the parser, power series honor the exp/log inverse pair, and the
//! symbolic derivative agrees with finite differences wherever the finite
//! difference itself has demonstrably converged.

use disknorm::expr::{self, Expr};
use disknorm::series::taylor_expand;
use num_complex::Complex64;
use proptest::prelude::*;

/// Random expression trees built through the public constructors, so every
/// generated tree is already in the normal form the constructors enforce
/// (constants folded, identity operands dropped).
fn arb_expr() -> impl Strategy<Value = Expr> {
    let leaf = prop_oneof![
        Just(expr::z()),
        (-1.0f64..1.0, -1.0f64..1.0).prop_map(|(re, im)| expr::con(Complex64::new(re, im))),
    ];
    leaf.prop_recursive(3, 24, 2, |inner| {
        prop_oneof![
            (inner.clone(), inner.clone()).prop_map(|(a, b)| expr::add(a, b)),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| expr::sub(a, b)),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| expr::mul(a, b)),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| expr::div(a, b)),
            inner.clone().prop_map(expr::neg),
            (inner.clone(), 2i32..5).prop_map(|(a, n)| expr::ipow(a, n)),
            (inner.clone(), 0.25f64..2.5).prop_map(|(a, p)| expr::rpow(a, p)),
            inner.clone().prop_map(expr::exp),
            inner.prop_map(expr::log),
        ]
    })
}

proptest! {
    /// Printing and reparsing reproduces the tree node for node. The printer
    /// chooses parentheses from operator precedence, and both the generator
    /// and the parser build through the same normalizing constructors, so any
    /// mismatch here is a precedence or tokenization bug.
    #[test]
    fn printed_form_reparses_to_the_same_tree(e in arb_expr()) {
        let text = e.to_string();
        let back = disknorm::parse(&text)
            .unwrap_or_else(|err| panic!("reparse of {text:?} failed: {err}"));
        prop_assert_eq!(&back, &e, "display {} lost structure", text);
    }

    /// exp(log(w)) recovers w as a power series whenever w(0) is away from
    /// the branch point. Exercises series composition, not just evaluation.
    #[test]
    fn series_exp_undoes_series_log(
        (are, aim) in (-0.45f64..0.45, -0.45f64..0.45),
        (bre, bim) in (-0.45f64..0.45, -0.45f64..0.45),
    ) {
        let w = expr::add(
            expr::real(1.0),
            expr::add(
                expr::mul(expr::con(Complex64::new(are, aim)), expr::z()),
                expr::mul(expr::con(Complex64::new(bre, bim)), expr::ipow(expr::z(), 2)),
            ),
        );
        let direct = taylor_expand(&w, 16).unwrap();
        let round_trip = taylor_expand(&expr::exp(expr::log(w)), 16).unwrap();
        for n in 0..=16 {
            let diff = (round_trip.coeff(n) - direct.coeff(n)).norm();
            prop_assert!(diff <= 1e-12, "coefficient {n} drifted by {diff:e}");
        }
    }

    /// The symbolic derivative matches a central difference at random points.
    /// Random trees can have enormous higher derivatives, so instead of a
    /// fixed tolerance the check compares two step sizes and only trusts the
    /// finite difference to the accuracy it demonstrates for itself: halving
    /// the step must bring it at least as close to the symbolic value as the
    /// two approximations are to each other (up to the usual factor four for
    /// a second order scheme).
    #[test]
    fn symbolic_derivative_tracks_finite_differences(
        e in arb_expr(),
        (pre, pim) in (-0.6f64..0.6, -0.6f64..0.6),
    ) {
        let de = expr::differentiate(&e);
        let zv = Complex64::new(pre, pim);
        let exact = match de.eval(zv) {
            Ok(v) if v.is_finite() => v,
            _ => return Ok(()),
        };
        let h = 1e-5;
        let central = |step: f64| -> Option<Complex64> {
            let hi = e.eval(zv + Complex64::new(step, 0.0)).ok()?;
            let lo = e.eval(zv - Complex64::new(step, 0.0)).ok()?;
            let v = (hi - lo) / (2.0 * step);
            v.is_finite().then_some(v)
        };
        let (Some(coarse), Some(fine)) = (central(h), central(h / 2.0)) else {
            return Ok(());
        };
        let err = (fine - exact).norm();
        let self_err = (fine - coarse).norm();
        let gate = (4.0 * self_err).max(1e-9 * exact.norm().max(1.0));
        prop_assert!(
            err <= gate,
            "derivative of {e} at {zv}: symbolic {exact}, fd {fine}, gap {err:e} > gate {gate:e}"
        );
    }
}

//! Truncated Taylor expansions about the origin.
//!
//! A series of order `N` stores the `N + 1` coefficients of `c_0 + c_1 z +
//! ... + c_N z^N`. Arithmetic between two series truncates to the smaller of
//! the two orders; `exp`, `log`, and powers preserve the operand order.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::expr::Expr;
use crate::tol::SERIES_ZERO;

#[derive(Clone, Debug, PartialEq)]
pub struct TaylorSeries {
    coeffs: Vec<Complex64>,
}

impl TaylorSeries {
    pub fn new(coeffs: Vec<Complex64>) -> Self {
        assert!(!coeffs.is_empty(), "a series has at least its constant term");
        TaylorSeries { coeffs }
    }

    pub fn constant(c: Complex64, order: usize) -> Self {
        let mut coeffs = vec![Complex64::ZERO; order + 1];
        coeffs[0] = c;
        TaylorSeries { coeffs }
    }

    /// The series of `z` itself, truncated to `order`.
    pub fn variable(order: usize) -> Self {
        let mut coeffs = vec![Complex64::ZERO; order + 1];
        if order >= 1 {
            coeffs[1] = Complex64::ONE;
        }
        TaylorSeries { coeffs }
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, n: usize) -> Complex64 {
        self.coeffs.get(n).copied().unwrap_or(Complex64::ZERO)
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    pub fn truncate(&self, order: usize) -> Self {
        let n = order.min(self.order());
        TaylorSeries::new(self.coeffs[..=n].to_vec())
    }

    fn align(a: &Self, b: &Self) -> usize {
        a.order().min(b.order())
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = Self::align(self, other);
        TaylorSeries::new((0..=n).map(|k| self.coeff(k) + other.coeff(k)).collect())
    }

    pub fn sub(&self, other: &Self) -> Self {
        let n = Self::align(self, other);
        TaylorSeries::new((0..=n).map(|k| self.coeff(k) - other.coeff(k)).collect())
    }

    pub fn mul(&self, other: &Self) -> Self {
        let n = Self::align(self, other);
        let mut out = vec![Complex64::ZERO; n + 1];
        for (k, slot) in out.iter_mut().enumerate() {
            let mut acc = Complex64::ZERO;
            for j in 0..=k {
                acc += self.coeff(j) * other.coeff(k - j);
            }
            *slot = acc;
        }
        TaylorSeries::new(out)
    }

    pub fn scale(&self, c: Complex64) -> Self {
        TaylorSeries::new(self.coeffs.iter().map(|&a| a * c).collect())
    }

    /// Long division; the divisor needs a nonzero constant term.
    pub fn div(&self, other: &Self) -> Result<Self> {
        let d0 = other.coeff(0);
        if d0.norm() < SERIES_ZERO {
            return Err(Error::NotAnalyticAtZero {
                reason: "division by a series with zero constant term".into(),
            });
        }
        let n = Self::align(self, other);
        let mut q = vec![Complex64::ZERO; n + 1];
        for k in 0..=n {
            let mut acc = self.coeff(k);
            for (j, qj) in q.iter().enumerate().take(k) {
                acc -= qj * other.coeff(k - j);
            }
            q[k] = acc / d0;
        }
        Ok(TaylorSeries::new(q))
    }

    /// Division that first cancels a common factor `z^v` shared by numerator
    /// and denominator. Supports integrands like `omega h'/h` when `h` has a
    /// zero at the origin that the numerator matches.
    pub fn div_cancel(&self, other: &Self) -> Result<Self> {
        let scale = other
            .coeffs
            .iter()
            .map(|c| c.norm())
            .fold(0.0f64, f64::max)
            .max(1.0);
        let v = other
            .coeffs
            .iter()
            .position(|c| c.norm() > SERIES_ZERO * scale)
            .ok_or_else(|| Error::NotAnalyticAtZero {
                reason: "division by a numerically zero series".into(),
            })?;
        if v == 0 {
            return self.div(other);
        }
        let nscale = self
            .coeffs
            .iter()
            .map(|c| c.norm())
            .fold(0.0f64, f64::max)
            .max(1.0);
        for k in 0..v.min(self.coeffs.len()) {
            if self.coeff(k).norm() > SERIES_ZERO * nscale {
                return Err(Error::NotAnalyticAtZero {
                    reason: format!(
                        "denominator vanishes to order {v} at 0 but the numerator does not"
                    ),
                });
            }
        }
        let num = TaylorSeries::new(self.coeffs.iter().skip(v).copied().collect::<Vec<_>>());
        let den = TaylorSeries::new(other.coeffs.iter().skip(v).copied().collect::<Vec<_>>());
        num.div(&den)
    }

    /// Termwise derivative; drops the order by one.
    pub fn derivative(&self) -> Self {
        if self.order() == 0 {
            return TaylorSeries::constant(Complex64::ZERO, 0);
        }
        TaylorSeries::new(
            (1..=self.order())
                .map(|k| self.coeff(k) * Complex64::new(k as f64, 0.0))
                .collect(),
        )
    }

    /// Termwise antiderivative with zero constant term; raises the order by
    /// one.
    pub fn integrate(&self) -> Self {
        let mut out = vec![Complex64::ZERO; self.coeffs.len() + 1];
        for (k, &c) in self.coeffs.iter().enumerate() {
            out[k + 1] = c / Complex64::new((k + 1) as f64, 0.0);
        }
        TaylorSeries::new(out)
    }

    /// Series exponential via the first-order recurrence
    /// `(n+1) p_{n+1} = sum_k (k+1) s_{k+1} p_{n-k}`.
    pub fn exp(&self) -> Self {
        let n = self.order();
        let mut p = vec![Complex64::ZERO; n + 1];
        p[0] = self.coeff(0).exp();
        for m in 1..=n {
            let mut acc = Complex64::ZERO;
            for k in 1..=m {
                acc += Complex64::new(k as f64, 0.0) * self.coeff(k) * p[m - k];
            }
            p[m] = acc / Complex64::new(m as f64, 0.0);
        }
        TaylorSeries::new(p)
    }

    /// Principal-branch series logarithm: `log c_0 + integral of s'/s`.
    pub fn log(&self) -> Result<Self> {
        let c0 = self.coeff(0);
        if c0.norm() < SERIES_ZERO {
            return Err(Error::NotAnalyticAtZero {
                reason: "logarithm of a series with zero constant term".into(),
            });
        }
        if self.order() == 0 {
            return Ok(TaylorSeries::constant(c0.ln(), 0));
        }
        let body = self.truncate(self.order() - 1);
        let mut out = self.derivative().div(&body)?.integrate();
        out.coeffs[0] = c0.ln();
        Ok(out)
    }

    /// Integer power by repeated multiplication (inverting first when the
    /// exponent is negative).
    pub fn powi(&self, n: i32) -> Result<Self> {
        let order = self.order();
        if n == 0 {
            return Ok(TaylorSeries::constant(Complex64::ONE, order));
        }
        let base = if n < 0 {
            TaylorSeries::constant(Complex64::ONE, order).div(self)?
        } else {
            self.clone()
        };
        let mut acc = TaylorSeries::constant(Complex64::ONE, order);
        for _ in 0..n.unsigned_abs() {
            acc = acc.mul(&base);
        }
        Ok(acc)
    }

    /// Real power through `exp(p log s)`, principal branch at the constant
    /// term.
    pub fn powf(&self, p: f64) -> Result<Self> {
        Ok(self.log()?.scale(Complex64::new(p, 0.0)).exp())
    }

    /// Horner evaluation of the truncated polynomial.
    pub fn eval_at(&self, zv: Complex64) -> Complex64 {
        let mut acc = Complex64::ZERO;
        for &c in self.coeffs.iter().rev() {
            acc = acc * zv + c;
        }
        acc
    }
}

/// Expand an expression about the origin to the given truncation order.
pub fn taylor_expand(e: &Expr, order: usize) -> Result<TaylorSeries> {
    Ok(match e {
        Expr::Const(c) => TaylorSeries::constant(*c, order),
        Expr::Z => TaylorSeries::variable(order),
        Expr::Add(a, b) => taylor_expand(a, order)?.add(&taylor_expand(b, order)?),
        Expr::Sub(a, b) => taylor_expand(a, order)?.sub(&taylor_expand(b, order)?),
        Expr::Mul(a, b) => taylor_expand(a, order)?.mul(&taylor_expand(b, order)?),
        Expr::Div(a, b) => taylor_expand(a, order)?.div(&taylor_expand(b, order)?)?,
        Expr::Neg(a) => taylor_expand(a, order)?.scale(-Complex64::ONE),
        Expr::IPow(a, n) => taylor_expand(a, order)?.powi(*n)?,
        Expr::RPow(a, p) => taylor_expand(a, order)?.powf(*p)?,
        Expr::Exp(a) => taylor_expand(a, order)?.exp(),
        Expr::Log(a) => taylor_expand(a, order)?.log()?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parser::parse;

    fn r(x: f64) -> Complex64 {
        Complex64::new(x, 0.0)
    }

    fn assert_coeffs(s: &TaylorSeries, want: &[f64], tol: f64) {
        assert_eq!(s.order() + 1, want.len(), "order mismatch");
        for (k, &w) in want.iter().enumerate() {
            assert!(
                (s.coeff(k) - r(w)).norm() <= tol,
                "coefficient {k}: {} vs {w}",
                s.coeff(k)
            );
        }
    }

    #[test]
    fn geometric_series() {
        let s = taylor_expand(&parse("1/(1-z)").unwrap(), 6).unwrap();
        assert_coeffs(&s, &[1.0; 7], 1e-14);
    }

    #[test]
    fn log_series() {
        let s = taylor_expand(&parse("-log(1-z)").unwrap(), 4).unwrap();
        assert_coeffs(&s, &[0.0, 1.0, 0.5, 1.0 / 3.0, 0.25], 1e-14);
    }

    #[test]
    fn quotient_series_matches_hand_product() {
        // exp(-z)/(1-z) expanded two ways: structural division versus the
        // convolution of exp(-z) with the geometric series.
        let s = taylor_expand(&parse("exp(-z)/(1-z)").unwrap(), 10).unwrap();
        let mut want = vec![0.0f64; 11];
        let mut term = 1.0;
        let mut partial = 0.0;
        for (n, w) in want.iter_mut().enumerate() {
            if n > 0 {
                term *= -1.0 / n as f64;
            }
            partial += term;
            *w = partial;
        }
        assert_coeffs(&s, &want, 1e-13);
        assert_coeffs(&s.truncate(3), &[1.0, 0.0, 0.5, 1.0 / 3.0], 1e-14);
    }

    #[test]
    fn integrate_shifts_and_divides() {
        let s = taylor_expand(&parse("z/(1-z)").unwrap(), 6).unwrap();
        let integral = s.integrate();
        // antiderivative of z/(1-z) with value 0 at 0 is -z - log(1-z)
        let want = taylor_expand(&parse("-z-log(1-z)").unwrap(), 7).unwrap();
        for k in 0..=7 {
            assert!((integral.coeff(k) - want.coeff(k)).norm() < 1e-14);
        }
        assert_eq!(integral.order(), 7);
        let zero = TaylorSeries::constant(Complex64::ZERO, 0).integrate();
        assert_coeffs(&zero, &[0.0, 0.0], 0.0);
    }

    #[test]
    fn exp_of_series() {
        let one_term = TaylorSeries::constant(Complex64::ZERO, 1).exp();
        assert_coeffs(&one_term, &[1.0, 0.0], 0.0);
        let point = TaylorSeries::constant(Complex64::ONE, 0).exp();
        assert_coeffs(&point, &[std::f64::consts::E], 1e-15);
        // exp(-z - log(1-z)) = exp(-z)/(1-z)
        let inner = taylor_expand(&parse("-z-log(1-z)").unwrap(), 8).unwrap();
        let want = taylor_expand(&parse("exp(-z)/(1-z)").unwrap(), 8).unwrap();
        let got = inner.exp();
        for k in 0..=8 {
            assert!((got.coeff(k) - want.coeff(k)).norm() < 1e-13);
        }
    }

    #[test]
    fn log_inverts_exp() {
        let s = taylor_expand(&parse("1/(1-z)").unwrap(), 12).unwrap();
        let roundtrip = s.log().unwrap().exp();
        for k in 0..=12 {
            assert!((roundtrip.coeff(k) - s.coeff(k)).norm() < 1e-12);
        }
    }

    #[test]
    fn powf_matches_pointwise() {
        let s = taylor_expand(&parse("(1+z)^0.5").unwrap(), 24).unwrap();
        let zv = Complex64::new(0.3, 0.2);
        let direct = (Complex64::ONE + zv).powf(0.5);
        assert!((s.eval_at(zv) - direct).norm() < 1e-12);
    }

    #[test]
    fn powi_negative_inverts() {
        let s = taylor_expand(&parse("(1-z)^-2").unwrap(), 6).unwrap();
        assert_coeffs(&s, &[1.0, 2.0, 3.0, 4.0, 5.0, 6.0, 7.0], 1e-13);
    }

    #[test]
    fn zero_constant_term_errors() {
        assert!(matches!(
            taylor_expand(&parse("1/z").unwrap(), 4),
            Err(Error::NotAnalyticAtZero { .. })
        ));
        assert!(matches!(
            taylor_expand(&parse("log(z)").unwrap(), 4),
            Err(Error::NotAnalyticAtZero { .. })
        ));
        assert!(matches!(
            taylor_expand(&parse("z^0.5").unwrap(), 4),
            Err(Error::NotAnalyticAtZero { .. })
        ));
    }

    #[test]
    fn div_cancel_strips_common_valuation() {
        // (z h') / h for h = z/(1-z): equals 1/(1-z).
        let num = taylor_expand(&parse("z/(1-z)^2").unwrap(), 9).unwrap();
        let den = taylor_expand(&parse("z/(1-z)").unwrap(), 9).unwrap();
        let q = num.div_cancel(&den).unwrap();
        for k in 0..=8 {
            assert!((q.coeff(k) - r(1.0)).norm() < 1e-12, "coeff {k}");
        }
        // Mismatched valuation is an error.
        let bad = taylor_expand(&parse("1/(1-z)").unwrap(), 9)
            .unwrap()
            .div_cancel(&den);
        assert!(matches!(bad, Err(Error::NotAnalyticAtZero { .. })));
    }

    #[test]
    fn partial_sums_converge_geometrically() {
        // For |z| <= 1/2 and the catalog expressions, the truncation error
        // decays at least like 0.5^N (analytic on a disk of radius ~1).
        let exprs = ["1/(1-z)", "exp(-z)/(1-z)", "-log(1-z)", "z/(1-z)^2"];
        let zv = Complex64::new(0.31, -0.37); // |z| ~ 0.48
        for src in exprs {
            let e = parse(src).unwrap();
            let exact = e.eval(zv).unwrap();
            for order in [24usize, 32, 48] {
                let s = taylor_expand(&e, order).unwrap();
                let err = (s.eval_at(zv) - exact).norm();
                assert!(
                    err < 64.0 * 0.5f64.powi(order as i32),
                    "{src} at order {order}: err {err}"
                );
            }
        }
    }
}

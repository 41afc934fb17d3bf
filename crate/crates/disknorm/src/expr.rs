//! Expression trees over one complex variable.
//!
//! The grammar is deliberately small: rational arithmetic, `exp`, `log`, and
//! powers of the variable `z`. Trees are immutable and share subtrees through
//! `Arc`, so cloning a derivative is cheap and evaluation is safe to run from
//! several threads at once.
//!
//! Smart constructors fold subtrees whose children are all literal constants
//! (guarded so that foldable errors, e.g. division by a literal zero, are kept
//! as nodes and surface at evaluation time). No other simplification is
//! guaranteed.

use std::fmt;
use std::sync::Arc;

use num_complex::Complex64;

use crate::error::EvalError;
use crate::tol::POLE_GUARD;

/// Immutable expression tree in the variable `z`.
#[derive(Clone, Debug, PartialEq)]
pub enum Expr {
    /// Finite complex literal.
    Const(Complex64),
    /// The variable.
    Z,
    Add(Arc<Expr>, Arc<Expr>),
    Sub(Arc<Expr>, Arc<Expr>),
    Mul(Arc<Expr>, Arc<Expr>),
    Div(Arc<Expr>, Arc<Expr>),
    Neg(Arc<Expr>),
    /// Integer power of a subexpression.
    IPow(Arc<Expr>, i32),
    /// Real (typically fractional) power, principal branch pointwise.
    RPow(Arc<Expr>, f64),
    Exp(Arc<Expr>),
    Log(Arc<Expr>),
}

pub fn con(c: Complex64) -> Expr {
    debug_assert!(c.is_finite(), "expression constants must be finite");
    Expr::Const(c)
}

pub fn real(x: f64) -> Expr {
    con(Complex64::new(x, 0.0))
}

pub fn z() -> Expr {
    Expr::Z
}

fn as_const(e: &Expr) -> Option<Complex64> {
    match e {
        Expr::Const(c) => Some(*c),
        _ => None,
    }
}

fn is_zero(e: &Expr) -> bool {
    as_const(e) == Some(Complex64::ZERO)
}

fn is_one(e: &Expr) -> bool {
    as_const(e) == Some(Complex64::ONE)
}

fn is_neg_one(e: &Expr) -> bool {
    as_const(e) == Some(-Complex64::ONE)
}

pub fn add(a: Expr, b: Expr) -> Expr {
    if is_zero(&a) {
        return b;
    }
    if is_zero(&b) {
        return a;
    }
    if let (Some(x), Some(y)) = (as_const(&a), as_const(&b)) {
        if (x + y).is_finite() {
            return con(x + y);
        }
    }
    Expr::Add(Arc::new(a), Arc::new(b))
}

pub fn sub(a: Expr, b: Expr) -> Expr {
    if is_zero(&b) {
        return a;
    }
    if is_zero(&a) {
        return neg(b);
    }
    if let (Some(x), Some(y)) = (as_const(&a), as_const(&b)) {
        if (x - y).is_finite() {
            return con(x - y);
        }
    }
    Expr::Sub(Arc::new(a), Arc::new(b))
}

pub fn mul(a: Expr, b: Expr) -> Expr {
    if is_one(&a) {
        return b;
    }
    if is_one(&b) {
        return a;
    }
    if is_neg_one(&a) {
        return neg(b);
    }
    if is_neg_one(&b) {
        return neg(a);
    }
    if let (Some(x), Some(y)) = (as_const(&a), as_const(&b)) {
        if (x * y).is_finite() {
            return con(x * y);
        }
    }
    Expr::Mul(Arc::new(a), Arc::new(b))
}

pub fn div(a: Expr, b: Expr) -> Expr {
    if is_one(&b) {
        return a;
    }
    if let (Some(x), Some(y)) = (as_const(&a), as_const(&b)) {
        if y.norm() >= POLE_GUARD && (x / y).is_finite() {
            return con(x / y);
        }
    }
    Expr::Div(Arc::new(a), Arc::new(b))
}

pub fn neg(a: Expr) -> Expr {
    match a {
        Expr::Neg(inner) => inner.as_ref().clone(),
        Expr::Const(c) => con(-c),
        // Push signs into the leading factor; flipping a sign commutes
        // exactly with IEEE multiplication and division.
        Expr::Mul(x, y) => mul(neg(x.as_ref().clone()), y.as_ref().clone()),
        Expr::Div(x, y) => div(neg(x.as_ref().clone()), y.as_ref().clone()),
        other => Expr::Neg(Arc::new(other)),
    }
}

pub fn ipow(a: Expr, n: i32) -> Expr {
    if n == 1 {
        return a;
    }
    if let Some(x) = as_const(&a) {
        if (n >= 0 || x.norm() >= POLE_GUARD) && x.powi(n).is_finite() {
            return con(x.powi(n));
        }
    }
    Expr::IPow(Arc::new(a), n)
}

pub fn rpow(a: Expr, p: f64) -> Expr {
    debug_assert!(p.is_finite(), "real exponents must be finite");
    if let Some(x) = as_const(&a) {
        if x.norm() >= POLE_GUARD && x.powf(p).is_finite() {
            return con(x.powf(p));
        }
    }
    Expr::RPow(Arc::new(a), p)
}

/// Power helper that picks the integer node for integral exponents.
pub fn pow(a: Expr, p: f64) -> Expr {
    if p.fract() == 0.0 && p.abs() <= i32::MAX as f64 {
        ipow(a, p as i32)
    } else {
        rpow(a, p)
    }
}

pub fn exp(a: Expr) -> Expr {
    if let Some(x) = as_const(&a) {
        if x.exp().is_finite() {
            return con(x.exp());
        }
    }
    Expr::Exp(Arc::new(a))
}

pub fn log(a: Expr) -> Expr {
    if let Some(x) = as_const(&a) {
        if x.norm() >= POLE_GUARD && x.ln().is_finite() {
            return con(x.ln());
        }
    }
    Expr::Log(Arc::new(a))
}

/// Structural derivative with respect to `z`.
///
/// Rules are applied verbatim (product, quotient, chain); constant folding in
/// the smart constructors is the only cleanup.
/// Product-rule term that collapses when either factor is literally zero,
/// so differentiating a constant subtree leaves no `0 * (...)` husk behind.
fn mul_vanishing(a: Expr, b: Expr) -> Expr {
    if is_zero(&a) || is_zero(&b) {
        real(0.0)
    } else {
        mul(a, b)
    }
}

pub fn differentiate(e: &Expr) -> Expr {
    match e {
        Expr::Const(_) => real(0.0),
        Expr::Z => real(1.0),
        Expr::Add(a, b) => add(differentiate(a), differentiate(b)),
        Expr::Sub(a, b) => sub(differentiate(a), differentiate(b)),
        Expr::Mul(a, b) => add(
            mul_vanishing(differentiate(a), b.as_ref().clone()),
            mul_vanishing(a.as_ref().clone(), differentiate(b)),
        ),
        Expr::Div(a, b) => {
            // (a/b)' written as (a' - (a/b) b') / b instead of the textbook
            // (a'b - ab')/b^2: the divisor keeps its original pole order, so
            // derivative trees stay evaluable as close to the boundary as
            // the expression itself.
            div(
                sub(
                    differentiate(a),
                    mul_vanishing(e.clone(), differentiate(b)),
                ),
                b.as_ref().clone(),
            )
        }
        Expr::Neg(a) => neg(differentiate(a)),
        Expr::IPow(a, n) => mul_vanishing(
            mul_vanishing(real(*n as f64), ipow(a.as_ref().clone(), n - 1)),
            differentiate(a),
        ),
        Expr::RPow(a, p) => mul_vanishing(
            mul_vanishing(real(*p), rpow(a.as_ref().clone(), p - 1.0)),
            differentiate(a),
        ),
        Expr::Exp(a) => mul_vanishing(e.clone(), differentiate(a)),
        Expr::Log(a) => {
            let da = differentiate(a);
            if is_zero(&da) {
                real(0.0)
            } else {
                div(da, a.as_ref().clone())
            }
        }
    }
}

/// Structural logarithmic derivative `e'/e`.
///
/// Products, quotients, powers, and exponentials are split before dividing
/// (`(uv)'/(uv) = u'/u + v'/v` and so on), so every divisor in the result
/// keeps the pole order of a single factor. Near the boundary this is far
/// better conditioned than the literal quotient `differentiate(e)/e`, whose
/// divisors can concentrate several factors at once.
pub fn log_derivative(e: &Expr) -> Expr {
    match e {
        Expr::Const(_) => real(0.0),
        Expr::Mul(a, b) => add(log_derivative(a), log_derivative(b)),
        Expr::Div(a, b) => sub(log_derivative(a), log_derivative(b)),
        Expr::Neg(a) => log_derivative(a),
        Expr::IPow(a, n) => mul_vanishing(real(*n as f64), log_derivative(a)),
        Expr::RPow(a, p) => mul_vanishing(real(*p), log_derivative(a)),
        Expr::Exp(a) => differentiate(a),
        _ => {
            let d = differentiate(e);
            if is_zero(&d) {
                real(0.0)
            } else {
                div(d, e.clone())
            }
        }
    }
}

impl Expr {
    /// Evaluate at a point, using the principal branch for `log` and real
    /// powers. Divisors within [`POLE_GUARD`](crate::tol::POLE_GUARD) of zero
    /// are reported instead of producing huge floats.
    pub fn eval(&self, zv: Complex64) -> Result<Complex64, EvalError> {
        Ok(match self {
            Expr::Const(c) => *c,
            Expr::Z => zv,
            Expr::Add(a, b) => a.eval(zv)? + b.eval(zv)?,
            Expr::Sub(a, b) => a.eval(zv)? - b.eval(zv)?,
            Expr::Mul(a, b) => a.eval(zv)? * b.eval(zv)?,
            Expr::Div(a, b) => {
                let d = b.eval(zv)?;
                if d.norm() < POLE_GUARD {
                    return Err(EvalError::PoleEncountered { at: zv });
                }
                a.eval(zv)? / d
            }
            Expr::Neg(a) => -a.eval(zv)?,
            Expr::IPow(a, n) => {
                let base = a.eval(zv)?;
                if *n < 0 && base.norm() < POLE_GUARD {
                    return Err(EvalError::PoleEncountered { at: zv });
                }
                base.powi(*n)
            }
            Expr::RPow(a, p) => {
                let base = a.eval(zv)?;
                if base.norm() < POLE_GUARD {
                    return Err(EvalError::BranchCutArgumentZero { at: zv });
                }
                base.powf(*p)
            }
            Expr::Exp(a) => a.eval(zv)?.exp(),
            Expr::Log(a) => {
                let arg = a.eval(zv)?;
                if arg.norm() < POLE_GUARD {
                    return Err(EvalError::BranchCutArgumentZero { at: zv });
                }
                arg.ln()
            }
        })
    }

    /// Replace every occurrence of `z` by `inner`, rebuilding through the
    /// smart constructors.
    pub fn substitute(&self, inner: &Expr) -> Expr {
        match self {
            Expr::Const(c) => con(*c),
            Expr::Z => inner.clone(),
            Expr::Add(a, b) => add(a.substitute(inner), b.substitute(inner)),
            Expr::Sub(a, b) => sub(a.substitute(inner), b.substitute(inner)),
            Expr::Mul(a, b) => mul(a.substitute(inner), b.substitute(inner)),
            Expr::Div(a, b) => div(a.substitute(inner), b.substitute(inner)),
            Expr::Neg(a) => neg(a.substitute(inner)),
            Expr::IPow(a, n) => ipow(a.substitute(inner), *n),
            Expr::RPow(a, p) => rpow(a.substitute(inner), *p),
            Expr::Exp(a) => exp(a.substitute(inner)),
            Expr::Log(a) => log(a.substitute(inner)),
        }
    }

    pub fn contains_z(&self) -> bool {
        match self {
            Expr::Const(_) => false,
            Expr::Z => true,
            Expr::Add(a, b) | Expr::Sub(a, b) | Expr::Mul(a, b) | Expr::Div(a, b) => {
                a.contains_z() || b.contains_z()
            }
            Expr::Neg(a) | Expr::Exp(a) | Expr::Log(a) => a.contains_z(),
            Expr::IPow(a, _) | Expr::RPow(a, _) => a.contains_z(),
        }
    }

    pub fn is_const_zero(&self) -> bool {
        is_zero(self)
    }
}

// Printing. `parse(pretty) == original` structurally, which pins down the
// parenthesization rules: left-associative binary chains print bare on the
// left and parenthesize equal-precedence right children; power bases must be
// atoms; real exponents always carry a decimal point so they re-parse as
// real powers.

fn fmt_real(x: f64) -> String {
    format!("{x}")
}

fn fmt_const(c: Complex64) -> String {
    if c.im == 0.0 {
        fmt_real(c.re)
    } else if c.re == 0.0 {
        format!("{}i", fmt_real(c.im))
    } else if c.im < 0.0 {
        format!("({}-{}i)", fmt_real(c.re), fmt_real(-c.im))
    } else {
        format!("({}+{}i)", fmt_real(c.re), fmt_real(c.im))
    }
}

/// Binding strength used when deciding where parentheses are required.
fn precedence(e: &Expr) -> u8 {
    match e {
        Expr::Add(..) | Expr::Sub(..) => 1,
        Expr::Mul(..) | Expr::Div(..) => 2,
        Expr::Neg(..) => 3,
        Expr::IPow(..) | Expr::RPow(..) => 4,
        Expr::Const(_) | Expr::Z | Expr::Exp(..) | Expr::Log(..) => 5,
    }
}

/// True when `e` prints as a grammar atom (usable as a bare power base).
fn prints_as_atom(e: &Expr) -> bool {
    match e {
        Expr::Z | Expr::Exp(..) | Expr::Log(..) => true,
        Expr::Const(c) => {
            if c.im == 0.0 {
                c.re >= 0.0
            } else if c.re == 0.0 {
                c.im >= 0.0
            } else {
                // Mixed constants print in parentheses, which is an atom.
                true
            }
        }
        _ => false,
    }
}

fn write_child(f: &mut fmt::Formatter<'_>, child: &Expr, min_prec: u8) -> fmt::Result {
    if precedence(child) < min_prec {
        write!(f, "({child})")
    } else {
        write!(f, "{child}")
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Const(c) => write!(f, "{}", fmt_const(*c)),
            Expr::Z => write!(f, "z"),
            Expr::Add(a, b) => {
                write_child(f, a, 1)?;
                write!(f, "+")?;
                write_child(f, b, 2)
            }
            Expr::Sub(a, b) => {
                write_child(f, a, 1)?;
                write!(f, "-")?;
                write_child(f, b, 2)
            }
            Expr::Mul(a, b) => {
                write_child(f, a, 2)?;
                write!(f, "*")?;
                write_child(f, b, 3)
            }
            Expr::Div(a, b) => {
                write_child(f, a, 2)?;
                write!(f, "/")?;
                write_child(f, b, 3)
            }
            Expr::Neg(a) => {
                write!(f, "-")?;
                write_child(f, a, 3)
            }
            Expr::IPow(a, n) => {
                if prints_as_atom(a) {
                    write!(f, "{a}^{n}")
                } else {
                    write!(f, "({a})^{n}")
                }
            }
            Expr::RPow(a, p) => {
                let exp_txt = if p.fract() == 0.0 {
                    format!("{p:.1}")
                } else {
                    fmt_real(*p)
                };
                if prints_as_atom(a) {
                    write!(f, "{a}^{exp_txt}")
                } else {
                    write!(f, "({a})^{exp_txt}")
                }
            }
            Expr::Exp(a) => write!(f, "exp({a})"),
            Expr::Log(a) => write!(f, "log({a})"),
        }
    }
}

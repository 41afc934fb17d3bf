//! Adaptive Simpson quadrature for complex-valued integrands on `[0, 1]`.
//!
//! Used to evaluate radial logarithmic integrals such as
//! `integral_0^1 L(t z) z dt`, which reconstruct `log f(z) - log f(0)` from a
//! logarithmic derivative `L = f'/f` along the segment from `0` to `z`.

use num_complex::Complex64;

use crate::error::Result;
use crate::expr::Expr;
use crate::tol::RADIAL_QUAD_TOL;

const MAX_DEPTH: u32 = 48;

fn simpson(fa: Complex64, fm: Complex64, fb: Complex64, h: f64) -> Complex64 {
    (fa + fm * Complex64::new(4.0, 0.0) + fb) * Complex64::new(h / 6.0, 0.0)
}

// Textbook adaptive-Simpson recursion: the endpoint/midpoint samples travel
// with their interval so nothing is evaluated twice.
#[allow(clippy::too_many_arguments)]
fn adapt<F>(
    f: &F,
    a: f64,
    b: f64,
    fa: Complex64,
    fm: Complex64,
    fb: Complex64,
    whole: Complex64,
    tol: f64,
    depth: u32,
) -> Result<Complex64>
where
    F: Fn(f64) -> Result<Complex64>,
{
    let m = 0.5 * (a + b);
    let lm = 0.5 * (a + m);
    let rm = 0.5 * (m + b);
    let flm = f(lm)?;
    let frm = f(rm)?;
    let left = simpson(fa, flm, fm, m - a);
    let right = simpson(fm, frm, fb, b - m);
    let delta = left + right - whole;
    if depth >= MAX_DEPTH || delta.norm() <= 15.0 * tol {
        return Ok(left + right + delta / Complex64::new(15.0, 0.0));
    }
    let half = 0.5 * tol;
    Ok(adapt(f, a, m, fa, flm, fm, left, half, depth + 1)?
        + adapt(f, m, b, fm, frm, fb, right, half, depth + 1)?)
}

/// Integrate `f` over `[0, 1]` to absolute tolerance `tol`. Errors from the
/// integrand (a pole on the segment, say) abort the whole integration.
pub fn integrate_01<F>(f: F, tol: f64) -> Result<Complex64>
where
    F: Fn(f64) -> Result<Complex64>,
{
    let fa = f(0.0)?;
    let fm = f(0.5)?;
    let fb = f(1.0)?;
    let whole = simpson(fa, fm, fb, 1.0);
    adapt(&f, 0.0, 1.0, fa, fm, fb, whole, tol.max(f64::EPSILON), 0)
}

/// `integral_0^1 L(t z) z dt` for an expression `L`, evaluated to the default
/// radial tolerance. Equals `log f(z) - log f(0)` when `L = f'/f` and `f` has
/// no zeros on the segment.
pub fn integrate_radial(log_deriv: &Expr, z: Complex64, tol: Option<f64>) -> Result<Complex64> {
    let tol = tol.unwrap_or(RADIAL_QUAD_TOL);
    integrate_01(|t| Ok(log_deriv.eval(z * Complex64::new(t, 0.0))? * z), tol)
}

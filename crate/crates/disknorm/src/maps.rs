//! Disk mappings and their derived objects.
//!
//! Three layers live here:
//!
//! * [`AnalyticPart`]: one analytic factor, available either in closed form
//!   or "virtually" through its logarithmic derivative (values are then
//!   reconstructed by radial integration, which keeps powers and logarithms
//!   on a single analytic branch across the disk).
//! * [`LogharmonicMap`]: a sense-preserving product `f = h * conj(g)` with
//!   its dilatation, validity flags, pointwise pre-Schwarzian, Jacobian, and
//!   the residual of the defining differential equation.
//! * [`HarmonicMap`]: a map `H + conj(G)` given through the derivatives of
//!   its parts, with pointwise pre-Schwarzian and Schwarzian evaluators.
//!
//! Free functions cover the analytic pre-Schwarzian/Schwarzian, dilatation
//! extraction, series reconstruction of the co-analytic factor, the
//! hyperbolic derivative, and the affine/disk-automorphism transforms of
//! `log f`.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::expr::{self, differentiate, log_derivative, Expr};
use crate::quad::integrate_radial;
use crate::series::{taylor_expand, TaylorSeries};
use crate::tol::{
    DEFAULT_TAYLOR_ORDER, DILATATION_MARGIN, NORMALIZATION_TOL, POLE_GUARD, SERIES_ZERO,
    VALIDATION_ANGLES, VALIDATION_RADII, VALIDATION_RMAX,
};

/// Sample points used for the cheap validity checks at construction time:
/// `VALIDATION_RADII` radii (including the origin) times `VALIDATION_ANGLES`
/// angles, up to `VALIDATION_RMAX`. A heuristic, not a proof.
pub(crate) fn validation_points() -> Vec<Complex64> {
    let mut pts = Vec::with_capacity(VALIDATION_RADII * VALIDATION_ANGLES);
    for j in 0..VALIDATION_RADII {
        let r = VALIDATION_RMAX * j as f64 / (VALIDATION_RADII - 1) as f64;
        if r == 0.0 {
            pts.push(Complex64::ZERO);
            continue;
        }
        for k in 0..VALIDATION_ANGLES {
            let theta = 2.0 * std::f64::consts::PI * k as f64 / VALIDATION_ANGLES as f64;
            pts.push(Complex64::from_polar(r, theta));
        }
    }
    pts
}

fn ensure_in_disk(z: Complex64) -> Result<()> {
    if z.norm() < 1.0 {
        Ok(())
    } else {
        Err(Error::DomainError {
            detail: format!("point {z} lies outside the open unit disk"),
        })
    }
}

/// The disk automorphism `(z - alpha) / (1 - conj(alpha) z)`.
pub fn automorphism(alpha: Complex64) -> Expr {
    expr::div(
        expr::sub(expr::z(), expr::con(alpha)),
        expr::sub(expr::real(1.0), expr::mul(expr::con(alpha.conj()), expr::z())),
    )
}

/// One analytic factor of a logharmonic map.
///
/// A part is either *closed* (an expression for its values, differentiated
/// symbolically) or *virtual* (only the logarithmic derivative is an
/// expression; values come from `exp(log-value at 0 + radial integral)`).
/// Virtual parts arise when reconstructing `g` from a dilatation and when
/// raising a derivative to a real power, where a disk-wide analytic branch
/// is required.
#[derive(Clone, Debug)]
pub struct AnalyticPart {
    closed: Option<Expr>,
    deriv: Option<Expr>,
    log_deriv: Expr,
    pre_schwarzian: Expr,
    log_at_origin: Option<Complex64>,
    /// Value of the logarithmic derivative at 0 when the expression tree has
    /// a removable 0/0 there (a factor vanishing at the origin).
    log_deriv_at_origin: Option<Complex64>,
    /// `(base, exponent)` when the part is `base^exponent`; lets composition
    /// substitute into the base and re-derive instead of chaining rules.
    power_base: Option<(Expr, f64)>,
}

impl AnalyticPart {
    /// Closed-form part; derivative and logarithmic derivative are derived
    /// symbolically.
    pub fn from_expr(e: Expr) -> Self {
        let deriv = differentiate(&e);
        AnalyticPart {
            log_deriv: log_derivative(&e),
            pre_schwarzian: log_derivative(&deriv),
            closed: Some(e),
            deriv: Some(deriv),
            log_at_origin: None,
            log_deriv_at_origin: None,
            power_base: None,
        }
    }

    /// Virtual part `exp(integral of l)` normalized to the value 1 at the
    /// origin. `at_origin` patches the evaluation of `l` at exactly 0 when
    /// the tree has a removable singularity there.
    pub fn from_log_derivative(l: Expr, at_origin: Option<Complex64>) -> Self {
        // For p = exp(L) with L' = l: p''/p' = l + l'/l, valid away from
        // zeros of l. Nothing dereferences this for reconstructed parts in
        // practice (the pre-Schwarzian of a product needs only l itself).
        let pre = expr::add(l.clone(), expr::div(differentiate(&l), l.clone()));
        AnalyticPart {
            closed: None,
            deriv: None,
            log_deriv: l,
            pre_schwarzian: pre,
            log_at_origin: Some(Complex64::ZERO),
            log_deriv_at_origin: at_origin,
            power_base: None,
        }
    }

    /// Virtual part `base^lambda` on the analytic branch through the
    /// principal logarithm of `base(0)`.
    pub fn from_power(base: Expr, lambda: f64) -> Result<Self> {
        let b0 = base.eval(Complex64::ZERO)?;
        if b0.norm() < POLE_GUARD {
            return Err(Error::DegenerateFunction {
                detail: "power base vanishes at the origin".into(),
            });
        }
        let base_deriv = differentiate(&base);
        let base_log_deriv = log_derivative(&base);
        // (base^l)''/(base^l)' = (l - 1) base'/base + base''/base'
        let pre = expr::add(
            expr::mul(expr::real(lambda - 1.0), base_log_deriv.clone()),
            log_derivative(&base_deriv),
        );
        Ok(AnalyticPart {
            closed: None,
            deriv: None,
            log_deriv: expr::mul(expr::real(lambda), base_log_deriv),
            pre_schwarzian: pre,
            log_at_origin: Some(b0.ln() * lambda),
            log_deriv_at_origin: None,
            power_base: Some((base, lambda)),
        })
    }

    pub fn log_deriv_expr(&self) -> &Expr {
        &self.log_deriv
    }

    pub fn pre_schwarzian_expr(&self) -> &Expr {
        &self.pre_schwarzian
    }

    pub fn closed_expr(&self) -> Option<&Expr> {
        self.closed.as_ref()
    }

    /// Logarithmic derivative at a point, patched at the origin for
    /// removable 0/0 trees.
    pub fn log_derivative(&self, z: Complex64) -> Result<Complex64> {
        match self.log_deriv.eval(z) {
            Ok(v) => Ok(v),
            Err(e) => match self.log_deriv_at_origin {
                Some(c) if z.norm() == 0.0 => Ok(c),
                _ => Err(e.into()),
            },
        }
    }

    /// Logarithm of the value at the origin, on the branch the part carries.
    pub fn log_origin(&self) -> Result<Complex64> {
        if let Some(l0) = self.log_at_origin {
            return Ok(l0);
        }
        let v0 = self.closed.as_ref().unwrap().eval(Complex64::ZERO)?;
        if v0.norm() < POLE_GUARD {
            return Err(Error::NotAnalyticAtZero {
                reason: "logarithm of a factor vanishing at the origin".into(),
            });
        }
        Ok(v0.ln())
    }

    /// Branch-consistent logarithm of the value: `log at 0` plus the radial
    /// integral of the logarithmic derivative.
    pub fn log_value(&self, z: Complex64) -> Result<Complex64> {
        let l0 = self.log_origin()?;
        let ld = &self.log_deriv;
        let patch = self.log_deriv_at_origin;
        let integral = crate::quad::integrate_01(
            |t| {
                let w = z * Complex64::new(t, 0.0);
                match ld.eval(w) {
                    Ok(v) => Ok(v * z),
                    Err(e) => match patch {
                        Some(c) if w.norm() == 0.0 => Ok(c * z),
                        _ => Err(e.into()),
                    },
                }
            },
            crate::tol::RADIAL_QUAD_TOL,
        )?;
        Ok(l0 + integral)
    }

    /// Value of the part at a point.
    pub fn value(&self, z: Complex64) -> Result<Complex64> {
        match &self.closed {
            Some(e) => Ok(e.eval(z)?),
            None => Ok(self.log_value(z)?.exp()),
        }
    }

    /// Derivative of the part at a point.
    pub fn derivative(&self, z: Complex64) -> Result<Complex64> {
        match &self.deriv {
            Some(d) => Ok(d.eval(z)?),
            None => Ok(self.value(z)? * self.log_derivative(z)?),
        }
    }

    pub fn pre_schwarzian_at(&self, z: Complex64) -> Result<Complex64> {
        Ok(self.pre_schwarzian.eval(z)?)
    }

    /// Whether the derivative is (numerically) nonzero at `z`. For virtual
    /// parts the value never vanishes, so the logarithmic derivative decides.
    fn derivative_nonzero(&self, z: Complex64) -> bool {
        match &self.deriv {
            Some(d) => matches!(d.eval(z), Ok(v) if v.norm() > POLE_GUARD),
            None => matches!(self.log_derivative(z), Ok(v) if v.norm() > POLE_GUARD),
        }
    }

    fn value_nonzero(&self, z: Complex64) -> bool {
        match &self.closed {
            Some(e) => matches!(e.eval(z), Ok(v) if v.norm() > POLE_GUARD),
            // exp of a finite logarithm never vanishes
            None => true,
        }
    }

    /// Composition with an inner analytic map.
    fn compose(&self, inner: &Expr) -> Result<Self> {
        if let Some((base, lambda)) = &self.power_base {
            return AnalyticPart::from_power(base.substitute(inner), *lambda);
        }
        if let Some(e) = &self.closed {
            return Ok(AnalyticPart::from_expr(e.substitute(inner)));
        }
        // Virtual: (p o phi)'/(p o phi) = l(phi) phi', and the origin value
        // moves to p(phi(0)).
        let inner0 = inner.eval(Complex64::ZERO)?;
        let l0 = self.log_value(inner0)?;
        let l = expr::mul(self.log_deriv.substitute(inner), differentiate(inner));
        Ok(AnalyticPart {
            closed: None,
            deriv: None,
            pre_schwarzian: expr::add(l.clone(), expr::div(differentiate(&l), l.clone())),
            log_deriv: l,
            log_at_origin: Some(l0),
            log_deriv_at_origin: None,
            power_base: None,
        })
    }
}

/// Validity flags sampled on the validation grid at construction.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct MapFlags {
    pub h_locally_univalent: bool,
    pub h_nonvanishing: bool,
    pub g_nonvanishing: bool,
    pub sense_preserving: bool,
}

/// A logharmonic map `f = h * conj(g)` with dilatation
/// `omega = g' h / (g h')`.
#[derive(Clone, Debug)]
pub struct LogharmonicMap {
    h: AnalyticPart,
    g: AnalyticPart,
    omega: Expr,
    omega_deriv: Expr,
    flags: MapFlags,
}

impl LogharmonicMap {
    fn build(h: AnalyticPart, g: AnalyticPart, omega: Expr) -> Self {
        let mut flags = MapFlags {
            h_locally_univalent: true,
            h_nonvanishing: true,
            g_nonvanishing: true,
            sense_preserving: true,
        };
        for zv in validation_points() {
            flags.h_locally_univalent &= h.derivative_nonzero(zv);
            flags.h_nonvanishing &= h.value_nonzero(zv);
            flags.g_nonvanishing &= g.value_nonzero(zv);
            flags.sense_preserving &= matches!(omega.eval(zv), Ok(w) if w.norm() < 1.0);
        }
        let omega_deriv = differentiate(&omega);
        LogharmonicMap {
            h,
            g,
            omega,
            omega_deriv,
            flags,
        }
    }

    /// Construct from closed analytic and co-analytic parts; the dilatation
    /// is derived as `(g' h)/(g h')`.
    pub fn from_parts(h: Expr, g: Expr) -> Self {
        let hp = AnalyticPart::from_expr(h);
        let gp = AnalyticPart::from_expr(g);
        let omega = derived_dilatation(&hp, &gp);
        Self::build(hp, gp, omega)
    }

    /// Construct from closed parts together with a dilatation in closed
    /// form. The given dilatation is cross-checked against `(g' h)/(g h')`
    /// on the validation grid and then used verbatim (its derivatives are
    /// usually far simpler than the derived quotient's).
    pub fn from_parts_with_omega(h: Expr, g: Expr, omega: Expr) -> Result<Self> {
        let hp = AnalyticPart::from_expr(h);
        let gp = AnalyticPart::from_expr(g);
        let derived = derived_dilatation(&hp, &gp);
        let mut compared = 0usize;
        let mut total = 0usize;
        for zv in validation_points() {
            total += 1;
            let (Ok(a), Ok(b)) = (derived.eval(zv), omega.eval(zv)) else {
                continue;
            };
            if (a - b).norm() > 1e-9 {
                return Err(Error::DegenerateFunction {
                    detail: format!(
                        "dilatation mismatch at {zv}: given {b}, derived {a} from (g' h)/(g h')"
                    ),
                });
            }
            compared += 1;
        }
        if compared * 4 < total * 3 {
            return Err(Error::DegenerateFunction {
                detail: "dilatation cross-check could not evaluate enough grid points".into(),
            });
        }
        Ok(Self::build(hp, gp, omega))
    }

    /// Construct from the analytic part and a dilatation; the co-analytic
    /// part is reconstructed as `exp(integral of omega h'/h)` with value 1
    /// at the origin. `omega h'/h` must be analytic at 0 (checked through
    /// series with pole cancellation).
    pub fn from_dilatation(h: Expr, omega: Expr) -> Result<Self> {
        let hp = AnalyticPart::from_expr(h);
        let order = DEFAULT_TAYLOR_ORDER.min(32);
        let sw = taylor_expand(&omega, order)?;
        let shd = taylor_expand(hp.deriv.as_ref().unwrap(), order)?;
        let sh = taylor_expand(hp.closed.as_ref().unwrap(), order)?;
        let integrand = sw.mul(&shd).div_cancel(&sh)?;
        let l = expr::mul(omega.clone(), hp.log_deriv.clone());
        let gp = AnalyticPart::from_log_derivative(l, Some(integrand.coeff(0)));
        Ok(Self::build(hp, gp, omega))
    }

    /// Construct from assembled parts without a cross-check (used by
    /// composition and the transforms, where the dilatation is exact by
    /// algebra).
    pub(crate) fn from_raw(h: AnalyticPart, g: AnalyticPart, omega: Expr) -> Self {
        Self::build(h, g, omega)
    }

    pub fn h(&self) -> &AnalyticPart {
        &self.h
    }

    pub fn g(&self) -> &AnalyticPart {
        &self.g
    }

    pub fn omega_expr(&self) -> &Expr {
        &self.omega
    }

    pub fn omega_deriv_expr(&self) -> &Expr {
        &self.omega_deriv
    }

    pub fn flags(&self) -> MapFlags {
        self.flags
    }

    /// `f(z) = h(z) conj(g(z))`.
    pub fn value(&self, z: Complex64) -> Result<Complex64> {
        ensure_in_disk(z)?;
        Ok(self.h.value(z)? * self.g.value(z)?.conj())
    }

    /// Pointwise pre-Schwarzian
    /// `h''/h' + g'/g - conj(omega) omega' / (1 - |omega|^2)`.
    pub fn pre_schwarzian(&self, z: Complex64) -> Result<Complex64> {
        ensure_in_disk(z)?;
        let analytic = self.h.pre_schwarzian_at(z)? + self.g.log_derivative(z)?;
        let w = self.omega.eval(z)?;
        if w.norm() >= 1.0 - DILATATION_MARGIN {
            return Err(Error::NotSensePreserving {
                at: z,
                modulus: w.norm(),
            });
        }
        let wd = self.omega_deriv.eval(z)?;
        Ok(analytic - w.conj() * wd / (1.0 - w.norm_sqr()))
    }

    /// Pre-Schwarzian of the associated analytic function `psi` with
    /// `psi' = h' g`, namely `h''/h' + g'/g`, as an expression.
    pub fn psi_pre_schwarzian(&self) -> Expr {
        expr::add(self.h.pre_schwarzian.clone(), self.g.log_deriv.clone())
    }

    /// Jacobian `|h'(z) g(z)|^2 (1 - |omega(z)|^2)`.
    pub fn jacobian(&self, z: Complex64) -> Result<f64> {
        ensure_in_disk(z)?;
        let scale = (self.h.derivative(z)? * self.g.value(z)?).norm_sqr();
        let w = self.omega.eval(z)?;
        Ok(scale * (1.0 - w.norm_sqr()))
    }

    /// Residual of the defining equation,
    /// `|conj(f_zbar)/conj(f) - omega f_z/f|`, with the Wirtinger
    /// derivatives formed structurally: `f_z = h' conj(g)`,
    /// `f_zbar = h conj(g')`.
    pub fn pde_residual(&self, z: Complex64) -> Result<f64> {
        ensure_in_disk(z)?;
        let hv = self.h.value(z)?;
        let hd = self.h.derivative(z)?;
        let gv = self.g.value(z)?;
        let gd = self.g.derivative(z)?;
        let f = hv * gv.conj();
        if f.norm() < POLE_GUARD {
            return Err(Error::Eval(crate::error::EvalError::PoleEncountered { at: z }));
        }
        let f_z = hd * gv.conj();
        let f_zbar = hv * gd.conj();
        let lhs = f_zbar.conj() / f.conj();
        let rhs = self.omega.eval(z)? * f_z / f;
        Ok((lhs - rhs).norm())
    }

    /// Whether `h(0) = g(0) = h'(0) = 1` within the normalization tolerance.
    pub fn is_normalized(&self) -> Result<bool> {
        let one = Complex64::ONE;
        Ok((self.h.value(Complex64::ZERO)? - one).norm() <= NORMALIZATION_TOL
            && (self.g.value(Complex64::ZERO)? - one).norm() <= NORMALIZATION_TOL
            && (self.h.derivative(Complex64::ZERO)? - one).norm() <= NORMALIZATION_TOL)
    }

    /// Precompose with a locally univalent analytic self-map: returns
    /// `f o phi` with freshly derived parts and dilatation `omega o phi`.
    pub fn compose_with(&self, phi: &Expr) -> Result<Self> {
        let h = self.h.compose(phi)?;
        let g = self.g.compose(phi)?;
        let omega = self.omega.substitute(phi);
        Ok(Self::from_raw(h, g, omega))
    }

    /// The harmonic map `log f = log h + conj(log g)`; requires `f`
    /// nonvanishing.
    pub fn log_map(&self) -> Result<HarmonicMap> {
        HarmonicMap::from_derivatives_with_omega(
            self.h.log_deriv.clone(),
            self.g.log_deriv.clone(),
            self.h.log_origin()?,
            self.g.log_origin()?,
            self.omega.clone(),
        )
    }
}

fn derived_dilatation(h: &AnalyticPart, g: &AnalyticPart) -> Expr {
    // (g' h)/(g h') as one quotient, so a common zero of h and the numerator
    // stays evaluable.
    expr::div(
        expr::mul(
            g.deriv.clone().expect("closed co-analytic part"),
            h.closed.clone().expect("closed analytic part"),
        ),
        expr::mul(
            g.closed.clone().expect("closed co-analytic part"),
            h.deriv.clone().expect("closed analytic part"),
        ),
    )
}

/// A harmonic map `H + conj(G)` described by the derivatives of its parts
/// and their values at the origin.
#[derive(Clone, Debug)]
pub struct HarmonicMap {
    h_deriv: Expr,
    g_deriv: Expr,
    h_origin: Complex64,
    g_origin: Complex64,
    omega: Expr,
    omega_deriv: Expr,
    omega_second: Expr,
    p_analytic: Expr,
    s_analytic: Expr,
}

impl HarmonicMap {
    /// Construct from part derivatives; the dilatation is the quotient
    /// `G'/H'`.
    pub fn from_derivatives(
        h_deriv: Expr,
        g_deriv: Expr,
        h_origin: Complex64,
        g_origin: Complex64,
    ) -> Result<Self> {
        let omega = expr::div(g_deriv.clone(), h_deriv.clone());
        Self::assemble(h_deriv, g_deriv, h_origin, g_origin, omega)
    }

    /// Construct with an explicit dilatation, cross-checked pointwise
    /// against `G'/H'` on a coarse grid.
    pub fn from_derivatives_with_omega(
        h_deriv: Expr,
        g_deriv: Expr,
        h_origin: Complex64,
        g_origin: Complex64,
        omega: Expr,
    ) -> Result<Self> {
        for k in 0..64 {
            let zv = Complex64::from_polar(
                0.05 + 0.9 * (k as f64 / 63.0),
                2.0 * std::f64::consts::PI * k as f64 / 64.0,
            );
            let (Ok(hd), Ok(gd), Ok(w)) = (h_deriv.eval(zv), g_deriv.eval(zv), omega.eval(zv))
            else {
                continue;
            };
            if (gd - w * hd).norm() > 1e-8 * (1.0 + hd.norm()) {
                return Err(Error::DegenerateFunction {
                    detail: format!("dilatation disagrees with G'/H' at {zv}"),
                });
            }
        }
        Self::assemble(h_deriv, g_deriv, h_origin, g_origin, omega)
    }

    fn assemble(
        h_deriv: Expr,
        g_deriv: Expr,
        h_origin: Complex64,
        g_origin: Complex64,
        omega: Expr,
    ) -> Result<Self> {
        for zv in validation_points() {
            if !matches!(h_deriv.eval(zv), Ok(v) if v.norm() > POLE_GUARD) {
                return Err(Error::DegenerateFunction {
                    detail: format!("analytic part derivative vanishes near {zv}"),
                });
            }
        }
        let p_analytic = log_derivative(&h_deriv);
        let s_analytic = expr::sub(
            differentiate(&p_analytic),
            expr::mul(expr::real(0.5), expr::ipow(p_analytic.clone(), 2)),
        );
        let omega_deriv = differentiate(&omega);
        let omega_second = differentiate(&omega_deriv);
        Ok(HarmonicMap {
            h_deriv,
            g_deriv,
            h_origin,
            g_origin,
            omega,
            omega_deriv,
            omega_second,
            p_analytic,
            s_analytic,
        })
    }

    pub fn h_deriv_expr(&self) -> &Expr {
        &self.h_deriv
    }

    pub fn g_deriv_expr(&self) -> &Expr {
        &self.g_deriv
    }

    pub fn omega_expr(&self) -> &Expr {
        &self.omega
    }

    pub fn p_analytic_expr(&self) -> &Expr {
        &self.p_analytic
    }

    pub fn s_analytic_expr(&self) -> &Expr {
        &self.s_analytic
    }

    /// Value `H(z) + conj(G(z))` by radial integration of the derivatives.
    pub fn value(&self, z: Complex64) -> Result<Complex64> {
        ensure_in_disk(z)?;
        let hv = self.h_origin + integrate_radial(&self.h_deriv, z, None)?;
        let gv = self.g_origin + integrate_radial(&self.g_deriv, z, None)?;
        Ok(hv + gv.conj())
    }

    fn dilatation_term(&self, z: Complex64) -> Result<(Complex64, Complex64, f64)> {
        let w = self.omega.eval(z)?;
        if w.norm() >= 1.0 - DILATATION_MARGIN {
            return Err(Error::NotSensePreserving {
                at: z,
                modulus: w.norm(),
            });
        }
        let wd = self.omega_deriv.eval(z)?;
        Ok((w, wd, 1.0 - w.norm_sqr()))
    }

    /// Pointwise pre-Schwarzian
    /// `H''/H' - conj(omega) omega' / (1 - |omega|^2)`.
    pub fn pre_schwarzian(&self, z: Complex64) -> Result<Complex64> {
        ensure_in_disk(z)?;
        let (w, wd, denom) = self.dilatation_term(z)?;
        Ok(self.p_analytic.eval(z)? - w.conj() * wd / denom)
    }

    /// The pre-Schwarzian with `z` and `conj(z)` treated as independent
    /// slots `u` and `v`: substituting `v = conj(u)` recovers
    /// [`Self::pre_schwarzian`]. This makes the Wirtinger `z`-derivative
    /// accessible to finite differences in `u` alone.
    pub fn pre_schwarzian_split(&self, u: Complex64, v: Complex64) -> Result<Complex64> {
        let wbar = self.omega.eval(v.conj())?.conj();
        let w = self.omega.eval(u)?;
        let wd = self.omega_deriv.eval(u)?;
        let denom = Complex64::ONE - wbar * w;
        if denom.norm() < POLE_GUARD {
            return Err(Error::Eval(crate::error::EvalError::PoleEncountered { at: u }));
        }
        Ok(self.p_analytic.eval(u)? - wbar * wd / denom)
    }

    /// Pointwise Schwarzian
    /// `S_H + (conj(omega)/(1-|omega|^2)) (H''/H' omega' - omega'')
    ///  - (3/2) (omega' conj(omega)/(1-|omega|^2))^2`.
    pub fn schwarzian(&self, z: Complex64) -> Result<Complex64> {
        ensure_in_disk(z)?;
        let (w, wd, denom) = self.dilatation_term(z)?;
        let wdd = self.omega_second.eval(z)?;
        let p = self.p_analytic.eval(z)?;
        let s = self.s_analytic.eval(z)?;
        let ratio = w.conj() / denom;
        let cross = ratio * (p * wd - wdd);
        let square = wd * ratio;
        Ok(s + cross - 1.5 * square * square)
    }
}

/// `h''/h'` as an expression. Errors if `h'` is identically zero (detected
/// through a zero Taylor expansion at the default order).
pub fn pre_schwarzian_analytic(h: &Expr) -> Result<Expr> {
    let deriv = differentiate(h);
    if let Ok(series) = taylor_expand(&deriv, DEFAULT_TAYLOR_ORDER) {
        if series.coeffs().iter().all(|c| c.norm() < SERIES_ZERO) {
            return Err(Error::DegenerateFunction {
                detail: "derivative is identically zero".into(),
            });
        }
    }
    Ok(log_derivative(&deriv))
}

/// `P' - P^2/2` as an expression, with `P = h''/h'`.
pub fn schwarzian_analytic(h: &Expr) -> Result<Expr> {
    let p = pre_schwarzian_analytic(h)?;
    Ok(expr::sub(
        differentiate(&p),
        expr::mul(expr::real(0.5), expr::ipow(p, 2)),
    ))
}

/// Dilatation `(g' h)/(g h')` of the product `h conj(g)`, with a
/// sense-preservation check on the validation grid.
pub fn dilatation(h: &Expr, g: &Expr) -> Result<Expr> {
    let hp = AnalyticPart::from_expr(h.clone());
    let gp = AnalyticPart::from_expr(g.clone());
    let omega = derived_dilatation(&hp, &gp);
    for zv in validation_points() {
        if let Ok(w) = omega.eval(zv) {
            if w.norm() >= 1.0 - DILATATION_MARGIN {
                return Err(Error::NotSensePreserving {
                    at: zv,
                    modulus: w.norm(),
                });
            }
        }
    }
    Ok(omega)
}

/// Series of `g = exp(integral of omega h'/h)` with `g(0) = 1`, to the given
/// truncation order. The integrand may have a removable singularity at the
/// origin (simple zero of `h` matched by the numerator).
pub fn coanalytic_from_dilatation(h: &Expr, omega: &Expr, order: usize) -> Result<TaylorSeries> {
    if order == 0 {
        return Ok(TaylorSeries::constant(Complex64::ONE, 0));
    }
    let sh = taylor_expand(h, order)?;
    let shd = taylor_expand(&differentiate(h), order)?;
    let sw = taylor_expand(omega, order)?;
    let integrand = sw.mul(&shd).div_cancel(&sh)?.truncate(order - 1);
    Ok(integrand.integrate().exp())
}

/// Hyperbolic derivative `|omega'(z)| (1 - |z|^2) / (1 - |omega(z)|^2)` of
/// an analytic self-map of the disk.
pub fn hyperbolic_derivative(omega: &Expr, z: Complex64) -> Result<f64> {
    ensure_in_disk(z)?;
    let w = omega.eval(z)?;
    if w.norm() >= 1.0 - DILATATION_MARGIN {
        return Err(Error::NotSensePreserving {
            at: z,
            modulus: w.norm(),
        });
    }
    let wd = differentiate(omega).eval(z)?;
    Ok(wd.norm() * (1.0 - z.norm_sqr()) / (1.0 - w.norm_sqr()))
}

fn ensure_normalized(f: &LogharmonicMap, what: &str) -> Result<()> {
    if f.is_normalized()? {
        Ok(())
    } else {
        Err(Error::NormalizationViolated {
            detail: format!("{what} requires h(0) = g(0) = h'(0) = 1"),
        })
    }
}

/// Affine transform of `F = log f`: returns the harmonic map
/// `(F + s conj(F)) / (1 + s g'(0))`, normalized so its analytic part has
/// value 0 and derivative 1 at the origin.
pub fn affine_transform_log(f: &LogharmonicMap, s: Complex64) -> Result<HarmonicMap> {
    if s.norm() >= 1.0 {
        return Err(Error::DomainError {
            detail: format!("affine parameter {s} must lie in the open unit disk"),
        });
    }
    ensure_normalized(f, "the affine transform")?;
    let gd0 = f.g().log_derivative(Complex64::ZERO)?;
    let a = Complex64::ONE + s * gd0;
    if a.norm() < POLE_GUARD {
        return Err(Error::DegenerateFunction {
            detail: "affine normalization constant vanishes".into(),
        });
    }
    let hp = f.h().log_deriv_expr().clone();
    let gp = f.g().log_deriv_expr().clone();
    let h_deriv = expr::add(
        expr::mul(expr::con(a.inv()), hp.clone()),
        expr::mul(expr::con(s / a), gp.clone()),
    );
    let g_deriv = expr::add(
        expr::mul(expr::con((s / a).conj()), hp),
        expr::mul(expr::con(a.inv().conj()), gp),
    );
    let h0 = (f.h().log_origin()? + s * f.g().log_origin()?) / a;
    let g0 = (f.g().log_origin()? + s.conj() * f.h().log_origin()?) / a.conj();
    // omega_a = (a/conj(a)) (conj(s) + omega) / (1 + s omega); its modulus
    // equals |conj(s)+omega|/|1+s omega| < 1 whenever |s| < 1 and |omega| < 1.
    let w = f.omega_expr().clone();
    let omega = expr::mul(
        expr::con(a / a.conj()),
        expr::div(
            expr::add(expr::con(s.conj()), w.clone()),
            expr::add(expr::real(1.0), expr::mul(expr::con(s), w)),
        ),
    );
    HarmonicMap::from_derivatives_with_omega(h_deriv, g_deriv, h0, g0, omega)
}

/// Disk-automorphism transform of `F = log f`: returns the harmonic map
/// `(F(phi(z)) - F(phi(0))) / b` with `phi(z) = (z - alpha)/(1 - conj(alpha) z)`
/// and `b = F_z(phi(0)) phi'(0)`, normalized like the affine transform.
pub fn koebe_transform_log(f: &LogharmonicMap, alpha: Complex64) -> Result<HarmonicMap> {
    if alpha.norm() >= 1.0 {
        return Err(Error::DomainError {
            detail: format!("automorphism parameter {alpha} must lie in the open unit disk"),
        });
    }
    ensure_normalized(f, "the automorphism transform")?;
    let phi = automorphism(alpha);
    let phi_deriv = differentiate(&phi);
    // phi(0) = -alpha and phi'(0) = 1 - |alpha|^2.
    let b = f.h().log_derivative(-alpha)? * (1.0 - alpha.norm_sqr());
    if b.norm() < POLE_GUARD {
        return Err(Error::DegenerateFunction {
            detail: "automorphism normalization constant vanishes".into(),
        });
    }
    let pull = |part: &Expr| expr::mul(part.substitute(&phi), phi_deriv.clone());
    let h_deriv = expr::mul(expr::con(b.inv()), pull(f.h().log_deriv_expr()));
    let g_deriv = expr::mul(expr::con(b.inv().conj()), pull(f.g().log_deriv_expr()));
    let omega = expr::mul(expr::con(b / b.conj()), f.omega_expr().substitute(&phi));
    HarmonicMap::from_derivatives_with_omega(h_deriv, g_deriv, Complex64::ZERO, Complex64::ZERO, omega)
}

/// Construct `f = (H')^{lambda1} conj((G')^{lambda2})` on analytic branches.
/// When `H` and `G` coincide structurally the dilatation is exactly the
/// constant `lambda2/lambda1`.
pub fn power_construct(h_base: &Expr, g_base: &Expr, lambda1: f64, lambda2: f64) -> Result<LogharmonicMap> {
    for lambda in [lambda1, lambda2] {
        if !(lambda > 0.0 && lambda.is_finite()) {
            return Err(Error::InvalidExponent { value: lambda });
        }
    }
    let hd = differentiate(h_base);
    let gd = differentiate(g_base);
    for (name, d) in [("first", &hd), ("second", &gd)] {
        for zv in validation_points() {
            if !matches!(d.eval(zv), Ok(v) if v.norm() > POLE_GUARD) {
                return Err(Error::DegenerateFunction {
                    detail: format!("{name} base is not locally univalent near {zv}"),
                });
            }
        }
    }
    let h = AnalyticPart::from_power(hd, lambda1)?;
    let g = AnalyticPart::from_power(gd, lambda2)?;
    let omega = if h_base == g_base {
        expr::real(lambda2 / lambda1)
    } else {
        expr::div(g.log_deriv_expr().clone(), h.log_deriv_expr().clone())
    };
    Ok(LogharmonicMap::from_raw(h, g, omega))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parser::parse;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn sample_points(n: usize, radius: f64) -> Vec<Complex64> {
        (0..n)
            .map(|k| {
                let r = radius * (0.15 + 0.85 * (k as f64 * 0.37).fract());
                let th = 2.0 * std::f64::consts::PI * (k as f64 * 0.61803398875).fract();
                Complex64::from_polar(r, th)
            })
            .collect()
    }

    #[test]
    fn pre_schwarzian_of_cauchy_kernel() {
        let p = pre_schwarzian_analytic(&parse("1/(1-z)").unwrap()).unwrap();
        for zv in sample_points(20, 0.9) {
            let want = 2.0 / (Complex64::ONE - zv);
            assert!((p.eval(zv).unwrap() - want).norm() < 1e-12);
        }
    }

    #[test]
    fn pre_schwarzian_of_affine_is_zero() {
        let p = pre_schwarzian_analytic(&parse("z").unwrap()).unwrap();
        for zv in sample_points(10, 0.9) {
            assert!(p.eval(zv).unwrap().norm() < 1e-15);
        }
    }

    #[test]
    fn pre_schwarzian_of_koebe() {
        let p = pre_schwarzian_analytic(&parse("z/(1-z)^2").unwrap()).unwrap();
        for zv in sample_points(30, 0.85) {
            let want = (4.0 + 2.0 * zv) / ((Complex64::ONE + zv) * (Complex64::ONE - zv));
            assert!(
                (p.eval(zv).unwrap() - want).norm() < 1e-11,
                "at {zv}: {} vs {want}",
                p.eval(zv).unwrap()
            );
        }
    }

    #[test]
    fn pre_schwarzian_rejects_constant() {
        assert!(matches!(
            pre_schwarzian_analytic(&parse("3").unwrap()),
            Err(Error::DegenerateFunction { .. })
        ));
    }

    #[test]
    fn schwarzian_vanishes_for_mobius() {
        for src in ["z/(1+z)", "1/(1-z)"] {
            let s = schwarzian_analytic(&parse(src).unwrap()).unwrap();
            for zv in sample_points(50, 0.8) {
                assert!(s.eval(zv).unwrap().norm() < 1e-12, "{src} at {zv}");
            }
        }
    }

    #[test]
    fn schwarzian_of_exponential() {
        let s = schwarzian_analytic(&parse("exp(z)").unwrap()).unwrap();
        for zv in sample_points(20, 0.9) {
            assert!((s.eval(zv).unwrap() - c(-0.5, 0.0)).norm() < 1e-13);
        }
    }

    #[test]
    fn dilatation_of_known_pairs() {
        let w = dilatation(&parse("z/(1-z)").unwrap(), &parse("1/(1-z)").unwrap()).unwrap();
        for zv in sample_points(20, 0.9) {
            assert!((w.eval(zv).unwrap() - zv).norm() < 1e-12);
        }
        let w = dilatation(&parse("1/(1-z)").unwrap(), &parse("exp(-z)/(1-z)").unwrap()).unwrap();
        for zv in sample_points(20, 0.9) {
            assert!((w.eval(zv).unwrap() - zv).norm() < 1e-12);
        }
        let w = dilatation(&parse("1/(1-z)").unwrap(), &parse("1").unwrap()).unwrap();
        for zv in sample_points(10, 0.9) {
            assert!(w.eval(zv).unwrap().norm() < 1e-15);
        }
    }

    #[test]
    fn dilatation_rejects_expanding_quotient() {
        // g'/g = 3, h'/h = 1 gives a constant quotient 3 outside the disk.
        assert!(matches!(
            dilatation(&parse("exp(z)").unwrap(), &parse("exp(3*z)").unwrap()),
            Err(Error::NotSensePreserving { .. })
        ));
    }

    #[test]
    fn coanalytic_reconstruction() {
        let g = coanalytic_from_dilatation(&parse("1/(1-z)").unwrap(), &parse("z").unwrap(), 8)
            .unwrap();
        let want = taylor_expand(&parse("exp(-z)/(1-z)").unwrap(), 8).unwrap();
        for k in 0..=8 {
            assert!((g.coeff(k) - want.coeff(k)).norm() < 1e-12, "coefficient {k}");
        }

        let trivial =
            coanalytic_from_dilatation(&parse("1/(1-z)").unwrap(), &parse("0").unwrap(), 6)
                .unwrap();
        assert!((trivial.coeff(0) - Complex64::ONE).norm() < 1e-15);
        for k in 1..=6 {
            assert!(trivial.coeff(k).norm() < 1e-15);
        }

        // Analytic part with a simple zero at the origin; the cancellation
        // path must produce the geometric series.
        let g = coanalytic_from_dilatation(&parse("z/(1-z)").unwrap(), &parse("z").unwrap(), 8)
            .unwrap();
        for k in 0..=8 {
            assert!((g.coeff(k) - Complex64::ONE).norm() < 1e-12, "coefficient {k}");
        }
    }

    fn first_example() -> LogharmonicMap {
        LogharmonicMap::from_parts_with_omega(
            parse("1/(1-z)").unwrap(),
            parse("exp(-z)/(1-z)").unwrap(),
            parse("z").unwrap(),
        )
        .unwrap()
    }

    fn second_example() -> LogharmonicMap {
        LogharmonicMap::from_parts_with_omega(
            parse("z/(1-z)").unwrap(),
            parse("1/(1-z)").unwrap(),
            parse("z").unwrap(),
        )
        .unwrap()
    }

    #[test]
    fn logharmonic_pre_schwarzian_values() {
        let f = first_example();
        // Weighted modulus along the real axis is r^2 + 2r + 2.
        let r = 0.9;
        let v = f.pre_schwarzian(c(r, 0.0)).unwrap();
        let weighted = (1.0 - r * r) * v.norm();
        assert!((weighted - 4.61).abs() < 1e-9, "got {weighted}");

        // Degeneration: constant co-analytic part means P_f = P_h.
        let g1 = LogharmonicMap::from_parts(parse("1/(1-z)").unwrap(), parse("1").unwrap());
        let ph = pre_schwarzian_analytic(&parse("1/(1-z)").unwrap()).unwrap();
        for zv in sample_points(20, 0.9) {
            let a = g1.pre_schwarzian(zv).unwrap();
            let b = ph.eval(zv).unwrap();
            assert!((a - b).norm() < 1e-12);
        }

        let f2 = second_example();
        assert!((f2.pre_schwarzian(Complex64::ZERO).unwrap() - c(3.0, 0.0)).norm() < 1e-12);
    }

    #[test]
    fn psi_pre_schwarzian_closed_forms() {
        let f = first_example();
        let psi = f.psi_pre_schwarzian();
        for zv in sample_points(20, 0.9) {
            let want = (2.0 + zv) / (Complex64::ONE - zv);
            assert!((psi.eval(zv).unwrap() - want).norm() < 1e-11);
        }
        let f2 = second_example();
        let psi2 = f2.psi_pre_schwarzian();
        for zv in sample_points(20, 0.9) {
            let want = 3.0 / (Complex64::ONE - zv);
            assert!((psi2.eval(zv).unwrap() - want).norm() < 1e-11);
        }
    }

    #[test]
    fn jacobian_and_pde_residual() {
        let f = first_example();
        assert!((f.jacobian(Complex64::ZERO).unwrap() - 1.0).abs() < 1e-12);
        for zv in sample_points(100, 0.9) {
            assert!(f.jacobian(zv).unwrap() > 0.0);
            assert!(f.pde_residual(zv).unwrap() < 1e-10, "residual at {zv}");
        }
        // Constant co-analytic part: both sides of the equation vanish.
        let g1 = LogharmonicMap::from_parts(parse("1/(1-z)").unwrap(), parse("1").unwrap());
        for zv in sample_points(10, 0.9) {
            assert!(g1.pde_residual(zv).unwrap() < 1e-15);
        }
        // Negative control: halving the dilatation breaks the equation.
        let broken = LogharmonicMap::from_raw(
            AnalyticPart::from_expr(parse("1/(1-z)").unwrap()),
            AnalyticPart::from_expr(parse("exp(-z)/(1-z)").unwrap()),
            parse("z/2").unwrap(),
        );
        let worst = sample_points(100, 0.9)
            .into_iter()
            .map(|zv| broken.pde_residual(zv).unwrap())
            .fold(0.0f64, f64::max);
        assert!(worst > 1e-3, "corrupted dilatation went unnoticed: {worst}");
    }

    #[test]
    fn flags_reflect_the_map() {
        let f = first_example();
        let fl = f.flags();
        assert!(fl.h_locally_univalent && fl.h_nonvanishing);
        assert!(fl.g_nonvanishing && fl.sense_preserving);
        assert!(f.is_normalized().unwrap());

        let f2 = second_example();
        assert!(!f2.flags().h_nonvanishing, "h vanishes at the origin");
        assert!(f2.flags().sense_preserving);
        assert!(!f2.is_normalized().unwrap());
    }

    #[test]
    fn mismatched_dilatation_is_rejected() {
        assert!(matches!(
            LogharmonicMap::from_parts_with_omega(
                parse("1/(1-z)").unwrap(),
                parse("exp(-z)/(1-z)").unwrap(),
                parse("z/2").unwrap(),
            ),
            Err(Error::DegenerateFunction { .. })
        ));
    }

    #[test]
    fn dilatation_reconstruction_matches_closed_form() {
        let f = LogharmonicMap::from_dilatation(parse("1/(1-z)").unwrap(), parse("z").unwrap())
            .unwrap();
        let closed = parse("exp(-z)/(1-z)").unwrap();
        for zv in sample_points(15, 0.85) {
            let got = f.g().value(zv).unwrap();
            let want = closed.eval(zv).unwrap();
            assert!((got - want).norm() < 1e-9, "at {zv}: {got} vs {want}");
        }
        // Pre-Schwarzian agrees with the closed-part construction.
        let reference = first_example();
        for zv in sample_points(15, 0.9) {
            let a = f.pre_schwarzian(zv).unwrap();
            let b = reference.pre_schwarzian(zv).unwrap();
            assert!((a - b).norm() < 1e-10);
        }
    }

    #[test]
    fn vanishing_analytic_part_through_dilatation() {
        // h has a simple zero at 0; the reconstructed logarithmic derivative
        // of g is patched there and the pre-Schwarzian stays evaluable.
        let f = LogharmonicMap::from_dilatation(parse("z/(1-z)").unwrap(), parse("z").unwrap())
            .unwrap();
        assert!((f.pre_schwarzian(Complex64::ZERO).unwrap() - c(3.0, 0.0)).norm() < 1e-12);
        let reference = second_example();
        for zv in sample_points(15, 0.9) {
            let a = f.pre_schwarzian(zv).unwrap();
            let b = reference.pre_schwarzian(zv).unwrap();
            assert!((a - b).norm() < 1e-10);
        }
    }

    #[test]
    fn harmonic_pre_schwarzian_degenerations() {
        // Purely analytic: G' = 0.
        let f = HarmonicMap::from_derivatives(
            parse("1/(1-z)^2").unwrap(),
            parse("0").unwrap(),
            Complex64::ZERO,
            Complex64::ZERO,
        )
        .unwrap();
        let p = pre_schwarzian_analytic(&parse("z/(1-z)").unwrap()).unwrap();
        for zv in sample_points(20, 0.9) {
            assert!((f.pre_schwarzian(zv).unwrap() - p.eval(zv).unwrap()).norm() < 1e-12);
        }

        // Affine harmonic map: everything vanishes.
        let f = HarmonicMap::from_derivatives(
            parse("1").unwrap(),
            parse("0.5").unwrap(),
            Complex64::ZERO,
            Complex64::ZERO,
        )
        .unwrap();
        for zv in sample_points(20, 0.9) {
            assert!(f.pre_schwarzian(zv).unwrap().norm() < 1e-15);
        }

        // H' = 1/(1-z), dilatation z: at the origin only H''/H' survives.
        let f = HarmonicMap::from_derivatives(
            parse("1/(1-z)").unwrap(),
            parse("z/(1-z)").unwrap(),
            Complex64::ZERO,
            Complex64::ZERO,
        )
        .unwrap();
        assert!((f.pre_schwarzian(Complex64::ZERO).unwrap() - Complex64::ONE).norm() < 1e-14);
    }

    #[test]
    fn harmonic_schwarzian_reductions() {
        // G' = 0 reduces to the analytic Schwarzian.
        let f = HarmonicMap::from_derivatives(
            parse("exp(z)").unwrap(),
            parse("0").unwrap(),
            Complex64::ZERO,
            Complex64::ZERO,
        )
        .unwrap();
        for zv in sample_points(20, 0.9) {
            assert!((f.schwarzian(zv).unwrap() - c(-0.5, 0.0)).norm() < 1e-12);
        }

        // Mobius analytic part with constant dilatation: all terms vanish.
        let f = HarmonicMap::from_derivatives(
            parse("1/(1-z)^2").unwrap(),
            parse("0.3/(1-z)^2").unwrap(),
            Complex64::ZERO,
            Complex64::ZERO,
        )
        .unwrap();
        for zv in sample_points(20, 0.9) {
            assert!(f.schwarzian(zv).unwrap().norm() < 1e-13, "at {zv}");
        }
    }

    #[test]
    fn harmonic_schwarzian_matches_wirtinger_derivative_of_pre_schwarzian() {
        let f = first_example().log_map().unwrap();
        let step = 1e-5;
        for zv in sample_points(12, 0.75) {
            let v = zv.conj();
            let plus = f.pre_schwarzian_split(zv + step, v).unwrap();
            let minus = f.pre_schwarzian_split(zv - step, v).unwrap();
            let dp = (plus - minus) / (2.0 * step);
            let p = f.pre_schwarzian(zv).unwrap();
            let want = dp - 0.5 * p * p;
            let got = f.schwarzian(zv).unwrap();
            assert!((got - want).norm() < 1e-6, "at {zv}: {got} vs {want}");
        }
    }

    #[test]
    fn hyperbolic_derivative_values() {
        let id = parse("z").unwrap();
        for zv in sample_points(20, 0.95) {
            assert!((hyperbolic_derivative(&id, zv).unwrap() - 1.0).abs() < 1e-13);
        }
        let constant = parse("0.5").unwrap();
        for zv in sample_points(10, 0.9) {
            assert!(hyperbolic_derivative(&constant, zv).unwrap().abs() < 1e-15);
        }
        let sq = parse("z^2").unwrap();
        let v = hyperbolic_derivative(&sq, c(0.5, 0.0)).unwrap();
        assert!((v - 0.8).abs() < 1e-13, "got {v}");
    }

    #[test]
    fn power_construct_dilatations() {
        let koebe = parse("z/(1-z)^2").unwrap();
        let f = power_construct(&koebe, &koebe, 2.0, 1.0).unwrap();
        assert_eq!(f.omega_expr(), &expr::real(0.5), "structural constant");
        for zv in sample_points(10, 0.9) {
            assert!((f.omega_expr().eval(zv).unwrap() - c(0.5, 0.0)).norm() < 1e-15);
        }
        assert!(f.flags().sense_preserving);

        // Co-analytic base z: g = 1 and the map is purely analytic.
        let f = power_construct(&koebe, &parse("z").unwrap(), 1.0, 1.0).unwrap();
        for zv in sample_points(10, 0.8) {
            assert!((f.g().value(zv).unwrap() - Complex64::ONE).norm() < 1e-12);
        }

        // Equal exponents with equal bases: modulus-one dilatation, flagged.
        let f = power_construct(&koebe, &koebe, 1.0, 1.0).unwrap();
        assert!(!f.flags().sense_preserving);
        let v = f.value(c(0.5, 0.0)).unwrap();
        assert!((v.norm() - 144.0).abs() < 1e-9, "got {}", v.norm());

        assert!(matches!(
            power_construct(&koebe, &koebe, -1.0, 1.0),
            Err(Error::InvalidExponent { .. })
        ));
    }

    #[test]
    fn power_construct_growth_values() {
        // lambda1 = 1, lambda2 = 0.5 at r = 0.5: |f| = 12^(3/2).
        let koebe = parse("z/(1-z)^2").unwrap();
        let f = power_construct(&koebe, &koebe, 1.0, 0.5).unwrap();
        let v = f.value(c(0.5, 0.0)).unwrap().norm();
        assert!((v - 12.0f64.powf(1.5)).abs() < 1e-9, "got {v}");
        assert!(!f.is_normalized().unwrap());
    }

    #[test]
    fn composition_preserves_values_and_rule() {
        let f = first_example();
        let phi = automorphism(c(0.3, 0.1));
        let composed = f.compose_with(&phi).unwrap();
        let phi_d = differentiate(&phi);
        let p_phi = pre_schwarzian_analytic(&phi).unwrap();
        for zv in sample_points(25, 0.8) {
            let w = phi.eval(zv).unwrap();
            let direct = f.value(w).unwrap();
            let through = composed.value(zv).unwrap();
            assert!((direct - through).norm() < 1e-10);
            let lhs = composed.pre_schwarzian(zv).unwrap();
            let rhs =
                f.pre_schwarzian(w).unwrap() * phi_d.eval(zv).unwrap() + p_phi.eval(zv).unwrap();
            assert!((lhs - rhs).norm() < 1e-9, "at {zv}: {lhs} vs {rhs}");
        }
    }

    #[test]
    fn log_map_weighted_pre_schwarzian_is_constant_for_first_example() {
        // For h = 1/(1-z), dilatation z, the weighted pre-Schwarzian of
        // log f has modulus (1-|z|^2)|1/(1-z) - conj(z)/(1-|z|^2)|
        // = |1-conj(z)|/|1-z| = 1 everywhere.
        let f = first_example().log_map().unwrap();
        for zv in sample_points(30, 0.95) {
            let v = (1.0 - zv.norm_sqr()) * f.pre_schwarzian(zv).unwrap().norm();
            assert!((v - 1.0).abs() < 1e-12, "at {zv}: {v}");
        }
    }

    #[test]
    fn affine_transform_normalization() {
        let f = first_example();
        // s = 0 is the identity on the analytic part.
        let t = affine_transform_log(&f, Complex64::ZERO).unwrap();
        for zv in sample_points(15, 0.9) {
            let a = t.h_deriv_expr().eval(zv).unwrap();
            let b = f.h().log_deriv_expr().eval(zv).unwrap();
            assert!((a - b).norm() < 1e-12);
        }

        let t = affine_transform_log(&f, c(0.3, 0.0)).unwrap();
        assert!(t.value(Complex64::ZERO).unwrap().norm() < 1e-10);
        assert!((t.h_deriv_expr().eval(Complex64::ZERO).unwrap() - Complex64::ONE).norm() < 1e-10);

        // Dilatation of the transform stays inside the disk.
        for zv in sample_points(40, 0.95) {
            assert!(t.omega_expr().eval(zv).unwrap().norm() < 1.0);
        }

        assert!(matches!(
            affine_transform_log(&second_example(), c(0.3, 0.0)),
            Err(Error::NormalizationViolated { .. })
        ));
    }

    #[test]
    fn koebe_transform_normalization() {
        let f = first_example();
        // alpha = 0: identity automorphism, b = h'(0)/h(0) = 1.
        let t = koebe_transform_log(&f, Complex64::ZERO).unwrap();
        let logf = f.log_map().unwrap();
        for zv in sample_points(15, 0.9) {
            let a = t.h_deriv_expr().eval(zv).unwrap();
            let b = logf.h_deriv_expr().eval(zv).unwrap();
            assert!((a - b).norm() < 1e-12);
        }

        let t = koebe_transform_log(&f, c(0.4, 0.0)).unwrap();
        assert!(t.value(Complex64::ZERO).unwrap().norm() < 1e-12);
        assert!((t.h_deriv_expr().eval(Complex64::ZERO).unwrap() - Complex64::ONE).norm() < 1e-10);
        for zv in sample_points(40, 0.95) {
            assert!(t.omega_expr().eval(zv).unwrap().norm() < 1.0);
        }
    }
}

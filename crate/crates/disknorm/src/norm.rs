//! Weighted supremum estimation over the unit disk.
//!
//! The engine samples an objective on a polar ladder whose radii crowd the
//! boundary geometrically, keeps a running maximum per level, then polishes
//! the best sample with derivative-free golden-section passes in angle and
//! in radius (the latter in the boundary-resolving coordinate
//! `s = -ln(1-r)`). Estimates are certified lower bounds: every reported
//! value was attained at a sampled point.

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::expr::{differentiate, Expr};
use crate::maps::{validation_points, HarmonicMap, LogharmonicMap};
use crate::tol::DILATATION_MARGIN;

/// Sampling and refinement parameters for [`weighted_sup`].
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct SupConfig {
    /// Number of radial levels; level `k` sits at `r = 1 - 2^{-k/2}`,
    /// capped at `r_max`.
    pub radial_levels: usize,
    /// Largest radius ever sampled.
    pub r_max: f64,
    /// Angle count at the innermost levels, doubled every four levels.
    pub angular_base: usize,
    /// Refinement effort: each of the two pattern-search passes runs at most
    /// `5 * refine_iters` batches of eight probes.
    pub refine_iters: usize,
    /// Convergence threshold between consecutive level maxima.
    pub abs_tol: f64,
}

impl Default for SupConfig {
    fn default() -> Self {
        SupConfig {
            radial_levels: 24,
            r_max: 1.0 - 1e-8,
            angular_base: 128,
            refine_iters: 60,
            abs_tol: 1e-4,
        }
    }
}

impl SupConfig {
    fn level_radius(&self, k: usize) -> f64 {
        (1.0 - (-(k as f64) / 2.0).exp2()).min(self.r_max)
    }

    fn level_angles(&self, k: usize) -> usize {
        if k == 0 {
            // level 0 is the origin; one sample suffices
            1
        } else {
            self.angular_base << ((k / 4).min(20))
        }
    }
}

/// Which norm an estimate measures.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum NormKind {
    PreschwarzianAnalytic,
    PreschwarzianLogharmonic,
    PreschwarzianHarmonic,
    SchwarzianAnalytic,
    SchwarzianHarmonic,
    BlochAnalytic,
    BlochLogharmonic,
    HyperbolicSup,
}

/// Result of a supremum estimation: the best weighted sample, where it was
/// found, the per-level running maxima, and bookkeeping flags.
///
/// `value` is a lower bound on the true supremum; `converged` reports that
/// the last two level maxima agree within `abs_tol` and that no more than
/// 1% of samples were skipped over poles.
#[derive(Clone, Debug, Serialize)]
pub struct NormEstimate {
    pub value: f64,
    pub r: f64,
    pub theta: f64,
    pub converged: bool,
    pub levels: Vec<f64>,
    pub skipped: usize,
    pub kind: NormKind,
}

/// Estimate `sup (1-|z|^2)^weight_power * objective(z)` over the disk.
///
/// Samples where the objective errors or is non-finite are skipped and
/// counted. The scan order is radius-major, angle-minor, and ties keep the
/// first maximal sample, so the result is deterministic for a fixed
/// configuration.
pub fn weighted_sup<F>(
    objective: F,
    weight_power: u8,
    cfg: &SupConfig,
    kind: NormKind,
) -> Result<NormEstimate>
where
    F: Fn(Complex64) -> Result<f64>,
{
    // (1 - r)(1 + r) instead of 1 - r^2: the subtraction 1 - r is exact for
    // r in [0.5, 1], so the weight keeps full relative accuracy within a few
    // ulps of the boundary, where 1 - r*r loses half its digits.
    let weight = |r: f64| -> f64 {
        match weight_power {
            0 => 1.0,
            1 => (1.0 - r) * (1.0 + r),
            _ => {
                let w = (1.0 - r) * (1.0 + r);
                w * w
            }
        }
    };
    let sample_z = |z: Complex64| -> Option<f64> {
        let v = objective(z).ok()?;
        let weighted = v * weight(z.norm());
        weighted.is_finite().then_some(weighted)
    };
    let sample = |r: f64, theta: f64| -> Option<f64> { sample_z(Complex64::from_polar(r, theta)) };

    let mut best_value = f64::NEG_INFINITY;
    let mut best_r = 0.0f64;
    let mut best_theta = 0.0f64;
    let mut levels = Vec::with_capacity(cfg.radial_levels);
    let mut skipped = 0usize;
    let mut total = 0usize;

    for k in 0..cfg.radial_levels {
        let r = cfg.level_radius(k);
        let m = cfg.level_angles(k);
        for j in 0..m {
            let theta = 2.0 * std::f64::consts::PI * j as f64 / m as f64;
            total += 1;
            match sample(r, theta) {
                Some(v) if v > best_value => {
                    best_value = v;
                    best_r = r;
                    best_theta = theta;
                }
                Some(_) => {}
                None => skipped += 1,
            }
        }
        levels.push(best_value);
    }

    if !best_value.is_finite() {
        return Err(Error::NoFiniteSamples);
    }

    // Polish with a pattern search that walks the disk in Moebius steps:
    // candidate = (c + u)/(1 + conj(c) u) with |u| = tau. A fixed tau covers a
    // fixed hyperbolic distance everywhere, so the walk acts like a Cartesian
    // search near the origin (where polar steps degenerate: theta moves do not
    // move the point) and near the boundary its angular reach shrinks like
    // 1 - r while its radial reach stays a constant factor in 1 - r, which is
    // what it takes to track maximizer curves that drift in angle as r grows.
    // Probe eight directions, recenter on improvement (expanding the step),
    // contract on failure.
    let clamp_disk = |z: Complex64| -> Complex64 {
        let r = z.norm();
        if r > cfg.r_max {
            z * (cfg.r_max / r)
        } else {
            z
        }
    };
    let mut center = Complex64::from_polar(best_r, best_theta);
    let mut tau = 0.25f64;
    for _ in 0..cfg.refine_iters.saturating_mul(5) {
        if tau < 1e-14 {
            break;
        }
        let mut improved = false;
        for k in 0..8 {
            let u = Complex64::from_polar(tau, std::f64::consts::FRAC_PI_4 * k as f64);
            let cand = clamp_disk((center + u) / (Complex64::ONE + center.conj() * u));
            if let Some(v) = sample_z(cand) {
                if v > best_value {
                    best_value = v;
                    center = cand;
                    improved = true;
                }
            }
        }
        if improved {
            tau = (tau * 2.0).min(0.8);
        } else {
            tau *= 0.5;
        }
    }
    best_theta = center.arg();

    // Second pass in (theta, s) with s = -ln(1-r) and independently adapted
    // step sizes. The Moebius compass ties its angular reach to its radial
    // reach, so along a boundary-attained ridge whose gain decays like 1 - r
    // its lateral error stays O(tau^2) and the walk stalls short of r_max;
    // letting the radial stride stay large while the angular stride contracts
    // to the ridge drift rides such ridges the rest of the way out.
    let s_of = |r: f64| -(1.0 - r).ln();
    let r_of = |s: f64| 1.0 - (-s).exp();
    let s_max = s_of(cfg.r_max);
    let mut center_s = s_of(center.norm());
    let dtheta0 = std::f64::consts::PI / cfg.angular_base.max(1) as f64;
    let ds0 = std::f64::consts::LN_2 * 0.5;
    let mut dtheta = dtheta0;
    let mut ds = ds0;
    for _ in 0..cfg.refine_iters.saturating_mul(5) {
        if dtheta < 1e-12 && ds < 1e-12 {
            break;
        }
        let mut improved = false;
        for (i, j) in [
            (1.0, 0.0),
            (-1.0, 0.0),
            (0.0, 1.0),
            (0.0, -1.0),
            (1.0, 1.0),
            (-1.0, 1.0),
            (1.0, -1.0),
            (-1.0, -1.0),
        ] {
            let theta = best_theta + i * dtheta;
            let s = (center_s + j * ds).clamp(0.0, s_max);
            if let Some(v) = sample(r_of(s), theta) {
                if v > best_value {
                    best_value = v;
                    best_theta = theta;
                    center_s = s;
                    improved = true;
                }
            }
        }
        if improved {
            dtheta = (dtheta * 2.0).min(2.0 * dtheta0);
            ds = (ds * 2.0).min(4.0 * ds0);
        } else {
            dtheta *= 0.5;
            ds *= 0.5;
        }
    }
    best_r = r_of(center_s);
    // Boundary probe: suprema attained only in the limit live at r_max.
    if let Some(v) = sample(cfg.r_max, best_theta) {
        if v > best_value {
            best_value = v;
            best_r = cfg.r_max;
        }
    }

    let trace_settled = levels.len() >= 2
        && (levels[levels.len() - 1] - levels[levels.len() - 2]).abs() < cfg.abs_tol;
    let few_skips = skipped * 100 <= total;
    Ok(NormEstimate {
        value: best_value,
        r: best_r,
        theta: best_theta.rem_euclid(2.0 * std::f64::consts::PI),
        converged: trace_settled && few_skips,
        levels,
        skipped,
        kind,
    })
}

/// Bloch seminorm `sup (1-|z|^2) |u'(z)|` of an analytic function.
pub fn bloch_seminorm_analytic(u: &Expr, cfg: &SupConfig) -> Result<NormEstimate> {
    let du = differentiate(u);
    weighted_sup(
        |z| Ok(du.eval(z)?.norm()),
        1,
        cfg,
        NormKind::BlochAnalytic,
    )
}

/// Bloch seminorm `sup (1-|z|^2) (|h'/h| + |g'/g|)` of a nonvanishing
/// logharmonic map, together with the norm `|f(0)| + seminorm`.
pub fn logharmonic_bloch_norm(
    f: &LogharmonicMap,
    cfg: &SupConfig,
) -> Result<(NormEstimate, f64)> {
    let f0 = f.value(Complex64::ZERO)?;
    let estimate = weighted_sup(
        |z| Ok(f.h().log_derivative(z)?.norm() + f.g().log_derivative(z)?.norm()),
        1,
        cfg,
        NormKind::BlochLogharmonic,
    )?;
    let norm = f0.norm() + estimate.value;
    Ok((estimate, norm))
}

/// What a pre-Schwarzian norm is taken of.
pub enum NormTarget<'a> {
    /// A locally univalent analytic function (the norm of `h''/h'`).
    Analytic(&'a Expr),
    Logharmonic(&'a LogharmonicMap),
    Harmonic(&'a HarmonicMap),
}

/// Pre-Schwarzian norm `sup (1-|z|^2) |P(z)|`, dispatching on the map kind.
pub fn pre_schwarzian_norm(target: NormTarget<'_>, cfg: &SupConfig) -> Result<NormEstimate> {
    match target {
        NormTarget::Analytic(h) => {
            let p = crate::maps::pre_schwarzian_analytic(h)?;
            weighted_sup(
                |z| Ok(p.eval(z)?.norm()),
                1,
                cfg,
                NormKind::PreschwarzianAnalytic,
            )
        }
        NormTarget::Logharmonic(f) => weighted_sup(
            |z| Ok(f.pre_schwarzian(z)?.norm()),
            1,
            cfg,
            NormKind::PreschwarzianLogharmonic,
        ),
        NormTarget::Harmonic(m) => weighted_sup(
            |z| Ok(m.pre_schwarzian(z)?.norm()),
            1,
            cfg,
            NormKind::PreschwarzianHarmonic,
        ),
    }
}

/// What a Schwarzian norm is taken of. Logharmonic maps are intentionally
/// absent: their Schwarzian is defined through the harmonic `log f`.
pub enum SchwarzianTarget<'a> {
    Analytic(&'a Expr),
    Harmonic(&'a HarmonicMap),
}

/// Schwarzian norm `sup (1-|z|^2)^2 |S(z)|`.
pub fn schwarzian_norm(target: SchwarzianTarget<'_>, cfg: &SupConfig) -> Result<NormEstimate> {
    match target {
        SchwarzianTarget::Analytic(h) => {
            let s = crate::maps::schwarzian_analytic(h)?;
            weighted_sup(
                |z| Ok(s.eval(z)?.norm()),
                2,
                cfg,
                NormKind::SchwarzianAnalytic,
            )
        }
        SchwarzianTarget::Harmonic(m) => weighted_sup(
            |z| Ok(m.schwarzian(z)?.norm()),
            2,
            cfg,
            NormKind::SchwarzianHarmonic,
        ),
    }
}

/// Supremum of the hyperbolic derivative
/// `|omega'(z)| (1-|z|^2) / (1-|omega(z)|^2)` of an analytic self-map; at
/// most 1 by the Schwarz-Pick lemma, with equality for automorphisms.
pub fn hyperbolic_sup(omega: &Expr, cfg: &SupConfig) -> Result<NormEstimate> {
    for zv in validation_points() {
        match omega.eval(zv) {
            Ok(w) if w.norm() < 1.0 => {}
            Ok(w) => {
                return Err(Error::NotSensePreserving {
                    at: zv,
                    modulus: w.norm(),
                })
            }
            Err(e) => return Err(e.into()),
        }
    }
    let wd = differentiate(omega);
    // The quotient (1-|z|^2)/(1-|omega|^2) suffers catastrophic cancellation
    // within ~1e-8 of the boundary, enough to push a quantity that is exactly
    // 1 a few 1e-9 above it. Capping the search radius at 1e-6 inside the
    // boundary keeps rounding noise orders of magnitude below that while
    // changing genuine suprema (attained radially in the limit) by O(1e-6)
    // at most; the factored 1 - r form is exact for r >= 1/2.
    let mut capped = *cfg;
    capped.r_max = cfg.r_max.min(1.0 - 1e-6);
    weighted_sup(
        |z| {
            let w = omega.eval(z)?;
            let rw = w.norm();
            if rw >= 1.0 - DILATATION_MARGIN {
                return Err(Error::NotSensePreserving { at: z, modulus: rw });
            }
            let rz = z.norm();
            Ok(wd.eval(z)?.norm() * ((1.0 - rz) * (1.0 + rz)) / ((1.0 - rw) * (1.0 + rw)))
        },
        0,
        &capped,
        NormKind::HyperbolicSup,
    )
}

/// Evaluate the weighted objective over an `radii x angles` polar grid
/// (radial ladder capped at `r_max`), for plot-ready dumps. Unevaluable
/// samples yield NaN so the row count stays `radii * angles`.
pub fn sample_grid<F>(
    objective: F,
    weight_power: u8,
    radii: usize,
    angles: usize,
    r_max: f64,
) -> Vec<(f64, f64, f64)>
where
    F: Fn(Complex64) -> Result<f64>,
{
    let weight = |r: f64| (1.0 - r * r).powi(weight_power as i32);
    let mut rows = Vec::with_capacity(radii * angles);
    for k in 0..radii {
        let r = (1.0 - (-(k as f64) / 2.0).exp2()).min(r_max);
        for j in 0..angles {
            let theta = 2.0 * std::f64::consts::PI * j as f64 / angles as f64;
            let value = objective(Complex64::from_polar(r, theta))
                .ok()
                .map_or(f64::NAN, |v| v * weight(r));
            rows.push((r, theta, value));
        }
    }
    rows
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr;
    use crate::parser::parse;

    fn cfg() -> SupConfig {
        SupConfig::default()
    }

    #[test]
    fn pre_schwarzian_norm_of_exponential() {
        let h = parse("exp(z)").unwrap();
        let est = pre_schwarzian_norm(NormTarget::Analytic(&h), &cfg()).unwrap();
        assert!((est.value - 1.0).abs() < 1e-9, "got {}", est.value);
        assert_eq!(est.r, 0.0);
        assert!(est.converged);
        assert_eq!(est.skipped, 0);
    }

    #[test]
    fn weighted_sup_of_known_quotient() {
        // For p' = exp(-z)/(1-z)^3 the quotient p''/p' is (2+z)/(1-z),
        // whose weighted supremum is 6 in the boundary limit.
        let deriv = parse("exp(-z)/(1-z)^3").unwrap();
        let p = expr::log_derivative(&deriv);
        let est = weighted_sup(
            |z| Ok(p.eval(z)?.norm()),
            1,
            &cfg(),
            NormKind::PreschwarzianAnalytic,
        )
        .unwrap();
        assert!((est.value - 6.0).abs() < 1e-4, "got {}", est.value);
        assert!(est.r > 0.999);
    }

    #[test]
    fn logharmonic_pre_schwarzian_norm() {
        let f = LogharmonicMap::from_parts_with_omega(
            parse("1/(1-z)").unwrap(),
            parse("exp(-z)/(1-z)").unwrap(),
            parse("z").unwrap(),
        )
        .unwrap();
        let est = pre_schwarzian_norm(NormTarget::Logharmonic(&f), &cfg()).unwrap();
        assert!((est.value - 5.0).abs() < 1e-3, "got {}", est.value);
        assert_eq!(est.skipped, 0);
    }

    #[test]
    fn bloch_seminorms() {
        let u = parse("-log(1-z)").unwrap();
        let est = bloch_seminorm_analytic(&u, &cfg()).unwrap();
        assert!((est.value - 2.0).abs() < 1e-4, "got {}", est.value);

        let linear = parse("z").unwrap();
        let est = bloch_seminorm_analytic(&linear, &cfg()).unwrap();
        assert!((est.value - 1.0).abs() < 1e-12, "got {}", est.value);
        assert_eq!(est.r, 0.0);
    }

    #[test]
    fn logharmonic_bloch_values() {
        let f = LogharmonicMap::from_parts(parse("1/(1-z)").unwrap(), parse("1").unwrap());
        let (semi, norm) = logharmonic_bloch_norm(&f, &cfg()).unwrap();
        assert!((semi.value - 2.0).abs() < 1e-4, "got {}", semi.value);
        assert!((norm - 3.0).abs() < 1e-4, "got {norm}");

        let f = LogharmonicMap::from_parts(parse("exp(z)").unwrap(), parse("1").unwrap());
        let (semi, norm) = logharmonic_bloch_norm(&f, &cfg()).unwrap();
        assert!((semi.value - 1.0).abs() < 1e-9);
        assert!((norm - 2.0).abs() < 1e-9);
    }

    #[test]
    fn schwarzian_norms() {
        let koebe = parse("z/(1-z)^2").unwrap();
        let est = schwarzian_norm(SchwarzianTarget::Analytic(&koebe), &cfg()).unwrap();
        assert!((est.value - 6.0).abs() < 1e-3, "got {}", est.value);
        assert!(est.converged);

        let e = parse("exp(z)").unwrap();
        let est = schwarzian_norm(SchwarzianTarget::Analytic(&e), &cfg()).unwrap();
        assert!((est.value - 0.5).abs() < 1e-6, "got {}", est.value);
        assert_eq!(est.r, 0.0);

        let mobius = parse("z/(1+z)").unwrap();
        let est = schwarzian_norm(SchwarzianTarget::Analytic(&mobius), &cfg()).unwrap();
        assert!(est.value < 1e-12, "got {}", est.value);
    }

    #[test]
    fn hyperbolic_sup_values() {
        let est = hyperbolic_sup(&parse("z").unwrap(), &cfg()).unwrap();
        assert!((est.value - 1.0).abs() < 1e-12, "got {}", est.value);

        let est = hyperbolic_sup(&parse("0.5").unwrap(), &cfg()).unwrap();
        assert!(est.value.abs() < 1e-15);

        let est = hyperbolic_sup(&parse("z^2").unwrap(), &cfg()).unwrap();
        assert!((est.value - 1.0).abs() < 1e-4, "got {}", est.value);
        assert!(est.value <= 1.0 + 1e-9, "Schwarz-Pick cap violated");

        assert!(matches!(
            hyperbolic_sup(&parse("2*z").unwrap(), &cfg()),
            Err(Error::NotSensePreserving { .. })
        ));
    }

    #[test]
    fn zero_objective() {
        let est = weighted_sup(|_| Ok(0.0), 1, &cfg(), NormKind::BlochAnalytic).unwrap();
        assert_eq!(est.value, 0.0);
        assert!(est.converged);
    }

    #[test]
    fn trace_is_nondecreasing() {
        let f = LogharmonicMap::from_parts_with_omega(
            parse("1/(1-z)").unwrap(),
            parse("exp(-z)/(1-z)").unwrap(),
            parse("z").unwrap(),
        )
        .unwrap();
        let est = pre_schwarzian_norm(NormTarget::Logharmonic(&f), &cfg()).unwrap();
        for pair in est.levels.windows(2) {
            assert!(pair[0] <= pair[1]);
        }
        assert!(est.value >= *est.levels.last().unwrap());
    }

    #[test]
    fn estimates_are_deterministic() {
        let u = parse("-log(1-z)").unwrap();
        let a = bloch_seminorm_analytic(&u, &cfg()).unwrap();
        let b = bloch_seminorm_analytic(&u, &cfg()).unwrap();
        assert_eq!(a.value.to_bits(), b.value.to_bits());
        assert_eq!(a.r.to_bits(), b.r.to_bits());
        assert_eq!(a.theta.to_bits(), b.theta.to_bits());
        assert_eq!(a.levels.len(), b.levels.len());
    }

    #[test]
    fn all_skipped_is_an_error() {
        let err = weighted_sup(
            |z| -> Result<f64> {
                Err(Error::Eval(crate::error::EvalError::PoleEncountered { at: z }))
            },
            1,
            &cfg(),
            NormKind::BlochAnalytic,
        )
        .unwrap_err();
        assert!(matches!(err, Error::NoFiniteSamples));
    }

    #[test]
    fn grid_rows_and_values() {
        let p = parse("2/(1-z)").unwrap();
        let rows = sample_grid(|z| Ok(p.eval(z)?.norm()), 1, 24, 128, 1.0 - 1e-8);
        assert_eq!(rows.len(), 24 * 128);
        let max = rows.iter().map(|r| r.2).fold(f64::NEG_INFINITY, f64::max);
        assert!((3.9..=4.0001).contains(&max), "got {max}");
        let single = sample_grid(|z| Ok(p.eval(z)?.norm()), 1, 1, 1, 0.9);
        assert_eq!(single.len(), 1);
        assert_eq!(single[0].0, 0.0);
    }
}

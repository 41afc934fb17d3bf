//! Named example maps with their known norm values and bounds.
//!
//! Every entry carries the quantities that are known for it in closed form,
//! each tagged as an exact value or a one-sided bound, so the verification
//! suite can regress against them generically.

use crate::error::{Error, Result};
use crate::expr::{self, Expr};
use crate::maps::{power_construct, LogharmonicMap};
use crate::parser::parse;
use crate::theorems;

/// How an expected quantity constrains a computed one.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum BoundKind {
    /// `|computed - value| <= tol`.
    Exact { tol: f64 },
    /// `computed <= value + tol`.
    UpperBound { tol: f64 },
    /// `computed >= value - tol`.
    LowerBound { tol: f64 },
}

/// A named quantity with its known value or bound and a note on where the
/// number comes from.
#[derive(Clone, Debug)]
pub struct ExpectedQuantity {
    pub name: &'static str,
    pub value: f64,
    pub kind: BoundKind,
    pub note: &'static str,
}

impl ExpectedQuantity {
    /// Whether `computed` satisfies this expectation.
    pub fn holds(&self, computed: f64) -> bool {
        match self.kind {
            BoundKind::Exact { tol } => (computed - self.value).abs() <= tol,
            BoundKind::UpperBound { tol } => computed <= self.value + tol,
            BoundKind::LowerBound { tol } => computed >= self.value - tol,
        }
    }
}

/// A catalog entry: the map plus everything known about it.
pub struct CatalogEntry {
    pub name: String,
    pub map: LogharmonicMap,
    pub expected: Vec<ExpectedQuantity>,
}

fn exact(name: &'static str, value: f64, tol: f64, note: &'static str) -> ExpectedQuantity {
    ExpectedQuantity {
        name,
        value,
        kind: BoundKind::Exact { tol },
        note,
    }
}

fn upper(name: &'static str, value: f64, tol: f64, note: &'static str) -> ExpectedQuantity {
    ExpectedQuantity {
        name,
        value,
        kind: BoundKind::UpperBound { tol },
        note,
    }
}

fn lower(name: &'static str, value: f64, tol: f64, note: &'static str) -> ExpectedQuantity {
    ExpectedQuantity {
        name,
        value,
        kind: BoundKind::LowerBound { tol },
        note,
    }
}

fn must_parse(src: &str) -> Expr {
    parse(src).expect("builtin expression")
}

fn sharpness_example_one() -> Result<CatalogEntry> {
    let map = LogharmonicMap::from_parts_with_omega(
        must_parse("1/(1-z)"),
        must_parse("exp(-z)/(1-z)"),
        must_parse("z"),
    )?;
    Ok(CatalogEntry {
        name: "thm31_ex1".into(),
        map,
        expected: vec![
            exact(
                "pre_schwarzian_norm",
                5.0,
                1e-3,
                "closed form: weighted modulus r^2+2r+2 on the real axis",
            ),
            exact(
                "psi_pre_schwarzian_norm",
                6.0,
                1e-3,
                "closed form: weighted modulus of (2+z)/(1-z) peaks at (1+r)(2+r)",
            ),
            exact("norm_gap", 1.0, 2e-3, "difference of the two norms above"),
            exact(
                "bloch_log_h",
                2.0,
                1e-3,
                "sup (1-r^2)/(1-r) = 1+r over the real axis",
            ),
        ],
    })
}

fn sharpness_example_two() -> Result<CatalogEntry> {
    let map = LogharmonicMap::from_parts_with_omega(
        must_parse("z/(1-z)"),
        must_parse("1/(1-z)"),
        must_parse("z"),
    )?;
    Ok(CatalogEntry {
        name: "thm31_ex2".into(),
        map,
        expected: vec![
            exact(
                "pre_schwarzian_norm",
                5.0,
                1e-3,
                "same weighted profile as the first sharpness example",
            ),
            exact(
                "psi_pre_schwarzian_norm",
                6.0,
                1e-3,
                "weighted modulus of 3/(1-z) peaks at 3(1+r)",
            ),
            exact("norm_gap", 1.0, 2e-3, "difference of the two norms above"),
        ],
    })
}

fn extremal_family(t: f64) -> Result<CatalogEntry> {
    if !(t > 0.0 && t < 1.0) {
        return Err(Error::DomainError {
            detail: format!("family parameter t = {t} must lie in (0, 1)"),
        });
    }
    // g(z) = (1-z) (1-tz)^{-(t+1)/t}; its logarithmic derivative is the
    // partial-fraction form (t+1)/(1-tz) - 1/(1-z), and the dilatation of
    // h = 1/(1-z) paired with it is the automorphism (t-z)/(1-tz).
    let g = expr::mul(
        expr::sub(expr::real(1.0), expr::z()),
        expr::rpow(
            expr::sub(expr::real(1.0), expr::mul(expr::real(t), expr::z())),
            -(t + 1.0) / t,
        ),
    );
    let omega = expr::div(
        expr::sub(expr::real(t), expr::z()),
        expr::sub(expr::real(1.0), expr::mul(expr::real(t), expr::z())),
    );
    let map = LogharmonicMap::from_parts_with_omega(must_parse("1/(1-z)"), g, omega)?;
    Ok(CatalogEntry {
        name: format!("thm36_family({t})"),
        map,
        expected: vec![
            exact(
                "analytic_pre_schwarzian_norm",
                4.0,
                1e-3,
                "sup (1-r^2) * 2/(1-r) = 2(1+r) for h = 1/(1-z)",
            ),
            exact(
                "bloch_log_g",
                2.0,
                1e-3,
                "weighted |g'/g| peaks at 2 on the real axis for every t",
            ),
            lower(
                "pre_schwarzian_norm",
                theorems::n_t(t).expect("t validated above"),
                1e-3,
                "interior maximum of the weighted profile at the extremal radius",
            ),
            upper(
                "pre_schwarzian_norm",
                7.0,
                1e-3,
                "general bound for maps with Mobius dilatation and this h",
            ),
        ],
    })
}

fn koebe_power(lambda1: f64, lambda2: f64) -> Result<CatalogEntry> {
    let koebe = must_parse("z/(1-z)^2");
    let map = power_construct(&koebe, &koebe, lambda1, lambda2)?;
    Ok(CatalogEntry {
        name: format!("koebe_power({lambda1},{lambda2})"),
        map,
        expected: vec![
            exact(
                "distortion_sup",
                6.0 * lambda1,
                1e-3,
                "sup (1-|z|^2) |f_z/f| for the Koebe-power extremal",
            ),
            exact(
                "norm_gap",
                0.0,
                2e-3,
                "constant dilatation: the anti-analytic correction vanishes",
            ),
        ],
    })
}

fn exponential_entry(name: &str) -> Result<CatalogEntry> {
    let map = LogharmonicMap::from_parts(must_parse("exp(z)"), must_parse("1"));
    Ok(CatalogEntry {
        name: name.into(),
        map,
        expected: vec![
            exact(
                "pre_schwarzian_norm",
                1.0,
                1e-3,
                "P = 1 identically; the weight peaks at the origin",
            ),
            exact(
                "schwarzian_norm",
                0.5,
                1e-3,
                "S = -1/2 identically; the squared weight peaks at the origin",
            ),
            exact("bloch_seminorm", 1.0, 1e-3, "|h'/h| = 1 with g constant"),
            exact("bloch_norm", 2.0, 1e-3, "|f(0)| = 1 plus the seminorm"),
        ],
    })
}

/// Look up a catalog entry by name. Parameterized names take literal
/// arguments: `thm36_family(0.5)`, `koebe_power(1,0.5)`.
pub fn catalog(name: &str) -> Result<CatalogEntry> {
    let unknown = || Error::UnknownCatalogName {
        name: name.to_string(),
    };
    match name.trim() {
        "thm31_ex1" => sharpness_example_one(),
        "thm31_ex2" => sharpness_example_two(),
        "exp_h" => exponential_entry("exp_h"),
        "identity" => exponential_entry("identity"),
        other => {
            if let Some(arg) = parenthesized(other, "thm36_family") {
                let t: f64 = arg.trim().parse().map_err(|_| unknown())?;
                return extremal_family(t);
            }
            if let Some(args) = parenthesized(other, "koebe_power") {
                let mut parts = args.split(',');
                let (Some(a), Some(b), None) = (parts.next(), parts.next(), parts.next()) else {
                    return Err(unknown());
                };
                let lambda1: f64 = a.trim().parse().map_err(|_| unknown())?;
                let lambda2: f64 = b.trim().parse().map_err(|_| unknown())?;
                return koebe_power(lambda1, lambda2);
            }
            Err(unknown())
        }
    }
}

fn parenthesized<'a>(name: &'a str, prefix: &str) -> Option<&'a str> {
    name.strip_prefix(prefix)?
        .strip_prefix('(')?
        .strip_suffix(')')
}

/// The entries exercised by the verification suite.
pub fn default_catalog() -> Vec<CatalogEntry> {
    [
        "thm31_ex1",
        "thm31_ex2",
        "thm36_family(0.5)",
        "thm36_family(0.9)",
        "koebe_power(1,0.5)",
        "exp_h",
    ]
    .iter()
    .map(|n| catalog(n).expect("builtin catalog entry"))
    .collect()
}

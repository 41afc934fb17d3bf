//! Centralized numeric guards and tolerances.
//!
//! Every magic constant used by the evaluators, the series machinery, and the
//! supremum engine lives here so the trade-offs stay documented in one place.

/// Divisors, log arguments, and real-power bases below this modulus are
/// treated as singular and reported as evaluation errors instead of being
/// propagated as huge floats.
pub const POLE_GUARD: f64 = 1e-14;

/// A dilatation sample with |omega(z)| at or above `1 - DILATATION_MARGIN` is
/// degenerate: operations error out rather than clamp the hyperbolic factor.
pub const DILATATION_MARGIN: f64 = 1e-9;

/// Transforms that require h(0) = g(0) = h'(0) = 1 accept deviations up to
/// this tolerance before reporting a normalization violation.
pub const NORMALIZATION_TOL: f64 = 1e-10;

/// Absolute tolerance for the adaptive Simpson rule used by the radial
/// log-integral (branch-safe powers and reconstructed co-analytic factors).
pub const RADIAL_QUAD_TOL: f64 = 1e-11;

/// Default truncation order for Taylor expansions.
pub const DEFAULT_TAYLOR_ORDER: usize = 64;

/// Validation grid used for map flags: `VALIDATION_RADII` radii up to
/// `VALIDATION_RMAX`, each sampled at `VALIDATION_ANGLES` angles.
pub const VALIDATION_RADII: usize = 32;
pub const VALIDATION_ANGLES: usize = 64;
pub const VALIDATION_RMAX: f64 = 0.999;

/// Coefficients below this threshold (relative to the largest coefficient)
/// count as zero when detecting series valuations and degenerate functions.
pub const SERIES_ZERO: f64 = 1e-13;

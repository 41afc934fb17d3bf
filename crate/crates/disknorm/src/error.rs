//! Error types shared across the crate.

use num_complex::Complex64;
use thiserror::Error;

/// Errors produced while turning source text into an expression tree.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum ParseError {
    /// Unexpected token or end of input. `position` is a 1-based column.
    #[error("syntax error at column {position}: expected {expected}")]
    Syntax { position: usize, expected: String },
    /// Identifier other than `z`, `i`, `exp`, `log`.
    #[error("unknown identifier `{name}` at column {position}")]
    UnknownIdentifier { name: String, position: usize },
}

/// Errors produced while evaluating an expression at a point.
#[derive(Debug, Clone, Copy, PartialEq, Error)]
pub enum EvalError {
    /// A divisor (or a base raised to a negative power) was closer to zero
    /// than the pole guard allows.
    #[error("pole encountered at z = {at}")]
    PoleEncountered { at: Complex64 },
    /// `log` or a real-exponent power was applied to (numerically) zero.
    #[error("branch-cut argument zero at z = {at}")]
    BranchCutArgumentZero { at: Complex64 },
}

/// Crate-wide error type.
#[derive(Debug, Error)]
pub enum Error {
    #[error(transparent)]
    Parse(#[from] ParseError),

    #[error(transparent)]
    Eval(#[from] EvalError),

    /// Series operation required a nonzero constant term (or a cancellable
    /// valuation) and did not find one.
    #[error("not analytic at zero: {reason}")]
    NotAnalyticAtZero { reason: String },

    /// A function that must be locally univalent has an (identically or
    /// numerically) vanishing derivative.
    #[error("degenerate function: {detail}")]
    DegenerateFunction { detail: String },

    /// Some sampled |omega| reached the unit circle within the margin.
    #[error("dilatation is not sense-preserving: |omega({at})| = {modulus}")]
    NotSensePreserving { at: Complex64, modulus: f64 },

    /// Power construction requires strictly positive exponents.
    #[error("invalid exponent {value}: must be positive and finite")]
    InvalidExponent { value: f64 },

    /// A transform required h(0) = g(0) = h'(0) = 1.
    #[error("normalization violated: {detail}")]
    NormalizationViolated { detail: String },

    #[error("unknown catalog name `{name}`")]
    UnknownCatalogName { name: String },

    /// Argument outside the mathematical domain of an operation.
    #[error("domain error: {detail}")]
    DomainError { detail: String },

    /// Every sample of a supremum scan was skipped.
    #[error("no finite samples: objective could not be evaluated anywhere")]
    NoFiniteSamples,

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

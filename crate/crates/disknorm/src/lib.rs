//! Weighted norms of analytic, harmonic, and logharmonic disk mappings.
//!
//! The crate evaluates pre-Schwarzian and Schwarzian derivatives of
//! mappings of the unit disk and estimates their weighted supremum norms,
//! with a catalog of extremal examples and a verification suite of known
//! identities and bounds.
//!
//! Start with the runnable examples (`cargo run --example <name>`); each
//! one exercises a single capability end to end. The `disknorm` binary
//! exposes the same operations as subcommands (`eval`, `norm`, `verify`,
//! `dump`).

pub mod catalog;
pub mod cli;
pub mod error;
pub mod expr;
pub mod maps;
pub mod norm;
pub mod parser;
pub mod quad;
pub mod series;
pub mod suite;
pub mod theorems;
pub mod tol;

pub use error::{Error, Result};
pub use expr::Expr;
pub use maps::{AnalyticPart, HarmonicMap, LogharmonicMap, MapFlags};
pub use norm::{NormEstimate, SupConfig};
pub use parser::parse;
pub use series::TaylorSeries;
pub use suite::{SuiteKind, SuiteOptions};
pub use theorems::CheckReport;

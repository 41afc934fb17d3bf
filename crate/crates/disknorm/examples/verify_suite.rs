//! Run the full verification suite and print one line per check.
//!
//! The `paper` suite regresses every recorded closed-form value; the
//! `properties` suite drives randomized invariants (Moebius invariance,
//! Schwarz-Pick, normalization, PDE residuals) through the numeric engine.
//!
//! Run with: cargo run --release --example verify_suite

use disknorm::suite::{run_suite, summarize};
use disknorm::{SuiteKind, SuiteOptions};

fn main() -> disknorm::Result<()> {
    let opts = SuiteOptions::default();
    let reports = run_suite(SuiteKind::All, &opts)?;
    print!("{}", summarize(&reports));
    if reports.iter().any(|r| !r.pass) {
        std::process::exit(1);
    }
    Ok(())
}

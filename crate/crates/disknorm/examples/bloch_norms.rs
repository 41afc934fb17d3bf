//! Bloch seminorms of analytic functions and the Bloch norm of the
//! logarithm of a logharmonic map.
//!
//! Run with: cargo run --example bloch_norms

use disknorm::catalog::catalog;
use disknorm::norm::{bloch_seminorm_analytic, logharmonic_bloch_norm};
use disknorm::parse;
use disknorm::SupConfig;

fn main() -> disknorm::Result<()> {
    let cfg = SupConfig::default();

    // sup (1-|z|^2) |u'(z)| for a few analytic functions.
    println!("analytic Bloch seminorms");
    for src in ["z", "log(1-z)", "z^2", "0.5*log((1+z)/(1-z))"] {
        let u = parse(src)?;
        let est = bloch_seminorm_analytic(&u, &cfg)?;
        println!(
            "  {:<24} seminorm {:.9}  attained near r = {:.4}",
            src, est.value, est.r
        );
    }

    // For a logharmonic map the natural object is log f; its Bloch norm
    // adds |log f(0)| to the seminorm of the log-derivative pair.
    println!("\nlogharmonic Bloch norms (of log f)");
    for name in ["thm31_ex1", "thm36_family(0.5)", "exp_h"] {
        let entry = catalog(name)?;
        let (seminorm, norm) = logharmonic_bloch_norm(&entry.map, &cfg)?;
        println!(
            "  {:<20} seminorm {:.9}  norm {:.9}",
            name, seminorm.value, norm
        );
    }
    Ok(())
}

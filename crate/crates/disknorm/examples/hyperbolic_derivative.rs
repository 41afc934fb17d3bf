//! The hyperbolic derivative of a dilatation and the Schwarz-Pick bound.
//!
//! Any analytic self-map of the disk satisfies
//! (1-|z|^2) |w'(z)| / (1-|w(z)|^2) <= 1, with equality everywhere exactly
//! for disk automorphisms. The supremum of the left side is what the norm
//! engine's hyperbolic kind estimates.
//!
//! Run with: cargo run --example hyperbolic_derivative

use disknorm::maps::hyperbolic_derivative;
use disknorm::norm::hyperbolic_sup;
use disknorm::parse;
use disknorm::SupConfig;
use num_complex::Complex64;

fn main() -> disknorm::Result<()> {
    let cfg = SupConfig::default();

    println!("{:<28} {:>14} {:>10}", "dilatation", "sup", "at r");
    for src in [
        "z",
        "z^2",
        "0.5*z",
        "(z+0.4)/(1+0.4*z)",
        "0.3+0.2*z",
        "z*(z-0.5)/(1-0.5*z)",
    ] {
        let omega = parse(src)?;
        let est = hyperbolic_sup(&omega, &cfg)?;
        println!("{:<28} {:>14.9} {:>10.5}", src, est.value, est.r);
    }

    // Pointwise values for the automorphism: identically 1.
    let auto = parse("(z+0.4)/(1+0.4*z)")?;
    println!("\npointwise values for (z+0.4)/(1+0.4z):");
    for &r in &[0.0, 0.5, 0.9] {
        let v = hyperbolic_derivative(&auto, Complex64::new(r, 0.2 * r))?;
        println!("  at |z| ~ {r}: {v:.12}");
    }
    Ok(())
}

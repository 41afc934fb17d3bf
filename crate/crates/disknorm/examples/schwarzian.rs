//! Schwarzian derivatives: Moebius invariance, the Koebe norm, and the
//! harmonic Schwarzian of a map with an exponential analytic part.
//!
//! Run with: cargo run --example schwarzian

use disknorm::catalog::catalog;
use disknorm::maps::schwarzian_analytic;
use disknorm::norm::{schwarzian_norm, SchwarzianTarget};
use disknorm::parse;
use disknorm::SupConfig;
use num_complex::Complex64;

fn main() -> disknorm::Result<()> {
    let cfg = SupConfig::default();

    // The Schwarzian kills Moebius transformations exactly.
    println!("S(moebius) along a spiral of sample points:");
    for src in ["z/(1+z)", "(z-0.3)/(1-0.3*z)"] {
        let s = schwarzian_analytic(&parse(src)?)?;
        let mut worst = 0.0f64;
        for k in 0..60 {
            let zv = Complex64::from_polar(
                0.95 * k as f64 / 59.0,
                0.7 * k as f64,
            );
            worst = worst.max(s.eval(zv)?.norm());
        }
        println!("  {:<20} max |S| = {worst:.3e}", src);
    }

    // The Koebe function has Schwarzian norm exactly 6, the largest any
    // univalent analytic map attains.
    let koebe = parse("z/((1-z)^2)")?;
    let est = schwarzian_norm(SchwarzianTarget::Analytic(&koebe), &cfg)?;
    println!("\n||S_koebe|| = {:.9} (sharp value 6)", est.value);

    // exp(z) has the constant Schwarzian -1/2, so the squared-weight norm
    // lands at the origin with value 1/2.
    let s_exp = schwarzian_analytic(&parse("exp(z)")?)?;
    let at_zero = s_exp.eval(Complex64::ZERO)?;
    let est = schwarzian_norm(SchwarzianTarget::Analytic(&parse("exp(z)")?), &cfg)?;
    println!("\nS_exp(0) = {:.9}{:+.9}i", at_zero.re, at_zero.im);
    println!("||S_exp|| = {:.9} (closed form 1/2)", est.value);

    // The harmonic Schwarzian of the log of a logharmonic map extends the
    // analytic one: for a map with constant dilatation it reduces to the
    // analytic Schwarzian of its log part.
    let entry = catalog("exp_h")?;
    let log_map = entry.map.log_map()?;
    let harmonic = log_map.schwarzian(Complex64::new(0.3, 0.1))?;
    println!(
        "\nexp_h log-map S(0.3+0.1i) = {:.9}{:+.9}i (its log part is linear)",
        harmonic.re, harmonic.im
    );
    Ok(())
}

//! Affine and Koebe transforms of the logarithm of a logharmonic map.
//!
//! Both transforms send log f to another harmonic map on the disk: the
//! affine one mixes the two parts linearly, the Koebe one precomposes with
//! a disk automorphism and renormalizes. They are the standard way to move
//! a normalized map around its family while controlling the pre-Schwarzian.
//!
//! Run with: cargo run --example transforms

use disknorm::catalog::catalog;
use disknorm::maps::{affine_transform_log, koebe_transform_log};
use disknorm::norm::{weighted_sup, NormKind};
use disknorm::{HarmonicMap, SupConfig};
use num_complex::Complex64;

fn main() -> disknorm::Result<()> {
    let cfg = SupConfig::default();
    let entry = catalog("thm31_ex1")?;
    let base = entry.map.log_map()?;

    println!("base map: log of {}", entry.name);
    report("log f", &base, &cfg)?;

    for &s in &[0.3, -0.5] {
        let transformed = affine_transform_log(&entry.map, Complex64::new(s, 0.0))?;
        report(&format!("affine s = {s}"), &transformed, &cfg)?;
    }

    for &a in &[0.2, 0.5] {
        let transformed = koebe_transform_log(&entry.map, Complex64::new(a, 0.0))?;
        report(&format!("koebe alpha = {a}"), &transformed, &cfg)?;
    }
    Ok(())
}

/// Print the pre-Schwarzian norm and the dilatation at the origin.
fn report(label: &str, m: &HarmonicMap, cfg: &SupConfig) -> disknorm::Result<()> {
    let est = weighted_sup(
        |z| Ok(m.pre_schwarzian(z)?.norm()),
        1,
        cfg,
        NormKind::PreschwarzianHarmonic,
    )?;
    let w0 = m.omega_expr().eval(Complex64::ZERO)?;
    println!(
        "  {:<16} ||P|| = {:>12.9}   omega(0) = {:.6}{:+.6}i",
        label, est.value, w0.re, w0.im
    );
    Ok(())
}

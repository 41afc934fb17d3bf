//! Parse an expression, evaluate it on the disk, and take symbolic
//! derivatives.
//!
//! Run with: cargo run --example evaluate_and_differentiate

use disknorm::expr::{differentiate, log_derivative};
use disknorm::parse;
use num_complex::Complex64;

fn main() -> disknorm::Result<()> {
    let f = parse("1/(1-z)")?;
    let df = differentiate(&f);
    let lf = log_derivative(&f);

    println!("f        = {f}");
    println!("f'       = {df}");
    println!("f'/f     = {lf}");
    println!();

    println!("{:>12}  {:>22}  {:>22}", "z", "f(z)", "f'(z)");
    for &zv in &[
        Complex64::new(0.0, 0.0),
        Complex64::new(0.5, 0.0),
        Complex64::new(0.3, 0.4),
        Complex64::new(-0.9, 0.0),
    ] {
        println!("{:>12}  {:>22}  {:>22}", fmt(zv), fmt(f.eval(zv)?), fmt(df.eval(zv)?));
    }

    // Evaluation errors are values, not panics: poles report where they are.
    println!();
    match f.eval(Complex64::new(1.0, 0.0)) {
        Ok(v) => println!("f(1) = {v} (unexpected)"),
        Err(e) => println!("f(1) fails as it should: {e}"),
    }
    Ok(())
}

fn fmt(v: Complex64) -> String {
    if v.im.abs() < 1e-12 {
        format!("{:.6}", v.re)
    } else {
        format!("{:.6}{:+.6}i", v.re, v.im)
    }
}

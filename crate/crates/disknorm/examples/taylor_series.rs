//! Power series arithmetic: expansion of expression trees, composition
//! through exp and log, and fractional powers.
//!
//! Run with: cargo run --example taylor_series

use disknorm::expr::{self};
use disknorm::parse;
use disknorm::series::taylor_expand;
use num_complex::Complex64;

fn main() -> disknorm::Result<()> {
    // The coefficients of z/(1-z)^2 are 0, 1, 2, 3, ...
    let koebe = parse("z/((1-z)^2)")?;
    let s = taylor_expand(&koebe, 8)?;
    println!("z/(1-z)^2 = sum a_n z^n with");
    for n in 0..=8 {
        println!("  a_{n} = {:.12}", s.coeff(n).re);
    }

    // exp and log are series inverses of each other.
    let w = parse("1+0.3*z-0.2*z^2")?;
    let round_trip = taylor_expand(&expr::exp(expr::log(w.clone())), 10)?;
    let direct = taylor_expand(&w, 10)?;
    let worst = (0..=10)
        .map(|n| (round_trip.coeff(n) - direct.coeff(n)).norm())
        .fold(0.0f64, f64::max);
    println!("\nexp(log(w)) vs w, max coefficient drift: {worst:.3e}");

    // Fractional powers branch through the principal logarithm.
    let sqrt = taylor_expand(&parse("1-z")?, 8)?.powf(0.5)?;
    println!("\n(1-z)^(1/2) starts with");
    for n in 0..=4 {
        println!("  a_{n} = {:+.12}", sqrt.coeff(n).re);
    }

    // Series evaluate like functions inside their disk of convergence.
    let at = Complex64::new(0.2, 0.1);
    let approx = sqrt.eval_at(at);
    let exact = (Complex64::ONE - at).powf(0.5);
    println!("\nat z = {at}: series {approx:.12}, closed form {exact:.12}");
    Ok(())
}

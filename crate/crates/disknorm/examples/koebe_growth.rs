//! Growth and distortion of the power-of-Koebe logharmonic map.
//!
//! The map built from k(z) = z/(1-z)^2 with exponents (lambda1, lambda2)
//! satisfies two-sided growth estimates |f(z)| between
//! ((1-r)/(1+r)^3)^lambda and ((1+r)/(1-r)^3)^lambda along rays, and its
//! weighted Jacobian-root distortion is bounded by 6 lambda1.
//!
//! Run with: cargo run --example koebe_growth

use disknorm::theorems::check_growth_bounds;
use disknorm::SupConfig;

fn main() -> disknorm::Result<()> {
    let cfg = SupConfig::default();
    let (lambda1, lambda2) = (1.0, 0.5);

    for &r in &[0.1, 0.5, 0.9] {
        let report = check_growth_bounds(lambda1, lambda2, r, r == 0.9, 1e-3, &cfg)?;
        println!(
            "r = {r}: {}  ({} ms)",
            if report.pass { "PASS" } else { "FAIL" },
            report.runtime_ms
        );
        for (key, value) in &report.computed {
            let expected = report
                .expected
                .get(key)
                .map(|e| format!("  vs expected {:.9}", e.value))
                .unwrap_or_default();
            println!("  {key:<20} = {value:>16.9}{expected}");
        }
        println!();
    }
    Ok(())
}

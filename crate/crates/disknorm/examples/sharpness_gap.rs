//! The unit gap between the two pre-Schwarzian norms of a logharmonic map.
//!
//! For f = h conj(g), two natural pre-Schwarzians compete: the one of f
//! itself, h''/h' + g'/g - extra dilatation terms, and the simpler
//! P_psi = h''/h' + g'/g. The catalog's two sharpness examples show the
//! norms can differ by exactly one, and that neither 5 nor 6 can be
//! improved.
//!
//! Run with: cargo run --example sharpness_gap

use disknorm::catalog::catalog;
use disknorm::norm::{pre_schwarzian_norm, weighted_sup, NormKind, NormTarget};
use disknorm::SupConfig;

fn main() -> disknorm::Result<()> {
    let cfg = SupConfig::default();
    for name in ["thm31_ex1", "thm31_ex2"] {
        let entry = catalog(name)?;
        let pf = pre_schwarzian_norm(NormTarget::Logharmonic(&entry.map), &cfg)?;
        let psi = entry.map.psi_pre_schwarzian();
        let ppsi = weighted_sup(
            |z| Ok(psi.eval(z)?.norm()),
            1,
            &cfg,
            NormKind::PreschwarzianAnalytic,
        )?;

        println!("{name}");
        println!("  ||P_f||    = {:.9}  at r = {:.6}", pf.value, pf.r);
        println!("  ||P_psi||  = {:.9}  at r = {:.6}", ppsi.value, ppsi.r);
        println!("  gap        = {:.9}", ppsi.value - pf.value);
        for q in &entry.expected {
            println!("  known: {:<24} {:>12.6}  ({})", q.name, q.value, q.note);
        }
        println!();
    }
    Ok(())
}

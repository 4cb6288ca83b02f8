//! Exact law of the occupation fraction for a path started at the origin.
//!
//! Prints the atom at 1, the two edge boxes of width 0.01 and a few
//! quantiles, next to the arcsine values they approach as T grows.

use telegraph_occupation::limit::arcsine_cdf;
use telegraph_occupation::telegraph::{box_probability, origin_law, InitialVelocity, TelegraphParams};

fn main() -> telegraph_occupation::Result<()> {
    let arcsine_box = arcsine_cdf(0.01)?;
    println!("arcsine edge box: {arcsine_box:.6}");
    println!("{:>8} {:>10} {:>10} {:>10} {:>8} {:>8} {:>8}", "T", "atom@1", "[0,.01]", "[.99,1]", "q10", "q50", "q90");
    for horizon in [1.0, 10.0, 100.0, 1000.0, 10000.0] {
        let p = TelegraphParams::new(1.0, 1.0, horizon, InitialVelocity::Plus)?;
        let law = origin_law(&p, 512)?;
        println!(
            "{horizon:>8} {:>10.6} {:>10.6} {:>10.6} {:>8.4} {:>8.4} {:>8.4}",
            law.atom_at(1.0),
            box_probability(&law, 0.0, 0.01)?,
            box_probability(&law, 0.99, 1.0)?,
            law.quantile(0.1),
            law.quantile(0.5),
            law.quantile(0.9),
        );
    }

    // the symmetric start splits the atom between both ends
    let p = TelegraphParams::new(1.0, 1.0, 1000.0, InitialVelocity::Symmetric)?;
    let law = origin_law(&p, 512)?;
    println!(
        "symmetric, T=1000: atoms {:.6} at 0 and {:.6} at 1, total mass {:.10}",
        law.atom_at(0.0),
        law.atom_at(1.0),
        law.total_mass()
    );
    Ok(())
}

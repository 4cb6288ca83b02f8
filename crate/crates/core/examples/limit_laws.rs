//! Limit laws Y_a of the occupation fraction under diffusive scaling.
//!
//! a = 0 is the arcsine law. For a != 0 the Brownian path may never reach
//! the origin before time 1, which leaves an atom of mass P(|Z| < |a|) at
//! 0 or 1.

use telegraph_occupation::limit::{arcsine_cdf, limit_law, LimitLawSpec};
use telegraph_occupation::special::QuadSpec;
use telegraph_occupation::telegraph::{origin_law, InitialVelocity, TelegraphParams};

fn main() -> telegraph_occupation::Result<()> {
    let spec = QuadSpec::default();
    println!("{:>5} {:>10} {:>10} {:>10} {:>10}", "a", "atom", "mean", "P(Y<=.5)", "mass");
    for a in [-2.0, -1.0, -0.5, 0.0, 0.5, 1.0, 2.0] {
        let law = limit_law(&LimitLawSpec::new(a, 256)?, &spec)?;
        println!(
            "{a:>5} {:>10.6} {:>10.6} {:>10.6} {:>10.8}",
            law.atom_mass(),
            law.expectation(|y| y),
            law.cdf(0.5),
            law.total_mass()
        );
    }

    // the exact origin law approaches the arcsine law as T grows
    for horizon in [10.0, 100.0, 1000.0, 10000.0] {
        let p = TelegraphParams::new(1.0, 1.0, horizon, InitialVelocity::Plus)?;
        let law = origin_law(&p, 512)?;
        let ks = law.sup_distance_to(|y| arcsine_cdf(y).unwrap());
        println!("T = {horizon:>7}: sup distance to arcsine {ks:.5}");
    }
    Ok(())
}

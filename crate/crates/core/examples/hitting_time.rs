//! First time the telegraph path started at 0 reaches the level 1.
//!
//! The plus start runs straight there with probability e^{-λT0}; both starts
//! hit eventually. The Laplace transform of the law is compared with its
//! closed form.

use telegraph_occupation::laplace::{hitting_laplace, hitting_laplace_numeric};
use telegraph_occupation::special::QuadSpec;
use telegraph_occupation::telegraph::{hitting_law, InitialVelocity, Sign, TelegraphParams};

fn main() -> telegraph_occupation::Result<()> {
    let spec = QuadSpec::default();
    for (v0, sign) in [(InitialVelocity::Plus, Sign::Plus), (InitialVelocity::Minus, Sign::Minus)] {
        let p = TelegraphParams::new(1.0, 1.0, 1.0, v0)?;
        let hit = hitting_law(&p, -1.0)?;
        println!(
            "{} start: T0 = {}, atom {:.6}, total mass {:.10}",
            v0.as_str(),
            hit.t0,
            hit.atom_at_t0,
            hit.total_mass(&spec)?
        );
        for u in [1.0, 1.5, 2.0, 5.0, 20.0] {
            println!("  u = {u:>5}: density {:.6}, P(hit by u) {:.6}", hit.density(u), hit.cdf(u, &spec)?);
        }
        for s in [0.1, 1.0, 3.0] {
            let closed = hitting_laplace(s, 1.0, -1.0, sign)?;
            let numeric = hitting_laplace_numeric(s, 1.0, -1.0, sign, &spec)?;
            println!("  E e^(-{s} T) = {closed:.8} (quadrature {numeric:.8})");
        }
    }
    Ok(())
}

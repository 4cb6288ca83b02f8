//! Smooth probes instead of the indicator of (0, ∞).
//!
//! f(z) = ½ + atan(z)/π keeps η in [0, 1] and its histogram approaches
//! the arcsine law. Adding a cosine wiggle lets η leave [0, 1]; the mass
//! outside shrinks as T grows.

use std::time::Instant;

use telegraph_occupation::limit::{limit_law, LimitLawSpec};
use telegraph_occupation::sim::{ks_statistic, run_experiment, ProbeFunction};
use telegraph_occupation::special::QuadSpec;
use telegraph_occupation::telegraph::{InitialVelocity, TelegraphParams};

fn main() -> telegraph_occupation::Result<()> {
    let arcsine = limit_law(&LimitLawSpec::new(0.0, 512)?, &QuadSpec::default())?;
    let n = 10_000;

    let start = Instant::now();
    let p = TelegraphParams::new(1.0, 1.0, 1000.0, InitialVelocity::Plus)?;
    let atan = run_experiment(&p, 0.0, &ProbeFunction::atan_half(), n, 5)?;
    println!(
        "atan probe, T=1000: KS to arcsine {:.4} ({:.2?})",
        ks_statistic(&atan, &arcsine),
        start.elapsed()
    );

    for horizon in [100.0, 1000.0] {
        let start = Instant::now();
        let p = TelegraphParams::new(1.0, 1.0, horizon, InitialVelocity::Plus)?;
        let wiggly = run_experiment(&p, 0.0, &ProbeFunction::atan_cos_half(), n, 5)?;
        let lo = wiggly.bin_edges(0).0;
        let hi = wiggly.bin_edges(wiggly.bin_counts.len() - 1).1;
        println!(
            "atan+cos probe, T={horizon}: outside [0,1] {:.4}, histogram range [{lo:.2}, {hi:.2}] ({:.2?})",
            wiggly.outside_unit_fraction(),
            start.elapsed()
        );
    }
    Ok(())
}

//! v(x, t) = E[g0(x + X_t)] solves the damped wave equation
//! v_tt + 2λ v_t = c² v_xx with v(x, 0) = g0(x), v_t(x, 0) = 0.
//!
//! The closed-form kernel is checked against Monte Carlo and, for a tiny
//! reversal rate, against d'Alembert's solution.

use telegraph_occupation::sim::mc_expectation;
use telegraph_occupation::special::QuadSpec;
use telegraph_occupation::telegraph::{telegraph_expectation, InitialVelocity, TelegraphParams};

fn main() -> telegraph_occupation::Result<()> {
    let spec = QuadSpec::default();
    let p = TelegraphParams::new(1.0, 1.0, 1.0, InitialVelocity::Symmetric)?;
    let exact = telegraph_expectation(&p, f64::cos, 0.0, 1.0, &spec)?;
    let (mean, se) = mc_expectation(&p, f64::cos, 0.0, 1.0, 200_000, 11)?;
    println!("v(0, 1) = {exact:.6}; Monte Carlo {mean:.6} ± {se:.6} ({:.2} se)", (mean - exact) / se);

    let slow = TelegraphParams::new(1e-10, 1.0, 1.0, InitialVelocity::Symmetric)?;
    for (x, t) in [(0.0, 0.5), (0.3, 1.0), (-1.0, 2.0)] {
        let v = telegraph_expectation(&slow, f64::cos, x, t, &spec)?;
        let dalembert = 0.5 * ((x + t).cos() + (x - t).cos());
        println!("λ≈0: v({x}, {t}) = {v:.9}, d'Alembert {dalembert:.9}");
    }

    // strong damping: the solution spreads like a heat kernel
    let (lambda, c) = (50.0, 10.0);
    let fast = TelegraphParams::new(lambda, c, 1.0, InitialVelocity::Symmetric)?;
    let gauss = |z: f64| (-z * z).exp();
    let v = telegraph_expectation(&fast, gauss, 0.0, 1.0, &spec)?;
    // heat kernel with diffusivity c²/(2λ) applied to e^{-z²}
    let d: f64 = c * c / (2.0 * lambda);
    let heat = 1.0 / (1.0 + 4.0 * d).sqrt();
    println!("λ=50, c=10: v(0, 1) = {v:.5}, diffusion limit {heat:.5}");
    Ok(())
}

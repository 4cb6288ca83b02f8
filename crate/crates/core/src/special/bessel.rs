//! Exponentially scaled modified Bessel functions of orders 0 and 1.
//!
//! Every formula in this crate pairs `e^{-λt}` with `I_n(λ·…)`, and `λT`
//! routinely reaches `10^4`, so only the scaled forms `e^{-z} I_n(z)` are
//! ever evaluated. Below [`SERIES_LIMIT`] the defining power series is summed
//! (all terms positive, so the relative error stays at a few ulps); above it
//! the Hankel asymptotic expansion is summed until its terms stop shrinking
//! or fall below machine precision.

use crate::error::{domain, Result};
use std::f64::consts::PI;

const SERIES_LIMIT: f64 = 30.0;

/// `e^{-z} I_0(z)` for `z >= 0`.
pub fn bessel_i0_scaled(z: f64) -> Result<f64> {
    check(z)?;
    Ok(i0e(z))
}

/// `e^{-z} I_1(z)` for `z >= 0`.
pub fn bessel_i1_scaled(z: f64) -> Result<f64> {
    check(z)?;
    Ok(i1e(z))
}

fn check(z: f64) -> Result<()> {
    if !z.is_finite() || z < 0.0 {
        return domain(format!("scaled Bessel argument must be finite and >= 0, got {z}"));
    }
    Ok(())
}

pub(crate) fn i0e(z: f64) -> f64 {
    if z <= SERIES_LIMIT {
        (-z).exp() * series(z, 0)
    } else {
        asymptotic(z, 0)
    }
}

pub(crate) fn i1e(z: f64) -> f64 {
    if z <= SERIES_LIMIT {
        (-z).exp() * 0.5 * z * series(z, 1)
    } else {
        asymptotic(z, 1)
    }
}

/// `e^{-z} I_1(z) / z`, finite at `z = 0` where it equals `1/2`.
pub(crate) fn i1e_over_z(z: f64) -> f64 {
    if z <= SERIES_LIMIT {
        (-z).exp() * 0.5 * series(z, 1)
    } else {
        asymptotic(z, 1) / z
    }
}

/// `Σ_n (z²/4)^n / (n! (n+order)!)`.
fn series(z: f64, order: u32) -> f64 {
    let q = 0.25 * z * z;
    let mut term = 1.0;
    let mut sum = term;
    let mut n = 1.0_f64;
    loop {
        term *= q / (n * (n + order as f64));
        sum += term;
        if term <= sum * 1e-17 {
            break;
        }
        n += 1.0;
    }
    sum
}

/// `(2πz)^{-1/2} Σ_k (-1)^k a_k(ν) / z^k` with
/// `a_k(ν) = Π_{j=1..k} (4ν² - (2j-1)²) / (k! 8^k)`.
fn asymptotic(z: f64, order: u32) -> f64 {
    let mu = 4.0 * (order * order) as f64;
    let mut term = 1.0_f64;
    let mut sum = 1.0_f64;
    for k in 1..200 {
        let odd = (2 * k - 1) as f64;
        let next = -term * (mu - odd * odd) / (8.0 * k as f64 * z);
        if next.abs() >= term.abs() {
            break;
        }
        term = next;
        sum += term;
        if term.abs() <= sum.abs() * 1e-17 {
            break;
        }
    }
    sum / (2.0 * PI * z).sqrt()
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Plain power series for `I_n(z)` without any scaling, summed to a
    /// fixed 30 terms as the independent reference.
    fn raw_series(z: f64, order: u32) -> f64 {
        let mut total = 0.0;
        let mut fact_n = 1.0;
        for n in 0..30u32 {
            if n > 0 {
                fact_n *= n as f64;
            }
            let fact_shift: f64 = (1..=n + order).map(|k| k as f64).product();
            total += (z / 2.0).powi((2 * n + order) as i32) / (fact_n * fact_shift);
        }
        total
    }

    #[test]
    fn values_at_zero() {
        assert_eq!(bessel_i0_scaled(0.0).unwrap(), 1.0);
        assert_eq!(bessel_i1_scaled(0.0).unwrap(), 0.0);
        assert_eq!(i1e_over_z(0.0), 0.5);
    }

    #[test]
    fn unit_argument_matches_raw_series() {
        let i0 = raw_series(1.0, 0) * (-1.0f64).exp();
        let i1 = raw_series(1.0, 1) * (-1.0f64).exp();
        assert!((bessel_i0_scaled(1.0).unwrap() - i0).abs() < 1e-15);
        assert!((bessel_i1_scaled(1.0).unwrap() - i1).abs() < 1e-15);
        assert!((i0 - 0.465_759_607_593_640_4).abs() < 1e-15);
        assert!((i1 - 0.207_910_415_349_708_5).abs() < 1e-15);
    }

    #[test]
    fn large_argument_leading_terms() {
        let z = 1000.0;
        let approx = (2.0 * PI * z).powf(-0.5) * (1.0 + 1.0 / (8.0 * z));
        let v = bessel_i0_scaled(z).unwrap();
        assert!((v - approx).abs() / v < 1e-7);
        assert!((v - 0.012_617_240_455_891_257).abs() < 1e-15);
    }

    #[test]
    fn regimes_agree_at_crossover() {
        for &z in &[25.0f64, 30.0, 35.0] {
            for order in 0..2 {
                let s = (-z).exp() * series(z, order) * if order == 1 { 0.5 * z } else { 1.0 };
                let a = asymptotic(z, order);
                assert!((s - a).abs() / s < 1e-12, "z={z} order={order}: {s} vs {a}");
            }
        }
    }

    #[test]
    fn small_argument_i1_ratio() {
        for &z in &[1e-3, 1e-6, 1e-9] {
            let r = bessel_i1_scaled(z).unwrap() / z;
            assert!((r - 0.5).abs() < z, "{r}");
        }
    }

    #[test]
    fn ordering_and_derivative() {
        let mut z = 0.0;
        while z <= 1e4 {
            let i0 = i0e(z);
            let i1 = i1e(z);
            assert!(0.0 <= i1 && i1 < i0 && i0 <= 1.0, "z={z}");
            z = if z < 1.0 { z + 0.01 } else { z * 1.01 };
        }
        for &z in &[0.5f64, 5.0, 50.0, 500.0] {
            let h = 1e-4 * z.max(1.0);
            let fd = (i0e(z + h) - i0e(z - h)) / (2.0 * h);
            assert!((fd - (i1e(z) - i0e(z))).abs() < 1e-6, "z={z}");
        }
    }

    #[test]
    fn rejects_bad_arguments() {
        assert!(bessel_i0_scaled(-1.0).is_err());
        assert!(bessel_i1_scaled(f64::NAN).is_err());
        assert!(bessel_i0_scaled(f64::INFINITY).is_err());
    }
}

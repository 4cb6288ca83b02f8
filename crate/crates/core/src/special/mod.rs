//! Scaled modified Bessel functions, the Gaussian mass function and adaptive
//! quadrature. Everything downstream is built from these.

mod bessel;
mod quad;

pub use bessel::{bessel_i0_scaled, bessel_i1_scaled};
pub(crate) use bessel::{i0e, i1e, i1e_over_z};
pub use quad::{integrate, integrate_to_infinity, QuadSpec, SingularEndpoints};

use crate::error::{domain, Result};

/// `P(|Z| <= a)` for a standard normal `Z`, i.e. `(2/sqrt(2π)) ∫_0^a e^{-y²/2} dy`.
pub fn gauss_tail(a: f64) -> Result<f64> {
    if !(a >= 0.0) {
        return domain(format!("gauss_tail: a must be >= 0, got {a}"));
    }
    Ok(gauss_mass(a))
}

pub(crate) fn gauss_mass(a: f64) -> f64 {
    if a.is_infinite() {
        return 1.0;
    }
    libm::erf(a / std::f64::consts::SQRT_2)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gauss_tail_against_quadrature() {
        assert_eq!(gauss_tail(0.0).unwrap(), 0.0);
        let density = |y: f64| (-0.5 * y * y).exp() * 2.0 / (2.0 * std::f64::consts::PI).sqrt();
        for &a in &[0.3, 1.0, 2.5] {
            let q = integrate(density, 0.0, a, &QuadSpec::tight(), SingularEndpoints::NONE).unwrap();
            assert!((gauss_tail(a).unwrap() - q).abs() < 1e-12, "a={a}");
        }
        assert!((gauss_tail(1.0).unwrap() - 0.682_689_492_137_085_9).abs() < 1e-12);
        assert!((gauss_tail(40.0).unwrap() - 1.0).abs() < 1e-12);
        assert!(gauss_tail(-0.1).is_err());
    }

    #[test]
    fn gauss_tail_monotone() {
        let vals: Vec<f64> = (0..1000).map(|k| gauss_tail(5.0 * k as f64 / 999.0).unwrap()).collect();
        assert!(vals.windows(2).all(|w| w[1] >= w[0]));
        assert!(vals.iter().all(|v| (0.0..1.0).contains(v)));
    }
}

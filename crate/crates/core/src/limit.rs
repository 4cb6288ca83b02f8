//! Long-horizon limits: the arcsine law, the Brownian first-passage density
//! `q_a`, and the laws of `Y_a` (Brownian occupation of the positive
//! half-line on `[0, 1]` after starting at `-a`).

use crate::error::{domain, Result};
use crate::law::{chebyshev_interior, Atom, GridPoint, MixedLaw, MIN_GRID_SIZE};
use crate::special::{gauss_mass, i0e, integrate, QuadSpec, SingularEndpoints};
use serde_json::json;
use std::f64::consts::PI;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LimitLawSpec {
    /// Limit of `x / sqrt(c²T/λ)`.
    pub a: f64,
    pub grid_size: usize,
}

impl LimitLawSpec {
    pub fn new(a: f64, grid_size: usize) -> Result<Self> {
        if !a.is_finite() {
            return domain(format!("limit law: a must be finite, got {a}"));
        }
        if grid_size < MIN_GRID_SIZE {
            return domain(format!("grid_size must be >= {MIN_GRID_SIZE}, got {grid_size}"));
        }
        Ok(Self { a, grid_size })
    }

    /// The `a` that matches a finite telegraph experiment.
    pub fn scaled_offset(lambda: f64, c: f64, horizon: f64, x: f64) -> f64 {
        x / (c * c * horizon / lambda).sqrt()
    }
}

/// `1 / (π sqrt(y(1-y)))` on `(0, 1)`.
pub fn arcsine_pdf(y: f64) -> Result<f64> {
    if !(y > 0.0 && y < 1.0) {
        return domain(format!("arcsine_pdf: y must lie in (0, 1), got {y}"));
    }
    Ok(arcsine_pdf_unchecked(y))
}

fn arcsine_pdf_unchecked(y: f64) -> f64 {
    1.0 / (PI * (y * (1.0 - y)).sqrt())
}

/// `(2/π) arcsin sqrt(y)` on `[0, 1]`.
pub fn arcsine_cdf(y: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&y) {
        return domain(format!("arcsine_cdf: y must lie in [0, 1], got {y}"));
    }
    Ok(arcsine_cdf_unchecked(y))
}

pub(crate) fn arcsine_cdf_unchecked(y: f64) -> f64 {
    if y <= 0.0 {
        0.0
    } else if y >= 1.0 {
        1.0
    } else {
        2.0 / PI * y.sqrt().asin()
    }
}

/// Brownian first-passage density of level `a`: `a / sqrt(2πt³) e^{-a²/(2t)}`.
pub fn q_pdf(a: f64, t: f64) -> Result<f64> {
    if !(a > 0.0) || !(t > 0.0) {
        return domain(format!("q_pdf: need a > 0 and t > 0, got ({a}, {t})"));
    }
    Ok(q_unchecked(a, t))
}

pub(crate) fn q_unchecked(a: f64, t: f64) -> f64 {
    if t <= 0.0 {
        return 0.0;
    }
    a / (2.0 * PI * t * t * t).sqrt() * (-a * a / (2.0 * t)).exp()
}

/// Density `f_a(y)` of the continuous part of `Y_a`, `a > 0`, `y ∈ (0, 1)`.
pub fn y_density(a: f64, y: f64, spec: &QuadSpec) -> Result<f64> {
    if !(a > 0.0) || !(y > 0.0 && y < 1.0) {
        return domain(format!("y_density: need a > 0 and 0 < y < 1, got ({a}, {y})"));
    }
    let w = 1.0 - y;
    let a2 = a * a;
    let integrand = |u: f64| {
        let rest = w - u;
        if u <= 0.0 || rest <= 0.0 {
            return 0.0;
        }
        (-a2 / (2.0 * u)).exp() / (u * u.sqrt() * rest.sqrt())
    };
    let v = integrate(integrand, 0.0, w, spec, SingularEndpoints::UPPER)?;
    Ok(a / (2.0 * PI * PI * PI * y).sqrt() * v)
}

/// `P(Y_a <= y)`, atom included, from the decomposition at the first passage
/// time `τ`: either `τ >= 1 - y`, or `τ = u` and the remaining arcsine stretch
/// of length `1 - u` spends at most `y` on the positive side.
pub fn y_cdf(a: f64, y: f64, spec: &QuadSpec) -> Result<f64> {
    if !(a >= 0.0) {
        return domain(format!("y_cdf: a must be >= 0, got {a}"));
    }
    if a == 0.0 {
        return arcsine_cdf(y);
    }
    if y < 0.0 {
        return Ok(0.0);
    }
    if y >= 1.0 {
        return Ok(1.0);
    }
    let w = 1.0 - y;
    let late = gauss_mass(a / w.sqrt());
    if y == 0.0 {
        return Ok(late);
    }
    let early = integrate(
        |u| q_unchecked(a, u) * arcsine_cdf_unchecked(y / (1.0 - u)),
        0.0,
        w,
        spec,
        SingularEndpoints::UPPER,
    )?;
    Ok(late + early)
}

/// Law of `Y_a` for `a >= 0`: the arcsine law at `a = 0`, otherwise an atom
/// `P(|Z| <= a)` at 0 plus the density `f_a`.
///
/// Both densities have an inverse square-root pole at `y = 0`, so the grid is
/// strictly interior and the cell masses come from [`y_cdf`] rather than from
/// integrating grid values.
pub fn y_law(a: f64, grid_size: usize, spec: &QuadSpec) -> Result<MixedLaw> {
    if !(a >= 0.0) || !a.is_finite() {
        return domain(format!("y_law: a must be finite and >= 0, got {a}"));
    }
    if grid_size < MIN_GRID_SIZE {
        return domain(format!("grid_size must be >= {MIN_GRID_SIZE}, got {grid_size}"));
    }
    let ys = chebyshev_interior(grid_size, 0.0, 1.0);
    let (atoms, pdf, cumulative, continuous_mass) = if a == 0.0 {
        let pdf: Vec<f64> = ys.iter().map(|&y| arcsine_pdf_unchecked(y)).collect();
        let cum: Vec<f64> = ys.iter().map(|&y| arcsine_cdf_unchecked(y)).collect();
        (Vec::new(), pdf, cum, 1.0)
    } else {
        let atom = gauss_mass(a);
        let pdf = ys
            .iter()
            .map(|&y| y_density(a, y, spec))
            .collect::<Result<Vec<_>>>()?;
        let mut cum = ys
            .iter()
            .map(|&y| Ok(y_cdf(a, y, spec)? - atom))
            .collect::<Result<Vec<_>>>()?;
        // quadrature noise must not break monotonicity
        for k in 1..cum.len() {
            cum[k] = cum[k].max(cum[k - 1]);
        }
        let last = *ys.last().unwrap();
        let tail = integrate(|y| y_density(a, y, spec).unwrap_or(0.0), last, 1.0, spec, SingularEndpoints::NONE)?;
        let total = cum.last().unwrap() + tail;
        (vec![Atom { y: 0.0, mass: atom }], pdf, cum, total)
    };
    let grid = ys.iter().zip(&pdf).map(|(&y, &pdf)| GridPoint { y, pdf }).collect();
    Ok(MixedLaw::with_cumulative(atoms, grid, cumulative, continuous_mass)?.with_params(json!({ "a": a })))
}

/// Limit law of the occupation fraction: `Y_{-a}` for `a <= 0` and the
/// reflection `1 - Y_a` for `a >= 0`.
pub fn limit_law(spec: &LimitLawSpec, quad: &QuadSpec) -> Result<MixedLaw> {
    let a = spec.a;
    let law = if a <= 0.0 {
        y_law(-a, spec.grid_size, quad)?
    } else {
        y_law(a, spec.grid_size, quad)?.reflect()
    };
    Ok(law.with_params(json!({ "a": a })))
}

/// `E[e^{-β Y_a(t)}]` for the unnormalized occupation `Y_a(t) = t·Y_{a/√t}`
/// of `[0, t]`, by conditioning on the first passage time `τ` of level `a`:
/// `P(τ > t) + ∫_0^t q_a(u) E[e^{-β(t-u)A}] du` with `A` arcsine,
/// `E[e^{-zA}] = e^{-z/2} I_0(z/2)`.
pub fn y_tilted_mean(a: f64, beta: f64, t: f64, spec: &QuadSpec) -> Result<f64> {
    if !(a >= 0.0) || !(t > 0.0) {
        return domain(format!("y_tilted_mean: need a >= 0 and t > 0, got ({a}, {t})"));
    }
    let arcsine_mgf = |z: f64| {
        let h = 0.5 * z;
        if h >= 0.0 {
            i0e(h)
        } else {
            (-2.0 * h).exp() * i0e(-h)
        }
    };
    if a == 0.0 {
        return Ok(arcsine_mgf(beta * t));
    }
    let late = gauss_mass(a / t.sqrt());
    let early = integrate(
        |u| q_unchecked(a, u) * arcsine_mgf(beta * (t - u)),
        0.0,
        t,
        spec,
        SingularEndpoints::NONE,
    )?;
    Ok(late + early)
}

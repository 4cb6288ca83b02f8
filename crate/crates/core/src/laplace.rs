//! Closed-form double Laplace transforms of the occupation laws and numeric
//! transforms of the exact laws, used to cross-check one against the other.
//!
//! Time is measured in units of the horizon, so the process has rate `λT`
//! and speed `1/T`-scaled offsets `ξ = x/(cT)`. For a law `η_t` of the
//! unnormalized occupation time of `[0, t]` the transform is
//! `w(s, β) = ∫_0^∞ e^{-st} E[e^{-β η_t}] dt`.

use crate::error::{domain, Result};
use crate::law::MixedLaw;
use crate::limit::y_tilted_mean;
use crate::special::{integrate, QuadSpec, SingularEndpoints};
use crate::telegraph::{hitting_law, offset_law, origin_law, phi_hat, Sign, TelegraphParams};
use serde::Serialize;
use std::cell::RefCell;
use serde_json::{json, Value};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TransformPoint {
    pub s: f64,
    pub beta: f64,
}

impl TransformPoint {
    pub fn new(s: f64, beta: f64) -> Result<Self> {
        if !(s > 0.0) || !s.is_finite() || !beta.is_finite() {
            return domain(format!("transform point needs s > 0 and finite β, got ({s}, {beta})"));
        }
        Ok(Self { s, beta })
    }

    pub fn s_tilde(&self) -> f64 {
        self.s + self.beta
    }

    fn require_tilde(&self) -> Result<()> {
        if !(self.s_tilde() > 0.0) {
            return domain(format!("s + β must be positive, got {}", self.s_tilde()));
        }
        Ok(())
    }
}

/// `κ(s) = sqrt(s(s + 2λT))`.
pub fn kappa(s: f64, lambda_t: f64) -> Result<f64> {
    if !(s > 0.0) || !(lambda_t > 0.0) {
        return domain(format!("kappa: need s > 0 and λT > 0, got ({s}, {lambda_t})"));
    }
    Ok(kappa_unchecked(s, lambda_t))
}

fn kappa_unchecked(s: f64, lambda_t: f64) -> f64 {
    (s * (s + 2.0 * lambda_t)).sqrt()
}

struct Kappas {
    s: f64,
    st: f64,
    k: f64,
    kt: f64,
}

fn kappas(tp: &TransformPoint, lambda_t: f64) -> Result<Kappas> {
    tp.require_tilde()?;
    if !(lambda_t > 0.0) {
        return domain(format!("λT must be positive, got {lambda_t}"));
    }
    let st = tp.s_tilde();
    Ok(Kappas {
        s: tp.s,
        st,
        k: kappa_unchecked(tp.s, lambda_t),
        kt: kappa_unchecked(st, lambda_t),
    })
}

/// Double transform of the origin-start occupation time.
pub fn w_origin(tp: &TransformPoint, lambda_t: f64, sign: Sign) -> Result<f64> {
    let Kappas { s, st, k, kt } = kappas(tp, lambda_t)?;
    let shared = 2.0 * lambda_t / ((k + s) * (kt + st));
    Ok(match sign {
        Sign::Plus => 2.0 / (kt + st) + shared,
        Sign::Minus => 2.0 / (k + s) + shared,
    })
}

/// Double transform for a start at scaled offset `ξ`.
pub fn w_offset(xi: f64, tp: &TransformPoint, lambda_t: f64, sign: Sign) -> Result<f64> {
    if !xi.is_finite() {
        return domain(format!("w_offset: ξ must be finite, got {xi}"));
    }
    let Kappas { s, st, k, kt } = kappas(tp, lambda_t)?;
    let beta = tp.beta;
    let d = s * kt + st * k;
    let pm = match sign {
        Sign::Plus => 1.0,
        Sign::Minus => -1.0,
    };
    Ok(if xi <= 0.0 {
        -(k * xi).exp() * beta / (s * d) * (k + pm * s) + 1.0 / s
    } else {
        (-kt * xi).exp() * beta / (st * d) * (kt - pm * st) + 1.0 / st
    })
}

/// `T ∫_0^∞ e^{-st} Q±(Tt) dt` for the hitting time of level `-ξ > 0` in
/// horizon units. Plus: `e^{ξκ} - e^{(s+λT)ξ}`; minus: `(λT + s - κ)/(λT) e^{ξκ}`.
pub fn hitting_laplace(s: f64, lambda_t: f64, xi: f64, sign: Sign) -> Result<f64> {
    if !(xi < 0.0) {
        return domain(format!("hitting_laplace: ξ must be negative, got {xi}"));
    }
    let k = kappa(s, lambda_t)?;
    Ok(match sign {
        Sign::Plus => (xi * k).exp() - ((s + lambda_t) * xi).exp(),
        Sign::Minus => (lambda_t + s - k) / lambda_t * (xi * k).exp(),
    })
}

/// Horizon beyond which `e^{-st}` times anything in `[0, 1]` is below `abs_tol`.
fn t_max(s: f64, spec: &QuadSpec) -> f64 {
    (-(spec.abs_tol * s).ln() / s).max(1.0)
}

/// `T ∫ e^{-sT u} Q±(u) du` by quadrature of the hitting density with `λ = λT`
/// and `c = 1`, so that `T = 1`.
pub fn hitting_laplace_numeric(s: f64, lambda_t: f64, xi: f64, sign: Sign, spec: &QuadSpec) -> Result<f64> {
    let p = TelegraphParams::new(lambda_t, 1.0, 1.0, sign.velocity())?;
    let hit = hitting_law(&p, xi)?;
    let upper = hit.t0 + t_max(s, spec);
    integrate(
        |u| (-s * u).exp() * hit.density(u),
        hit.t0,
        upper,
        spec,
        SingularEndpoints::LOWER,
    )
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Lemma33 {
    pub lhs_a: f64,
    pub rhs_a: f64,
    pub lhs_b: f64,
    pub rhs_b: f64,
}

/// `∫ e^{-st} φ_T(t) dt = 1/(κ+s)` and
/// `∫ e^{-st} ∫_0^t e^{-βy} φ_T(y) φ_T(t-y) dy dt = 1/((κ+s)(κ̃+s̃))`,
/// left sides by quadrature.
pub fn lemma33_check(s: f64, beta: f64, lambda_t: f64, spec: &QuadSpec) -> Result<Lemma33> {
    let tp = TransformPoint::new(s, beta)?;
    let Kappas { s, st, k, kt } = kappas(&tp, lambda_t)?;
    let top = t_max(s, spec);
    let phi = |t: f64| phi_hat(lambda_t * t);
    let lhs_a = integrate(|t| (-s * t).exp() * phi(t), 0.0, top, spec, SingularEndpoints::NONE)?;
    let inner = |t: f64| -> f64 {
        if t <= 0.0 {
            return 0.0;
        }
        integrate(
            |y| (-beta * y).exp() * phi(y) * phi(t - y),
            0.0,
            t,
            spec,
            SingularEndpoints::NONE,
        )
        .unwrap_or(f64::NAN)
    };
    let lhs_b = integrate(|t| (-s * t).exp() * inner(t), 0.0, top, spec, SingularEndpoints::NONE)?;
    if !lhs_b.is_finite() {
        return Err(crate::Error::Convergence {
            estimate: lhs_b,
            error_bound: f64::INFINITY,
            subdivisions: spec.max_subdivisions,
        });
    }
    Ok(Lemma33 {
        lhs_a,
        rhs_a: 1.0 / (k + s),
        lhs_b,
        rhs_b: 1.0 / ((k + s) * (kt + st)),
    })
}

/// Which occupation the Brownian transform refers to: the positive side
/// `Y_a(t)` or its complement `t - Y_a(t)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Branch {
    Eta,
    Complement,
}

/// `∫_0^∞ e^{-st} E[e^{-β Y_a(t)}] dt` in closed form, or the same for
/// `t - Y_a(t)` (which swaps the roles of `s` and `s̃`).
pub fn lemma41_rhs(a: f64, tp: &TransformPoint, which: Branch) -> Result<f64> {
    if !(a >= 0.0) {
        return domain(format!("lemma41_rhs: a must be >= 0, got {a}"));
    }
    tp.require_tilde()?;
    let (s, st) = (tp.s, tp.s_tilde());
    let g = 1.0 / (s * st).sqrt();
    Ok(match which {
        Branch::Eta => (-a * (2.0 * s).sqrt()).exp() * (g - 1.0 / s) + 1.0 / s,
        Branch::Complement => (-a * (2.0 * st).sqrt()).exp() * (g - 1.0 / st) + 1.0 / st,
    })
}

/// The left side of [`lemma41_rhs`] (η branch) by quadrature over `t` of
/// `E[e^{-β Y_a(t)}]`, using `Y_a(t) = t·Y_{a/√t}`.
pub fn lemma41_lhs_numeric(a: f64, tp: &TransformPoint, spec: &QuadSpec) -> Result<f64> {
    if !(a >= 0.0) {
        return domain(format!("lemma41_lhs_numeric: a must be >= 0, got {a}"));
    }
    tp.require_tilde()?;
    let (s, beta) = (tp.s, tp.beta);
    let top = t_max(s, spec);
    let failure = RefCell::new(None);
    let v = integrate(
        |t| {
            if t <= 0.0 {
                return 1.0;
            }
            let m = y_tilted_mean(a, beta, t, spec).unwrap_or_else(|e| {
                failure.borrow_mut().get_or_insert(e);
                0.0
            });
            (-s * t).exp() * m
        },
        0.0,
        top,
        spec,
        SingularEndpoints::NONE,
    );
    if let Some(e) = failure.into_inner() {
        return Err(e);
    }
    v
}

fn tilted(law: &MixedLaw, beta: f64, t: f64) -> f64 {
    law.expectation(|y| (-beta * t * y).exp())
}

/// `∫ e^{-st} E[e^{-β t η_t(0)}] dt` with the law of `η_t(0)` taken from
/// [`origin_law`] at every quadrature node.
pub fn origin_roundtrip_numeric(
    tp: &TransformPoint,
    lambda_t: f64,
    sign: Sign,
    grid_size: usize,
    spec: &QuadSpec,
) -> Result<f64> {
    tp.require_tilde()?;
    let failure = RefCell::new(None);
    let v = integrate(
        |t| {
            if t <= 0.0 {
                return 1.0;
            }
            let law = TelegraphParams::new(lambda_t, 1.0, t, sign.velocity()).and_then(|p| origin_law(&p, grid_size));
            match law {
                Ok(law) => (-tp.s * t).exp() * tilted(&law, tp.beta, t),
                Err(e) => {
                    failure.borrow_mut().get_or_insert(e);
                    0.0
                }
            }
        },
        0.0,
        t_max(tp.s, spec),
        spec,
        SingularEndpoints::NONE,
    );
    if let Some(e) = failure.into_inner() {
        return Err(e);
    }
    v
}

/// Offset analogue of [`origin_roundtrip_numeric`], built from [`offset_law`].
pub fn offset_roundtrip_numeric(
    xi: f64,
    tp: &TransformPoint,
    lambda_t: f64,
    sign: Sign,
    grid_size: usize,
    spec: &QuadSpec,
) -> Result<f64> {
    tp.require_tilde()?;
    if xi == 0.0 {
        return origin_roundtrip_numeric(tp, lambda_t, sign, grid_size, spec);
    }
    let s = tp.s;
    let t0 = xi.abs();
    // before the origin is reachable the occupation is 0 (ξ < 0) or t (ξ > 0)
    let head = if xi < 0.0 {
        -(-s * t0).exp_m1() / s
    } else {
        -(-tp.s_tilde() * t0).exp_m1() / tp.s_tilde()
    };
    let failure = RefCell::new(None);
    let tail = integrate(
        |t| {
            let law = TelegraphParams::new(lambda_t, 1.0, t, sign.velocity())
                .and_then(|p| offset_law(&p, xi, grid_size, spec));
            match law {
                Ok(law) => (-s * t).exp() * tilted(&law, tp.beta, t),
                Err(e) => {
                    failure.borrow_mut().get_or_insert(e);
                    0.0
                }
            }
        },
        t0,
        t0 + t_max(s, spec),
        spec,
        SingularEndpoints::NONE,
    );
    if let Some(e) = failure.into_inner() {
        return Err(e);
    }
    Ok(head + tail?)
}

/// One line of a verification report.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Check {
    pub check: String,
    pub params: Value,
    pub lhs: f64,
    pub rhs: f64,
    pub abs_err: f64,
    pub tol: f64,
    pub pass: bool,
}

impl Check {
    pub fn new(check: &str, params: Value, lhs: f64, rhs: f64, tol: f64) -> Self {
        let abs_err = (lhs - rhs).abs();
        Self {
            check: check.to_string(),
            params,
            lhs,
            rhs,
            abs_err,
            tol,
            pass: abs_err <= tol,
        }
    }
}

/// Groups of checks that can be run on their own.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    All,
    Collapse,
    Lemma33,
    Hitting,
    Lemma41,
    Origin,
    Offset,
}

impl std::str::FromStr for Suite {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        Ok(match s.to_ascii_lowercase().as_str() {
            "all" => Suite::All,
            "collapse" => Suite::Collapse,
            "lemma33" => Suite::Lemma33,
            "hitting" => Suite::Hitting,
            "lemma41" => Suite::Lemma41,
            "origin" => Suite::Origin,
            "offset" => Suite::Offset,
            other => {
                return Err(format!(
                    "unknown suite '{other}' (all|collapse|lemma33|hitting|lemma41|origin|offset)"
                ))
            }
        })
    }
}

fn sign_name(sign: Sign) -> &'static str {
    sign.velocity().as_str()
}

/// Runs the requested checks and returns one report line per identity.
pub fn verification_report(suite: Suite, spec: &QuadSpec) -> Result<Vec<Check>> {
    let wants = |s: Suite| suite == Suite::All || suite == s;
    let mut out = Vec::new();
    let signs = [Sign::Plus, Sign::Minus];

    if wants(Suite::Collapse) {
        for &(s, lt) in &[(1.7, 12.0), (0.3, 0.5), (5.0, 100.0)] {
            let tp = TransformPoint::new(s, 0.0)?;
            for sign in signs {
                let params = json!({ "s": s, "beta": 0.0, "lambda_T": lt, "v0": sign_name(sign) });
                out.push(Check::new("collapse_w_origin", params.clone(), w_origin(&tp, lt, sign)?, 1.0 / s, 1e-12));
                for &xi in &[-1.0, -0.1, 0.2, 2.0] {
                    let mut p = params.clone();
                    p["xi"] = json!(xi);
                    out.push(Check::new("collapse_w_offset", p, w_offset(xi, &tp, lt, sign)?, 1.0 / s, 1e-12));
                }
            }
        }
    }

    if wants(Suite::Lemma33) {
        for &(s, beta, lt) in &[(1.0, 1.0, 1.0), (0.5, 2.0, 3.0), (2.0, 0.0, 10.0)] {
            let r = lemma33_check(s, beta, lt, spec)?;
            let params = json!({ "s": s, "beta": beta, "lambda_T": lt });
            out.push(Check::new("lemma33_A", params.clone(), r.lhs_a, r.rhs_a, 1e-5));
            out.push(Check::new("lemma33_B", params, r.lhs_b, r.rhs_b, 1e-5));
        }
    }

    if wants(Suite::Hitting) {
        for &(s, lt, xi) in &[(1.0, 1.0, -1.0), (0.5, 2.0, -0.3), (2.0, 5.0, -0.5)] {
            for sign in signs {
                let params = json!({ "s": s, "lambda_T": lt, "xi": xi, "v0": sign_name(sign) });
                let lhs = hitting_laplace_numeric(s, lt, xi, sign, spec)?;
                out.push(Check::new("hitting_laplace", params, lhs, hitting_laplace(s, lt, xi, sign)?, 1e-6));
            }
        }
    }

    if wants(Suite::Lemma41) {
        for &a in &[0.0, 0.5, 1.0] {
            for &beta in &[0.5, 2.0] {
                for &s in &[0.5, 1.0, 3.0] {
                    let tp = TransformPoint::new(s, beta)?;
                    let params = json!({ "a": a, "s": s, "beta": beta });
                    out.push(Check::new(
                        "lemma41",
                        params,
                        lemma41_lhs_numeric(a, &tp, spec)?,
                        lemma41_rhs(a, &tp, Branch::Eta)?,
                        1e-5,
                    ));
                }
            }
        }
    }

    if wants(Suite::Origin) {
        for &lt in &[1.0, 4.0] {
            for &beta in &[0.5, 2.0] {
                for &s in &[0.5, 2.0] {
                    let tp = TransformPoint::new(s, beta)?;
                    for sign in signs {
                        let params = json!({ "s": s, "beta": beta, "lambda_T": lt, "v0": sign_name(sign) });
                        out.push(Check::new(
                            "origin_roundtrip",
                            params,
                            origin_roundtrip_numeric(&tp, lt, sign, 256, spec)?,
                            w_origin(&tp, lt, sign)?,
                            1e-5,
                        ));
                    }
                }
            }
        }
    }

    if wants(Suite::Offset) {
        let (xi, lt) = (-0.25, 2.0);
        let tp = TransformPoint::new(1.0, 1.0)?;
        let coarse = QuadSpec::new(1e-7, 1e-6, spec.max_subdivisions)?;
        for sign in signs {
            let params = json!({ "s": 1.0, "beta": 1.0, "lambda_T": lt, "xi": xi, "v0": sign_name(sign) });
            out.push(Check::new(
                "offset_roundtrip",
                params,
                offset_roundtrip_numeric(xi, &tp, lt, sign, 128, &coarse)?,
                w_offset(xi, &tp, lt, sign)?,
                1e-4,
            ));
        }
    }

    Ok(out)
}

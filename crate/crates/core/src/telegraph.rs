//! Exact finite-horizon laws of the occupation time `η_T(x)` of the positive
//! half-line, the first-passage law that drives the offset case, and the
//! closed-form solution of the telegraph equation.
//!
//! Throughout, `φ̂(z) = ½ e^{-z} (I_0(z) + I_1(z))`, so that `φ_T(t) = φ̂(λTt)`.
//! Working with `φ̂` of the product `λ·time` keeps every horizon rescaling a
//! plain multiplication.

use crate::error::{domain, Result};
use crate::law::{chebyshev_lobatto, simpson_cumulative, Atom, GridPoint, MixedLaw, MIN_GRID_SIZE};
use crate::special::{i0e, i1e, i1e_over_z, integrate, QuadSpec, SingularEndpoints};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use std::f64::consts::PI;

/// Initial velocity of the particle: `+c`, `-c`, or a fair coin between them.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum InitialVelocity {
    Plus,
    Minus,
    Symmetric,
}

impl InitialVelocity {
    pub fn sign(self) -> Option<Sign> {
        match self {
            InitialVelocity::Plus => Some(Sign::Plus),
            InitialVelocity::Minus => Some(Sign::Minus),
            InitialVelocity::Symmetric => None,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            InitialVelocity::Plus => "plus",
            InitialVelocity::Minus => "minus",
            InitialVelocity::Symmetric => "symmetric",
        }
    }
}

impl std::str::FromStr for InitialVelocity {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "plus" | "+" => Ok(Self::Plus),
            "minus" | "-" => Ok(Self::Minus),
            "symmetric" | "sym" | "both" => Ok(Self::Symmetric),
            other => Err(format!("unknown initial velocity '{other}' (plus|minus|symmetric)")),
        }
    }
}

/// A definite initial direction.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn opposite(self) -> Self {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }

    pub fn velocity(self) -> InitialVelocity {
        match self {
            Sign::Plus => InitialVelocity::Plus,
            Sign::Minus => InitialVelocity::Minus,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TelegraphParams {
    /// Reversal rate λ.
    pub lambda: f64,
    /// Speed c.
    pub c: f64,
    /// Observation horizon T.
    pub horizon: f64,
    pub v0: InitialVelocity,
}

impl TelegraphParams {
    pub fn new(lambda: f64, c: f64, horizon: f64, v0: InitialVelocity) -> Result<Self> {
        for (name, v) in [("lambda", lambda), ("c", c), ("T", horizon)] {
            if !(v > 0.0) || !v.is_finite() {
                return domain(format!("{name} must be positive and finite, got {v}"));
            }
        }
        Ok(Self {
            lambda,
            c,
            horizon,
            v0,
        })
    }

    pub fn lambda_t(&self) -> f64 {
        self.lambda * self.horizon
    }

    pub fn with_v0(mut self, v0: InitialVelocity) -> Self {
        self.v0 = v0;
        self
    }

    pub fn with_horizon(mut self, horizon: f64) -> Self {
        self.horizon = horizon;
        self
    }

    pub fn to_json(&self) -> Value {
        json!({
            "lambda": self.lambda,
            "c": self.c,
            "T": self.horizon,
            "v0": self.v0.as_str(),
        })
    }
}

pub(crate) fn phi_hat(z: f64) -> f64 {
    0.5 * (i0e(z) + i1e(z))
}

/// `φ_T(t) = ½ e^{-λTt} (I_0(λTt) + I_1(λTt))`, with `φ_T(0) = ½`.
pub fn phi(lambda_t: f64, t: f64) -> Result<f64> {
    if !(lambda_t > 0.0) || !(t >= 0.0) || !t.is_finite() || !lambda_t.is_finite() {
        return domain(format!("phi: need λT > 0 and t >= 0, got ({lambda_t}, {t})"));
    }
    Ok(phi_hat(lambda_t * t))
}

/// `φ_T(t)` straight from its defining integral
/// `(4πλT)^{-1} ∫_0^t (1 - e^{-2λTu}) u^{-3/2} (t-u)^{-1/2} du`.
///
/// Independent of the Bessel route; exists to check [`phi`].
pub fn phi_integral_oracle(lambda_t: f64, t: f64, spec: &QuadSpec) -> Result<f64> {
    if !(lambda_t > 0.0) || !(t > 0.0) {
        return domain(format!("phi_integral_oracle: need λT > 0 and t > 0, got ({lambda_t}, {t})"));
    }
    let k = 2.0 * lambda_t;
    let integrand = |u: f64| -(-k * u).exp_m1() / (u * u.sqrt() * (t - u).sqrt());
    let v = integrate(integrand, 0.0, t, spec, SingularEndpoints::BOTH)?;
    Ok(v / (4.0 * PI * lambda_t))
}

/// `ψ_T(y) = 2λT φ_T(y) φ_T(1-y)`.
///
/// The two factors are always formed from `min(y, 1-y)` and its complement,
/// so `psi(λT, y)` and `psi(λT, 1-y)` are bitwise equal whenever `1-y` is
/// exact.
pub fn psi(lambda_t: f64, y: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&y) {
        return domain(format!("psi: y must lie in [0, 1], got {y}"));
    }
    if !(lambda_t > 0.0) {
        return domain(format!("psi: λT must be positive, got {lambda_t}"));
    }
    Ok(psi_unchecked(lambda_t, y))
}

pub(crate) fn psi_unchecked(lambda_t: f64, y: f64) -> f64 {
    let (lo, hi) = if y <= 0.5 { (y, 1.0 - y) } else { (1.0 - y, y) };
    2.0 * lambda_t * phi_hat(lambda_t * lo) * phi_hat(lambda_t * hi)
}

/// Law of `η_T(0)`: an atom `2φ_T(1)` at 1 (plus start) or 0 (minus start),
/// or `φ_T(1)` at each end for the symmetric start, plus the density `ψ_T`.
pub fn origin_law(p: &TelegraphParams, grid_size: usize) -> Result<MixedLaw> {
    check_grid_size(grid_size)?;
    let lt = p.lambda_t();
    let atom = phi_hat(lt);
    let atoms = match p.v0 {
        InitialVelocity::Plus => vec![Atom { y: 1.0, mass: 2.0 * atom }],
        InitialVelocity::Minus => vec![Atom { y: 0.0, mass: 2.0 * atom }],
        InitialVelocity::Symmetric => vec![Atom { y: 0.0, mass: atom }, Atom { y: 1.0, mass: atom }],
    };
    let ys = chebyshev_lobatto(grid_size, 0.0, 1.0);
    let pdf: Vec<f64> = ys.iter().map(|&y| psi_unchecked(lt, y)).collect();
    let cumulative = simpson_cumulative(&ys, &pdf, |y| psi_unchecked(lt, y));
    let total = *cumulative.last().unwrap();
    let grid = ys.iter().zip(&pdf).map(|(&y, &pdf)| GridPoint { y, pdf }).collect();
    let mut params = p.to_json();
    params["x"] = json!(0.0);
    Ok(MixedLaw::with_cumulative(atoms, grid, cumulative, total)?.with_params(params))
}

/// Probability that the law puts on `[a, b]`, atoms at either end included.
pub fn box_probability(law: &MixedLaw, a: f64, b: f64) -> Result<f64> {
    if !(0.0 <= a && a < b && b <= 1.0) {
        return domain(format!("box_probability: need 0 <= a < b <= 1, got [{a}, {b}]"));
    }
    Ok(law.box_probability(a, b))
}

fn check_grid_size(n: usize) -> Result<()> {
    if n < MIN_GRID_SIZE {
        return domain(format!("grid_size must be >= {MIN_GRID_SIZE}, got {n}"));
    }
    Ok(())
}

/// First-passage law of level `-x > 0` for the process started at 0: an atom
/// `e^{-λT0}` at the ballistic time `T0 = |x|/c` (plus start only) and the
/// density `Q±` on `[T0, ∞)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HittingLaw {
    pub t0: f64,
    pub atom_at_t0: f64,
    pub lambda: f64,
    pub sign: Sign,
}

/// Below this relative distance from `T0` the densities take their limits.
const T0_LIMIT_BAND: f64 = 1e-8;

impl HittingLaw {
    /// `Q±(u)`, zero below `T0`. With `r = sqrt(u² - T0²)`:
    /// `Q⁺(u) = λT0 e^{-λu} I_1(λr)/r` and
    /// `Q⁻(u) = λ e^{-λu} [T0 I_0(λr) + (u - T0) I_1(λr)/(λr)] / (u + T0)`,
    /// so `Q⁻(T0) = λe^{-λT0}/2` (an immediate reversal must happen within
    /// the first half of the excess time).
    pub fn density(&self, u: f64) -> f64 {
        let (t0, lam) = (self.t0, self.lambda);
        if u < t0 {
            return 0.0;
        }
        let d = u - t0;
        if d < T0_LIMIT_BAND * t0 {
            return match self.sign {
                Sign::Plus => 0.5 * lam * lam * t0 * (-lam * t0).exp(),
                Sign::Minus => 0.5 * lam * (-lam * t0).exp(),
            };
        }
        let s = u + t0;
        let r = (d * s).sqrt();
        let z = lam * r;
        // e^{-λu} I_n(z) = e^{-λ(u - r)} e^{-z} I_n(z), u - r = T0²/(u + r)
        let decay = (-lam * t0 * t0 / (u + r)).exp();
        match self.sign {
            Sign::Plus => lam * lam * t0 * decay * i1e_over_z(z),
            Sign::Minus => lam * decay * (t0 * i0e(z) + d * i1e_over_z(z)) / s,
        }
    }

    /// `∫_from^to Q±(u) du`; `to` may be `f64::INFINITY`.
    pub fn density_mass(&self, from: f64, to: f64, spec: &QuadSpec) -> Result<f64> {
        let from = from.max(self.t0);
        if !(to > from) {
            return Ok(0.0);
        }
        let f = |u: f64| self.density(u);
        let flags = if from == self.t0 {
            SingularEndpoints::LOWER
        } else {
            SingularEndpoints::NONE
        };
        if to.is_infinite() {
            // resolve the O(1/λ) boundary layer near T0 on a finite piece
            let knee = from + 40.0 / self.lambda + 4.0 * self.t0;
            let head = integrate(f, from, knee, spec, flags)?;
            let tail = crate::special::integrate_to_infinity(f, knee, spec)?;
            Ok(head + tail)
        } else {
            integrate(f, from, to, spec, flags)
        }
    }

    /// Atom plus the density's mass over `[T0, ∞)`.
    pub fn total_mass(&self, spec: &QuadSpec) -> Result<f64> {
        Ok(self.atom_at_t0 + self.density_mass(self.t0, f64::INFINITY, spec)?)
    }

    /// `P(T <= u)`.
    pub fn cdf(&self, u: f64, spec: &QuadSpec) -> Result<f64> {
        if u < self.t0 {
            return Ok(0.0);
        }
        Ok(self.atom_at_t0 + self.density_mass(self.t0, u, spec)?)
    }
}

/// Hitting law of level `-x` for `x < 0` with a definite initial direction.
pub fn hitting_law(p: &TelegraphParams, x: f64) -> Result<HittingLaw> {
    if !(x < 0.0) {
        return domain(format!("hitting_law: level requires x < 0, got {x}"));
    }
    let sign = p
        .v0
        .sign()
        .ok_or_else(|| crate::Error::Domain("hitting_law: symmetric start is a mixture; pass plus or minus".into()))?;
    let t0 = -x / p.c;
    let atom_at_t0 = match sign {
        Sign::Plus => (-p.lambda * t0).exp(),
        Sign::Minus => 0.0,
    };
    Ok(HittingLaw {
        t0,
        atom_at_t0,
        lambda: p.lambda,
        sign,
    })
}

/// Density of `η±_T(x)` for `x < 0`, `T > T0`, at `y ∈ [0, 1 - T0/T]`.
///
/// With `w = (1 - y)T` this is
/// `2T φ̂(λTy) [Q(w) + λ ∫_{T0}^{w} Q(u) φ̂(λ(w-u)) du + λ e^{-λT0} φ̂(λ(w-T0))·1_{plus}]`:
/// the restart-at-origin term plus the rescaled `ψ` contributions written as
/// one convolution with the hitting law.
pub fn offset_density(hit: &HittingLaw, horizon: f64, y: f64, spec: &QuadSpec) -> Result<f64> {
    let lam = hit.lambda;
    let mut w = (1.0 - y) * horizon;
    if w < hit.t0 {
        // y = 1 - T0/T itself can round to just below T0
        if hit.t0 - w > 1e-12 * hit.t0 {
            return Ok(0.0);
        }
        w = hit.t0;
    }
    let mut bracket = hit.density(w);
    if w > hit.t0 {
        let conv = integrate(
            |u| hit.density(u) * phi_hat(lam * (w - u)),
            hit.t0,
            w,
            spec,
            SingularEndpoints::LOWER,
        )?;
        bracket += lam * conv;
    }
    if hit.sign == Sign::Plus {
        bracket += lam * hit.atom_at_t0 * phi_hat(lam * (w - hit.t0));
    }
    Ok(2.0 * horizon * phi_hat(lam * horizon * y) * bracket)
}

fn offset_law_negative(p: &TelegraphParams, sign: Sign, x: f64, grid_size: usize, spec: &QuadSpec) -> Result<MixedLaw> {
    let hit = hitting_law(&p.with_v0(sign.velocity()), x)?;
    let horizon = p.horizon;
    if horizon <= hit.t0 {
        return MixedLaw::point_mass(0.0, grid_size);
    }
    let ymax = 1.0 - hit.t0 / horizon;
    let reached = hit.atom_at_t0 + hit.density_mass(hit.t0, horizon, spec)?;
    let mut atoms = vec![Atom {
        y: 0.0,
        mass: (1.0 - reached).max(0.0),
    }];
    if sign == Sign::Plus {
        atoms.push(Atom {
            y: ymax,
            mass: 2.0 * hit.atom_at_t0 * phi_hat(p.lambda * (horizon - hit.t0)),
        });
    }
    let ys = chebyshev_lobatto(grid_size, 0.0, ymax);
    let pdf = ys
        .iter()
        .map(|&y| offset_density(&hit, horizon, y, spec))
        .collect::<Result<Vec<_>>>()?;
    let mut failure = None;
    let cumulative = simpson_cumulative(&ys, &pdf, |y| {
        offset_density(&hit, horizon, y, spec).unwrap_or_else(|e| {
            failure.get_or_insert(e);
            0.0
        })
    });
    if let Some(e) = failure {
        return Err(e);
    }
    let total = *cumulative.last().unwrap();
    let grid = ys.iter().zip(&pdf).map(|(&y, &pdf)| GridPoint { y, pdf }).collect();
    MixedLaw::with_cumulative(atoms, grid, cumulative, total)
}

/// Law of `η_T(x)` for a start at `x ≠ 0`.
///
/// For `x < 0` the particle first has to reach the origin; the law is an atom
/// at 0 (never reached before `T`), for the plus start an atom at `1 - T0/T`
/// (ballistic arrival, no reversal afterwards), and a density on
/// `[0, 1 - T0/T]`. For `x > 0` the law is the reflection `y ↦ 1 - y` of the
/// law at `-x` with the opposite initial direction; the symmetric start is the
/// even mixture of both directions.
pub fn offset_law(p: &TelegraphParams, x: f64, grid_size: usize, spec: &QuadSpec) -> Result<MixedLaw> {
    check_grid_size(grid_size)?;
    if x == 0.0 || !x.is_finite() {
        return domain(format!("offset_law: needs finite x != 0 (use origin_law at x = 0), got {x}"));
    }
    let for_sign = |sign: Sign| -> Result<MixedLaw> {
        if x < 0.0 {
            offset_law_negative(p, sign, x, grid_size, spec)
        } else {
            let mut law = offset_law_negative(p, sign.opposite(), -x, grid_size, spec)?.reflect();
            let t0 = x / p.c;
            if t0 < p.horizon {
                law.snap_atom(t0 / p.horizon, t0 / p.horizon);
            }
            Ok(law)
        }
    };
    let law = match p.v0.sign() {
        Some(sign) => for_sign(sign)?,
        None => for_sign(Sign::Plus)?.mixture(&for_sign(Sign::Minus)?, 0.5)?,
    };
    let mut params = p.to_json();
    params["x"] = json!(x);
    Ok(law.with_params(params))
}

/// `v(x, t) = E[g0(x + X_t)]` for the symmetric-start process:
/// `½ e^{-λt}(g0(x+ct) + g0(x-ct)) + ½ e^{-λt} ∫_{-t}^{t} g0(x+cu) K(u) du`
/// with the kernel `K(u) = λ I_0(λr) + λt I_1(λr)/r`, `r = sqrt(t² - u²)`.
pub fn telegraph_expectation<G: Fn(f64) -> f64>(
    p: &TelegraphParams,
    g0: G,
    x: f64,
    t: f64,
    spec: &QuadSpec,
) -> Result<f64> {
    if p.v0 != InitialVelocity::Symmetric {
        return domain("telegraph_expectation: the closed form holds for the symmetric start only");
    }
    if !(t >= 0.0) || !t.is_finite() {
        return domain(format!("telegraph_expectation: need t >= 0, got {t}"));
    }
    if t == 0.0 {
        return Ok(g0(x));
    }
    let (lam, c) = (p.lambda, p.c);
    let ballistic = 0.5 * (-lam * t).exp() * (g0(x + c * t) + g0(x - c * t));
    let kernel = |u: f64| {
        let r = ((t - u) * (t + u)).max(0.0).sqrt();
        let z = lam * r;
        // e^{-λt} e^{z} = e^{-λ(t - r)}, t - r = u²/(t + r)
        let decay = (-lam * u * u / (t + r)).exp();
        decay * (lam * i0e(z) + lam * lam * t * i1e_over_z(z))
    };
    let diffuse = integrate(|u| g0(x + c * u) * kernel(u), -t, t, spec, SingularEndpoints::BOTH)?;
    Ok(ballistic + 0.5 * diffuse)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn params(lambda: f64, c: f64, t: f64, v0: InitialVelocity) -> TelegraphParams {
        TelegraphParams::new(lambda, c, t, v0).unwrap()
    }

    #[test]
    fn phi_basics() {
        assert_eq!(phi(3.0, 0.0).unwrap(), 0.5);
        let v = phi(1000.0, 1.0).unwrap();
        assert!((v - 0.012_614).abs() < 1e-5, "{v}");
        assert!(((2.0 * v * 1000.0).round() / 1000.0 - 0.025).abs() < 1e-12);
        let (alpha, lt, t) = (3.7, 2.0, 0.4);
        assert!((phi(alpha * lt, t).unwrap() - phi(lt, alpha * t).unwrap()).abs() < 1e-15);
        assert!(phi(-1.0, 0.5).is_err());
        assert!(phi(1.0, -0.5).is_err());
    }

    #[test]
    fn phi_matches_integral() {
        let spec = QuadSpec::tight();
        for &lt in &[0.1, 1.0, 10.0, 1000.0] {
            for &t in &[0.1, 0.5, 1.0, 2.0] {
                let a = phi(lt, t).unwrap();
                let b = phi_integral_oracle(lt, t, &spec).unwrap();
                assert!((a - b).abs() < 1e-8, "λT={lt} t={t}: {a} vs {b}");
            }
        }
        let near_zero = phi_integral_oracle(0.01, 1e-6, &spec).unwrap();
        assert!((near_zero - 0.5).abs() < 1e-4);
    }

    #[test]
    fn psi_symmetry_and_edge() {
        for k in 0..=500 {
            let y = 0.5 + k as f64 / 1000.0;
            let yc = 1.0 - y;
            assert_eq!(psi(2.0, y).unwrap(), psi(2.0, yc).unwrap());
        }
        let lt = 7.0;
        assert!((psi(lt, 0.0).unwrap() - lt * phi(lt, 1.0).unwrap()).abs() < 1e-15);
        assert!(psi(1.0, 1.5).is_err());
    }

    #[test]
    fn origin_law_atoms_and_reflection() {
        let plus = origin_law(&params(1.0, 1.0, 1000.0, InitialVelocity::Plus), 512).unwrap();
        assert_eq!(format!("{:.3}", plus.atom_at(1.0)), "0.025");
        assert!((plus.total_mass() - 1.0).abs() < 1e-6);
        let minus = origin_law(&params(1.0, 1.0, 1000.0, InitialVelocity::Minus), 512).unwrap();
        for k in 1..100 {
            let y = k as f64 / 100.0;
            assert!((plus.cdf(y) - (plus.total_mass() - minus.cdf_left(1.0 - y))).abs() < 1e-12);
        }
        let sym = origin_law(&params(1.0, 1.0, 10.0, InitialVelocity::Symmetric), 256).unwrap();
        assert_eq!(sym.atom_at(0.0), sym.atom_at(1.0));
        assert!((sym.total_mass() - 1.0).abs() < 1e-6);
        assert!(origin_law(&params(1.0, 1.0, 10.0, InitialVelocity::Plus), 10).is_err());
    }

    #[test]
    fn hitting_density_limits() {
        let p = params(1.0, 1.0, 5.0, InitialVelocity::Plus);
        let h = hitting_law(&p, -1.0).unwrap();
        assert!((h.density(1.0) - 0.5 * (-1.0f64).exp()).abs() < 1e-15);
        assert!((h.density(1.0) - 0.183_939_720_585_721_2).abs() < 1e-12);
        // continuity across the limit band
        assert!((h.density(1.0 + 1e-7) - h.density(1.0)).abs() < 1e-6);
        let hm = hitting_law(&p.with_v0(InitialVelocity::Minus), -1.0).unwrap();
        assert!((hm.density(1.0) - 0.5 * (-1.0f64).exp()).abs() < 1e-15);
        assert!((hm.density(1.0 + 1e-7) - hm.density(1.0)).abs() < 1e-6);
        assert!(hitting_law(&p, 0.5).is_err());
        assert!(hitting_law(&p.with_v0(InitialVelocity::Symmetric), -1.0).is_err());
    }

    #[test]
    fn hitting_normalisation() {
        let spec = QuadSpec::tight();
        for &t0 in &[0.1, 1.0, 5.0] {
            for &lambda in &[0.5, 1.0, 5.0] {
                for v0 in [InitialVelocity::Plus, InitialVelocity::Minus] {
                    let p = params(lambda, 1.0, 1.0, v0);
                    let h = hitting_law(&p, -t0).unwrap();
                    let m = h.total_mass(&spec).unwrap();
                    assert!((m - 1.0).abs() < 1e-6, "T0={t0} λ={lambda} {v0:?}: {m}");
                }
            }
        }
    }

    #[test]
    fn offset_law_before_threshold_is_unit_atom() {
        for v0 in [InitialVelocity::Plus, InitialVelocity::Minus, InitialVelocity::Symmetric] {
            let law = offset_law(&params(1.0, 1.0, 1.5, v0), -2.0, 128, &QuadSpec::default()).unwrap();
            assert_eq!(law.atom_at(0.0), 1.0);
            assert_eq!(law.continuous_mass(), 0.0);
            let law = offset_law(&params(1.0, 1.0, 2.0, v0), -2.0, 128, &QuadSpec::default()).unwrap();
            assert_eq!(law.atom_at(0.0), 1.0);
        }
    }

    #[test]
    fn offset_law_mass_and_duality() {
        let spec = QuadSpec::default();
        let plus = offset_law(&params(1.0, 1.0, 5.0, InitialVelocity::Plus), -1.0, 512, &spec).unwrap();
        assert!((plus.total_mass() - 1.0).abs() < 1e-5, "{}", plus.total_mass());
        assert!((plus.atom_at(0.8) - 2.0 * (-1.0f64).exp() * phi(4.0, 1.0).unwrap()).abs() < 1e-15);
        let mirror = offset_law(&params(1.0, 1.0, 5.0, InitialVelocity::Minus), 1.0, 512, &spec).unwrap();
        for k in 1..=10 {
            let q = plus.quantile(k as f64 / 11.0);
            assert!((plus.cdf(q) - (1.0 - mirror.cdf_left(1.0 - q))).abs() < 1e-5);
        }
        assert!(offset_law(&params(1.0, 1.0, 5.0, InitialVelocity::Plus), 0.0, 512, &spec).is_err());
    }

    #[test]
    fn telegraph_equation_reductions() {
        let spec = QuadSpec::tight();
        let p = params(1.0, 1.0, 2.0, InitialVelocity::Symmetric);
        let v = telegraph_expectation(&p, |_| 1.0, 0.0, 2.0, &spec).unwrap();
        assert!((v - 1.0).abs() < 1e-8, "{v}");
        let p = params(1e-10, 1.0, 1.0, InitialVelocity::Symmetric);
        let v = telegraph_expectation(&p, f64::cos, 0.3, 1.0, &spec).unwrap();
        let dalembert = 0.5 * ((1.3f64).cos() + (-0.7f64).cos());
        assert!((v - dalembert).abs() < 1e-6);
        let p = params(1.0, 1.0, 2.0, InitialVelocity::Plus);
        assert!(telegraph_expectation(&p, |_| 1.0, 0.0, 1.0, &spec).is_err());
    }
}

//! Probability laws on `[0, 1]` made of finitely many atoms plus a density
//! tabulated on a grid.
//!
//! Besides the `(y, pdf)` samples a law keeps the continuous mass accumulated
//! up to each grid point. Producers that can integrate their density exactly
//! (or through a closed-form CDF) store those cumulative masses, so CDF
//! queries do not depend on trapezoid accuracy; laws read back from JSON fall
//! back to the trapezoid rule.

use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};
use serde_json::Value;
use std::f64::consts::PI;

pub const DEFAULT_GRID_SIZE: usize = 512;
pub const MIN_GRID_SIZE: usize = 64;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Atom {
    pub y: f64,
    pub mass: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GridPoint {
    pub y: f64,
    pub pdf: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct MixedLaw {
    atoms: Vec<Atom>,
    grid: Vec<GridPoint>,
    cumulative: Vec<f64>,
    continuous_mass: f64,
    params: Value,
}

#[derive(Serialize, Deserialize)]
struct LawJson {
    atoms: Vec<Atom>,
    grid: Vec<GridPoint>,
    /// Continuous mass on `[0, grid[k].y]`; absent in hand-written files.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    cumulative: Option<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    continuous_mass: Option<f64>,
    params: Value,
}

impl MixedLaw {
    /// Law whose continuous mass is the trapezoid integral of `grid`.
    pub fn from_grid(atoms: Vec<Atom>, grid: Vec<GridPoint>) -> Result<Self> {
        check_grid(&grid)?;
        let mut cumulative = Vec::with_capacity(grid.len());
        let mut acc = 0.0;
        cumulative.push(0.0);
        for w in grid.windows(2) {
            acc += 0.5 * (w[1].y - w[0].y) * (w[0].pdf + w[1].pdf);
            cumulative.push(acc);
        }
        Self::with_cumulative(atoms, grid, cumulative, acc)
    }

    /// Law with externally computed cumulative masses: `cumulative[k]` is the
    /// continuous mass on `[0, grid[k].y]` and `continuous_mass` the total.
    pub fn with_cumulative(
        atoms: Vec<Atom>,
        grid: Vec<GridPoint>,
        cumulative: Vec<f64>,
        continuous_mass: f64,
    ) -> Result<Self> {
        check_grid(&grid)?;
        if cumulative.len() != grid.len() {
            return Err(Error::InvalidLaw("cumulative length differs from grid".into()));
        }
        if cumulative.windows(2).any(|w| w[1] < w[0] - 1e-15) {
            return Err(Error::InvalidLaw("cumulative masses must be nondecreasing".into()));
        }
        if !(continuous_mass >= cumulative[cumulative.len() - 1] - 1e-12) || !continuous_mass.is_finite() {
            return Err(Error::InvalidLaw(format!("bad continuous mass {continuous_mass}")));
        }
        let mut atoms = atoms;
        atoms.retain(|a| a.mass != 0.0);
        atoms.sort_by(|a, b| a.y.total_cmp(&b.y));
        for a in &atoms {
            if !(0.0..=1.0).contains(&a.y) || !(0.0..=1.0 + 1e-12).contains(&a.mass) {
                return Err(Error::InvalidLaw(format!("bad atom {a:?}")));
            }
        }
        if atoms.windows(2).any(|w| w[0].y == w[1].y) {
            return Err(Error::InvalidLaw("atom locations must be distinct".into()));
        }
        Ok(Self {
            atoms,
            grid,
            cumulative,
            continuous_mass,
            params: Value::Object(Default::default()),
        })
    }

    /// A unit point mass at `y`, carried on a zero density over `[0, 1]`.
    pub fn point_mass(y: f64, grid_size: usize) -> Result<Self> {
        let grid = chebyshev_lobatto(grid_size.max(MIN_GRID_SIZE), 0.0, 1.0)
            .into_iter()
            .map(|y| GridPoint { y, pdf: 0.0 })
            .collect::<Vec<_>>();
        let n = grid.len();
        Self::with_cumulative(vec![Atom { y, mass: 1.0 }], grid, vec![0.0; n], 0.0)
    }

    pub fn with_params(mut self, params: Value) -> Self {
        self.params = params;
        self
    }

    pub fn atoms(&self) -> &[Atom] {
        &self.atoms
    }

    pub fn grid(&self) -> &[GridPoint] {
        &self.grid
    }

    pub fn params(&self) -> &Value {
        &self.params
    }

    /// Mass of the atom located exactly at `y` (0 if none).
    pub fn atom_at(&self, y: f64) -> f64 {
        self.atoms.iter().filter(|a| a.y == y).map(|a| a.mass).sum::<f64>() + 0.0
    }

    pub fn atom_mass(&self) -> f64 {
        self.atoms.iter().map(|a| a.mass).sum::<f64>() + 0.0
    }

    pub fn continuous_mass(&self) -> f64 {
        self.continuous_mass
    }

    pub fn total_mass(&self) -> f64 {
        self.atom_mass() + self.continuous_mass
    }

    /// Atom masses plus the trapezoid integral of the tabulated density.
    pub fn trapezoid_mass(&self) -> f64 {
        let dens: f64 = self
            .grid
            .windows(2)
            .map(|w| 0.5 * (w[1].y - w[0].y) * (w[0].pdf + w[1].pdf))
            .sum();
        self.atom_mass() + dens
    }

    /// Continuous mass on `[0, y]`.
    pub fn continuous_cdf(&self, y: f64) -> f64 {
        let g = &self.grid;
        let n = g.len();
        if y <= 0.0 {
            return 0.0;
        }
        if y >= 1.0 {
            return self.continuous_mass;
        }
        if y < g[0].y {
            return self.cumulative[0] * y / g[0].y;
        }
        if y >= g[n - 1].y {
            let rest = self.continuous_mass - self.cumulative[n - 1];
            let span = 1.0 - g[n - 1].y;
            return if span > 0.0 {
                self.cumulative[n - 1] + rest * (y - g[n - 1].y) / span
            } else {
                self.continuous_mass
            };
        }
        let k = g.partition_point(|p| p.y <= y) - 1;
        let (lo, hi) = (g[k], g[k + 1]);
        let cell = self.cumulative[k + 1] - self.cumulative[k];
        let h = hi.y - lo.y;
        let d = y - lo.y;
        let full = 0.5 * h * (lo.pdf + hi.pdf);
        let frac = if full > 0.0 && full.is_finite() {
            let p = lo.pdf + (hi.pdf - lo.pdf) * d / h;
            (0.5 * d * (lo.pdf + p) / full).clamp(0.0, 1.0)
        } else {
            d / h
        };
        self.cumulative[k] + cell * frac
    }

    /// `P(Y <= y)`.
    pub fn cdf(&self, y: f64) -> f64 {
        let atoms: f64 = self.atoms.iter().filter(|a| a.y <= y).map(|a| a.mass).sum();
        atoms + self.continuous_cdf(y)
    }

    /// `P(Y < y)`.
    pub fn cdf_left(&self, y: f64) -> f64 {
        let atoms: f64 = self.atoms.iter().filter(|a| a.y < y).map(|a| a.mass).sum();
        atoms + self.continuous_cdf(y)
    }

    /// Smallest `y` with `cdf(y) >= p`.
    pub fn quantile(&self, p: f64) -> f64 {
        if p <= self.cdf(0.0) {
            return 0.0;
        }
        let (mut lo, mut hi) = (0.0_f64, 1.0_f64);
        for _ in 0..64 {
            let mid = 0.5 * (lo + hi);
            if self.cdf(mid) >= p {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        hi
    }

    /// `P(a <= Y <= b)`.
    pub fn box_probability(&self, a: f64, b: f64) -> f64 {
        let atoms: f64 = self
            .atoms
            .iter()
            .filter(|at| at.y >= a && at.y <= b)
            .map(|at| at.mass)
            .sum();
        atoms + self.continuous_cdf(b) - self.continuous_cdf(a)
    }

    /// Law of `1 - Y`.
    pub fn reflect(&self) -> Self {
        let atoms = self
            .atoms
            .iter()
            .map(|a| Atom { y: 1.0 - a.y, mass: a.mass })
            .collect::<Vec<_>>();
        let grid = self
            .grid
            .iter()
            .rev()
            .map(|p| GridPoint { y: 1.0 - p.y, pdf: p.pdf })
            .collect();
        let cumulative = self
            .cumulative
            .iter()
            .rev()
            .map(|c| (self.continuous_mass - c).max(0.0))
            .collect();
        let mut atoms = atoms;
        atoms.sort_by(|a, b| a.y.total_cmp(&b.y));
        Self {
            atoms,
            grid,
            cumulative,
            continuous_mass: self.continuous_mass,
            params: self.params.clone(),
        }
    }

    /// Moves an atom sitting within a few ulps of `near` to exactly `to`.
    pub(crate) fn snap_atom(&mut self, near: f64, to: f64) {
        for a in &mut self.atoms {
            if (a.y - near).abs() <= 4.0 * f64::EPSILON {
                a.y = to;
            }
        }
    }

    /// `weight·self + (1 - weight)·other`; both laws must share one grid.
    pub fn mixture(&self, other: &Self, weight: f64) -> Result<Self> {
        if self.grid.len() != other.grid.len()
            || self.grid.iter().zip(&other.grid).any(|(a, b)| a.y != b.y)
        {
            return Err(Error::InvalidLaw("mixture requires identical grids".into()));
        }
        let w2 = 1.0 - weight;
        let mut atoms: Vec<Atom> = Vec::new();
        for (src, w) in [(&self.atoms, weight), (&other.atoms, w2)] {
            for a in src {
                match atoms.iter_mut().find(|b| b.y == a.y) {
                    Some(b) => b.mass += w * a.mass,
                    None => atoms.push(Atom { y: a.y, mass: w * a.mass }),
                }
            }
        }
        let grid = self
            .grid
            .iter()
            .zip(&other.grid)
            .map(|(a, b)| GridPoint {
                y: a.y,
                pdf: weight * a.pdf + w2 * b.pdf,
            })
            .collect();
        let cumulative = self
            .cumulative
            .iter()
            .zip(&other.cumulative)
            .map(|(a, b)| weight * a + w2 * b)
            .collect();
        Self::with_cumulative(
            atoms,
            grid,
            cumulative,
            weight * self.continuous_mass + w2 * other.continuous_mass,
        )
        .map(|l| l.with_params(self.params.clone()))
    }

    /// `E[g(Y)]`. Each cell's mass is placed at the centroid of the linear
    /// density interpolant, which is exact for affine `g`.
    pub fn expectation<G: Fn(f64) -> f64>(&self, g: G) -> f64 {
        let mut total: f64 = self.atoms.iter().map(|a| a.mass * g(a.y)).sum();
        let grid = &self.grid;
        let n = grid.len();
        if self.cumulative[0] > 0.0 {
            total += self.cumulative[0] * g(0.5 * grid[0].y);
        }
        for k in 0..n - 1 {
            let (lo, hi) = (grid[k], grid[k + 1]);
            let mass = self.cumulative[k + 1] - self.cumulative[k];
            if mass == 0.0 {
                continue;
            }
            let s = lo.pdf + hi.pdf;
            let frac = if s > 0.0 && s.is_finite() {
                (lo.pdf + 2.0 * hi.pdf) / (3.0 * s)
            } else {
                0.5
            };
            total += mass * g(lo.y + frac * (hi.y - lo.y));
        }
        let rest = self.continuous_mass - self.cumulative[n - 1];
        if rest > 0.0 {
            total += rest * g(0.5 * (grid[n - 1].y + 1.0));
        }
        total
    }

    /// Points where the CDF must be probed to find a supremum distance:
    /// grid nodes, atom locations and the endpoints.
    fn probe_points(&self) -> Vec<f64> {
        let mut pts: Vec<f64> = self.grid.iter().map(|p| p.y).collect();
        pts.extend(self.atoms.iter().map(|a| a.y));
        pts.push(0.0);
        pts.push(1.0);
        pts
    }

    /// `sup_y |F(y) - G(y)|` against an arbitrary CDF, probed at both one-sided
    /// limits of every grid node and atom.
    pub fn sup_distance_to<G: Fn(f64) -> f64>(&self, other_cdf: G) -> f64 {
        self.probe_points()
            .into_iter()
            .flat_map(|y| {
                [
                    (self.cdf(y) - other_cdf(y)).abs(),
                    (self.cdf_left(y) - other_cdf(y)).abs(),
                ]
            })
            .fold(0.0, f64::max)
    }

    /// Kolmogorov distance between two tabulated laws.
    pub fn sup_distance(&self, other: &Self) -> f64 {
        let mut pts = self.probe_points();
        pts.extend(other.probe_points());
        pts.into_iter()
            .flat_map(|y| {
                [
                    (self.cdf(y) - other.cdf(y)).abs(),
                    (self.cdf_left(y) - other.cdf_left(y)).abs(),
                ]
            })
            .fold(0.0, f64::max)
    }

    pub fn to_json(&self) -> Result<String> {
        let doc = LawJson {
            atoms: self.atoms.clone(),
            grid: self.grid.clone(),
            cumulative: Some(self.cumulative.clone()),
            continuous_mass: Some(self.continuous_mass),
            params: self.params.clone(),
        };
        serde_json::to_string_pretty(&doc).map_err(|e| Error::InvalidLaw(e.to_string()))
    }

    /// Reads the JSON layout back. Stored cell masses are reused when
    /// present; otherwise the density grid is integrated with the trapezoid
    /// rule.
    pub fn from_json(text: &str) -> Result<Self> {
        let doc: LawJson = serde_json::from_str(text).map_err(|e| Error::InvalidLaw(e.to_string()))?;
        let law = match (doc.cumulative, doc.continuous_mass) {
            (Some(cum), Some(total)) => Self::with_cumulative(doc.atoms, doc.grid, cum, total)?,
            (None, None) => Self::from_grid(doc.atoms, doc.grid)?,
            _ => return Err(Error::InvalidLaw("cumulative and continuous_mass go together".into())),
        };
        Ok(law.with_params(doc.params))
    }
}

fn check_grid(grid: &[GridPoint]) -> Result<()> {
    if grid.len() < 2 {
        return Err(Error::InvalidLaw("density grid needs at least two points".into()));
    }
    for w in grid.windows(2) {
        if !(w[1].y > w[0].y) {
            return Err(Error::InvalidLaw("grid must be strictly increasing".into()));
        }
    }
    for p in grid {
        if !(0.0..=1.0).contains(&p.y) || !(p.pdf >= 0.0) {
            return Err(Error::InvalidLaw(format!("bad grid point {p:?}")));
        }
    }
    Ok(())
}

/// `n` Chebyshev–Lobatto points on `[lo, hi]`, endpoints included, clustered
/// at both ends.
pub fn chebyshev_lobatto(n: usize, lo: f64, hi: f64) -> Vec<f64> {
    let m = (n - 1) as f64;
    let mut pts: Vec<f64> = (0..n)
        .map(|k| lo + (hi - lo) * 0.5 * (1.0 - (PI * k as f64 / m).cos()))
        .collect();
    pts[0] = lo;
    pts[n - 1] = hi;
    pts
}

/// `n` Chebyshev points strictly inside `(lo, hi)`, for densities with poles
/// at the endpoints.
pub fn chebyshev_interior(n: usize, lo: f64, hi: f64) -> Vec<f64> {
    (0..n)
        .map(|k| lo + (hi - lo) * 0.5 * (1.0 - (PI * (k as f64 + 0.5) / n as f64).cos()))
        .collect()
}

/// Integrates a density over each grid cell with 3-point Simpson panels and
/// returns the running sums starting at 0.
pub(crate) fn simpson_cumulative<F: FnMut(f64) -> f64>(ys: &[f64], pdf_at_nodes: &[f64], mut density: F) -> Vec<f64> {
    let mut out = Vec::with_capacity(ys.len());
    let mut acc = 0.0;
    out.push(0.0);
    for k in 0..ys.len() - 1 {
        let (a, b) = (ys[k], ys[k + 1]);
        let m = 0.5 * (a + b);
        let (fa, fm, fb) = (pdf_at_nodes[k], density(m), pdf_at_nodes[k + 1]);
        let whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
        acc += adaptive_simpson(&mut density, a, b, fa, fm, fb, whole, 1e-11 * (b - a), 24);
        out.push(acc);
    }
    out
}

/// Refines one Simpson cell until halving changes it by less than `eps`;
/// a cell that already resolves the density costs two extra evaluations.
#[allow(clippy::too_many_arguments)]
fn adaptive_simpson<F: FnMut(f64) -> f64>(
    f: &mut F,
    a: f64,
    b: f64,
    fa: f64,
    fm: f64,
    fb: f64,
    whole: f64,
    eps: f64,
    depth: u32,
) -> f64 {
    let m = 0.5 * (a + b);
    let (lm, rm) = (0.5 * (a + m), 0.5 * (m + b));
    let (flm, frm) = (f(lm), f(rm));
    let left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    let right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    let diff = left + right - whole;
    if depth == 0 || diff.abs() <= 15.0 * eps {
        return left + right + diff / 15.0;
    }
    adaptive_simpson(f, a, m, fa, flm, fm, left, 0.5 * eps, depth - 1)
        + adaptive_simpson(f, m, b, fm, frm, fb, right, 0.5 * eps, depth - 1)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn uniform_with_atom() -> MixedLaw {
        let grid = chebyshev_lobatto(65, 0.0, 1.0)
            .into_iter()
            .map(|y| GridPoint { y, pdf: 0.5 })
            .collect();
        MixedLaw::from_grid(vec![Atom { y: 1.0, mass: 0.5 }], grid).unwrap()
    }

    #[test]
    fn cdf_and_boxes() {
        let law = uniform_with_atom();
        assert!((law.total_mass() - 1.0).abs() < 1e-15);
        assert!((law.cdf(0.5) - 0.25).abs() < 1e-14);
        assert!((law.cdf_left(1.0) - 0.5).abs() < 1e-14);
        assert_eq!(law.cdf(1.0), 1.0);
        assert!((law.box_probability(0.99, 1.0) - 0.505).abs() < 1e-14);
        assert!((law.quantile(0.25) - 0.5).abs() < 1e-12);
        assert_eq!(law.quantile(0.9), 1.0);
    }

    #[test]
    fn reflection_mirrors_cdf() {
        let law = uniform_with_atom();
        let r = law.reflect();
        assert_eq!(r.atom_at(0.0), 0.5);
        for k in 1..50 {
            let y = k as f64 / 50.0;
            assert!((law.cdf(y) - (1.0 - r.cdf_left(1.0 - y))).abs() < 1e-14);
        }
    }

    #[test]
    fn json_layout_is_fixed() {
        let law = uniform_with_atom().with_params(serde_json::json!({"lambda": 1.0}));
        let text = law.to_json().unwrap();
        let v: Value = serde_json::from_str(&text).unwrap();
        let keys: Vec<_> = v.as_object().unwrap().keys().cloned().collect();
        assert_eq!(keys, ["atoms", "continuous_mass", "cumulative", "grid", "params"]);
        assert!(v["atoms"][0].get("y").is_some() && v["atoms"][0].get("mass").is_some());
        assert!(v["grid"][0].get("pdf").is_some());
        let back = MixedLaw::from_json(&text).unwrap();
        assert!((back.total_mass() - 1.0).abs() < 1e-15);

        let mut bare = v.clone();
        let obj = bare.as_object_mut().unwrap();
        obj.remove("cumulative");
        obj.remove("continuous_mass");
        let back = MixedLaw::from_json(&bare.to_string()).unwrap();
        assert!((back.total_mass() - 1.0).abs() < 1e-15);

        let mut half = v.clone();
        half.as_object_mut().unwrap().remove("cumulative");
        assert!(MixedLaw::from_json(&half.to_string()).is_err());
    }

    #[test]
    fn invariants_enforced() {
        let grid = vec![GridPoint { y: 0.0, pdf: 1.0 }, GridPoint { y: 0.0, pdf: 1.0 }];
        assert!(MixedLaw::from_grid(vec![], grid).is_err());
        let grid = vec![GridPoint { y: 0.0, pdf: -1.0 }, GridPoint { y: 1.0, pdf: 1.0 }];
        assert!(MixedLaw::from_grid(vec![], grid).is_err());
        let grid = vec![GridPoint { y: 0.0, pdf: 1.0 }, GridPoint { y: 1.0, pdf: 1.0 }];
        let atoms = vec![Atom { y: 0.5, mass: 0.1 }, Atom { y: 0.5, mass: 0.1 }];
        assert!(MixedLaw::from_grid(atoms, grid).is_err());
    }

    #[test]
    fn chebyshev_grids() {
        let g = chebyshev_lobatto(64, 0.0, 1.0);
        assert_eq!((g[0], g[63]), (0.0, 1.0));
        assert!(g.windows(2).all(|w| w[1] > w[0]));
        let g = chebyshev_interior(64, 0.0, 1.0);
        assert!(g[0] > 0.0 && g[63] < 1.0);
    }
}

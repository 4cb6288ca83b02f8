//! Event-driven Monte Carlo for the telegraph process.
//!
//! A path is stored as its initial direction and reversal times; between
//! reversals the motion is linear, so occupation functionals are computed
//! segment by segment without any time stepping.

use crate::error::{domain, Error, Result};
use crate::law::MixedLaw;
use crate::telegraph::{InitialVelocity, TelegraphParams};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Exp};
use rayon::prelude::*;
use serde_json::{json, Value};
use std::f64::consts::PI;
use std::fmt;
use std::io::{Read, Write};
use std::sync::Arc;

#[derive(Debug, Clone, PartialEq)]
pub struct PathRecord {
    /// `+1` or `-1`.
    pub v0_sign: i8,
    /// Increasing reversal times in `(0, horizon]`.
    pub reversal_times: Vec<f64>,
    pub horizon: f64,
}

impl PathRecord {
    /// Linear pieces `(t_start, t_end, sign)` covering `[0, horizon]`.
    pub fn segments(&self) -> impl Iterator<Item = (f64, f64, f64)> + '_ {
        let n = self.reversal_times.len();
        let s0 = self.v0_sign as f64;
        (0..=n).map(move |i| {
            let a = if i == 0 { 0.0 } else { self.reversal_times[i - 1] };
            let b = if i == n { self.horizon } else { self.reversal_times[i] };
            let sign = if i % 2 == 0 { s0 } else { -s0 };
            (a, b, sign)
        })
    }

    /// `x + X_t` for `t` in `[0, horizon]`.
    pub fn position(&self, c: f64, x: f64, t: f64) -> f64 {
        let mut pos = x;
        for (a, b, sign) in self.segments() {
            if t <= b {
                return pos + sign * c * (t - a);
            }
            pos += sign * c * (b - a);
        }
        pos
    }
}

/// Replica `index` of a run seeded with `seed`: the ChaCha key comes from
/// `seed`, the stream id is the replica index.
pub fn replica_rng(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

/// Draws one path on `[0, T]`; a symmetric start first tosses a fair coin.
pub fn sample_path<R: Rng + ?Sized>(p: &TelegraphParams, rng: &mut R) -> PathRecord {
    let v0_sign = match p.v0 {
        InitialVelocity::Plus => 1,
        InitialVelocity::Minus => -1,
        InitialVelocity::Symmetric => {
            if rng.random::<bool>() {
                1
            } else {
                -1
            }
        }
    };
    let holding = Exp::new(p.lambda).expect("λ validated positive");
    let mut reversal_times = Vec::with_capacity((1.5 * p.lambda_t()) as usize + 8);
    let mut t = holding.sample(rng);
    while t <= p.horizon {
        reversal_times.push(t);
        t += holding.sample(rng);
    }
    PathRecord {
        v0_sign,
        reversal_times,
        horizon: p.horizon,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ProbeKind {
    /// Indicator of `(0, ∞)`.
    Heaviside,
    /// `atan(z)/π + 1/2`.
    AtanHalf,
    /// `atan(z)/π + cos(z) + 1/2`.
    AtanCosHalf,
    Custom,
}

/// The function `f` whose time average along the path is recorded.
#[derive(Clone)]
pub struct ProbeFunction {
    pub kind: ProbeKind,
    pub f_minus: f64,
    pub f_plus: f64,
    custom: Option<Arc<dyn Fn(f64) -> f64 + Send + Sync>>,
}

impl fmt::Debug for ProbeFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ProbeFunction")
            .field("kind", &self.kind)
            .field("f_minus", &self.f_minus)
            .field("f_plus", &self.f_plus)
            .finish()
    }
}

impl ProbeFunction {
    pub fn heaviside() -> Self {
        Self::builtin(ProbeKind::Heaviside)
    }

    pub fn atan_half() -> Self {
        Self::builtin(ProbeKind::AtanHalf)
    }

    pub fn atan_cos_half() -> Self {
        Self::builtin(ProbeKind::AtanCosHalf)
    }

    fn builtin(kind: ProbeKind) -> Self {
        Self {
            kind,
            f_minus: 0.0,
            f_plus: 1.0,
            custom: None,
        }
    }

    /// An arbitrary bounded probe with limits `f_minus`, `f_plus` at `∓∞`.
    pub fn custom<F>(f: F, f_minus: f64, f_plus: f64) -> Self
    where
        F: Fn(f64) -> f64 + Send + Sync + 'static,
    {
        Self {
            kind: ProbeKind::Custom,
            f_minus,
            f_plus,
            custom: Some(Arc::new(f)),
        }
    }

    pub fn name(&self) -> &'static str {
        match self.kind {
            ProbeKind::Heaviside => "heaviside",
            ProbeKind::AtanHalf => "atan",
            ProbeKind::AtanCosHalf => "atan-cos",
            ProbeKind::Custom => "custom",
        }
    }

    pub fn eval(&self, z: f64) -> f64 {
        match self.kind {
            ProbeKind::Heaviside => {
                if z > 0.0 {
                    1.0
                } else {
                    0.0
                }
            }
            ProbeKind::AtanHalf => z.atan() / PI + 0.5,
            ProbeKind::AtanCosHalf => z.atan() / PI + z.cos() + 0.5,
            ProbeKind::Custom => (self.custom.as_ref().expect("custom probe carries a function"))(z),
        }
    }

    /// Values can leave `[0, 1]`, so histograms must extend their range.
    pub fn may_leave_unit_interval(&self) -> bool {
        matches!(self.kind, ProbeKind::AtanCosHalf | ProbeKind::Custom)
    }
}

impl std::str::FromStr for ProbeFunction {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "heaviside" | "h" => Ok(Self::heaviside()),
            "atan" | "atan-half" | "atanhalf" => Ok(Self::atan_half()),
            "atan-cos" | "atancos" | "atan-cos-half" | "atancoshalf" => Ok(Self::atan_cos_half()),
            other => Err(format!("unknown probe '{other}' (heaviside|atan|atan-cos)")),
        }
    }
}

/// `z atan z - ½ ln(1 + z²)`, an antiderivative of `atan`.
fn atan_antiderivative(z: f64) -> f64 {
    z * z.atan() - z.hypot(1.0).ln()
}

/// 16-point Gauss–Legendre nodes and weights on `[-1, 1]` (positive half).
const GL16: [(f64, f64); 8] = [
    (0.09501250983763745, 0.18945061045506859),
    (0.2816035507792589, 0.1826034150449236),
    (0.45801677765722737, 0.16915651939500262),
    (0.6178762444026438, 0.14959598881657676),
    (0.755404408355003, 0.12462897125553403),
    (0.8656312023878318, 0.09515851168249259),
    (0.9445750230732326, 0.062253523938647706),
    (0.9894009349916499, 0.027152459411754037),
];

fn gauss_legendre<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> f64 {
    let half = 0.5 * (b - a);
    let mid = 0.5 * (a + b);
    GL16.iter()
        .map(|&(x, w)| w * (f(mid - half * x) + f(mid + half * x)))
        .sum::<f64>()
        * half
}

/// `η_T(x; f) = T^{-1} ∫_0^T f(x + X_t) dt` along a sampled path.
///
/// For the Heaviside probe the positive and negative times are tallied
/// separately, so a path that never changes side returns exactly 0 or 1.
pub fn occupation(path: &PathRecord, p: &TelegraphParams, x: f64, f: &ProbeFunction) -> f64 {
    let c = p.c;
    let mut pos = x;
    match f.kind {
        ProbeKind::Heaviside => {
            let (mut plus, mut minus) = (0.0, 0.0);
            for (a, b, sign) in path.segments() {
                let d = b - a;
                let end = pos + sign * c * d;
                if pos >= 0.0 && end >= 0.0 {
                    plus += d;
                } else if pos <= 0.0 && end <= 0.0 {
                    minus += d;
                } else {
                    let to_zero = pos.abs() / c;
                    if pos > 0.0 {
                        plus += to_zero;
                        minus += d - to_zero;
                    } else {
                        minus += to_zero;
                        plus += d - to_zero;
                    }
                }
                pos = end;
            }
            if minus == 0.0 {
                1.0
            } else if plus == 0.0 {
                0.0
            } else {
                plus / (plus + minus)
            }
        }
        ProbeKind::AtanHalf | ProbeKind::AtanCosHalf => {
            let with_cos = f.kind == ProbeKind::AtanCosHalf;
            let mut total = 0.0;
            for (a, b, sign) in path.segments() {
                let d = b - a;
                if d <= 0.0 {
                    continue;
                }
                let v = sign * c;
                let end = pos + v * d;
                let mut piece = 0.5 * d + (atan_antiderivative(end) - atan_antiderivative(pos)) / (PI * v);
                if with_cos {
                    piece += (end.sin() - pos.sin()) / v;
                }
                total += piece;
                pos = end;
            }
            total / path.horizon
        }
        ProbeKind::Custom => {
            let h = 1.0 / (1.0 + p.lambda.abs());
            let mut total = 0.0;
            for (a, b, sign) in path.segments() {
                let d = b - a;
                if d <= 0.0 {
                    continue;
                }
                let v = sign * c;
                let start = pos;
                let g = |s: f64| f.eval(start + v * s);
                let pieces = (d / h).ceil().max(1.0) as usize;
                let step = d / pieces as f64;
                for k in 0..pieces {
                    total += gauss_legendre(&g, k as f64 * step, (k + 1) as f64 * step);
                }
                pos += v * d;
            }
            total / path.horizon
        }
    }
}

/// Histogram of occupation values with dedicated counters for exact 0 and 1.
///
/// Bin `k` covers `[k/bins_per_unit, (k+1)/bins_per_unit)`; the last bin
/// inside `[0, 1]` is closed on the right.
#[derive(Debug, Clone, PartialEq)]
pub struct EmpiricalSummary {
    pub n_runs: u64,
    pub bins_per_unit: u32,
    /// Index of the first bin (negative when values fall below 0).
    pub first_bin: i64,
    pub bin_counts: Vec<u64>,
    pub exact_zero_count: u64,
    pub exact_one_count: u64,
    pub seed: u64,
    pub params: Value,
}

pub const DEFAULT_BINS_PER_UNIT: u32 = 100;

impl EmpiricalSummary {
    pub fn bin_width(&self) -> f64 {
        1.0 / self.bins_per_unit as f64
    }

    /// Bins `values` at width `1/bins_per_unit`; the range always covers
    /// `[0, 1]` and grows to hold values outside it.
    pub fn from_values(values: &[f64], bins_per_unit: u32, seed: u64, params: Value) -> Result<Self> {
        if values.is_empty() {
            return domain("empirical summary needs at least one value");
        }
        if bins_per_unit == 0 {
            return domain("bins_per_unit must be positive");
        }
        if let Some(v) = values.iter().find(|v| !v.is_finite()) {
            return domain(format!("non-finite occupation value {v}"));
        }
        let m = bins_per_unit as i64;
        let index = |v: f64| -> i64 {
            let k = (v * bins_per_unit as f64).floor() as i64;
            if v == 1.0 {
                m - 1
            } else {
                k
            }
        };
        let lo = values.iter().map(|&v| index(v)).min().unwrap().min(0);
        let hi = values.iter().map(|&v| index(v)).max().unwrap().max(m - 1);
        let mut bin_counts = vec![0u64; (hi - lo + 1) as usize];
        let (mut zeros, mut ones) = (0, 0);
        for &v in values {
            if v == 0.0 {
                zeros += 1;
            } else if v == 1.0 {
                ones += 1;
            } else {
                bin_counts[(index(v) - lo) as usize] += 1;
            }
        }
        Ok(Self {
            n_runs: values.len() as u64,
            bins_per_unit,
            first_bin: lo,
            bin_counts,
            exact_zero_count: zeros,
            exact_one_count: ones,
            seed,
            params,
        })
    }

    pub fn bin_edges(&self, k: usize) -> (f64, f64) {
        let w = self.bin_width();
        let i = self.first_bin + k as i64;
        (i as f64 * w, (i + 1) as f64 * w)
    }

    /// Count in the bin with absolute index `i`, exact-0 values added to the
    /// bin starting at 0 and exact-1 values to the bin ending at 1.
    pub fn bin_count_with_atoms(&self, i: i64) -> u64 {
        let k = i - self.first_bin;
        let mut n = if k >= 0 && (k as usize) < self.bin_counts.len() {
            self.bin_counts[k as usize]
        } else {
            0
        };
        if i == 0 {
            n += self.exact_zero_count;
        }
        if i == self.bins_per_unit as i64 - 1 {
            n += self.exact_one_count;
        }
        n
    }

    /// Relative frequency of the first box `[0, Δ]` and of the last box
    /// `[1 - Δ, 1]`, atoms included.
    pub fn edge_box_frequencies(&self) -> (f64, f64) {
        let n = self.n_runs as f64;
        (
            self.bin_count_with_atoms(0) as f64 / n,
            self.bin_count_with_atoms(self.bins_per_unit as i64 - 1) as f64 / n,
        )
    }

    /// Fraction of values outside `[0, 1]`.
    pub fn outside_unit_fraction(&self) -> f64 {
        let m = self.bins_per_unit as i64;
        let out: u64 = self
            .bin_counts
            .iter()
            .enumerate()
            .filter(|(k, _)| {
                let i = self.first_bin + *k as i64;
                i < 0 || i >= m
            })
            .map(|(_, c)| c)
            .sum();
        out as f64 / self.n_runs as f64
    }

    /// `#{v < e}/N` at every bin edge `e`, starting with the left edge of the
    /// first bin.
    fn edge_cdf(&self) -> Vec<(f64, f64)> {
        let n = self.n_runs as f64;
        let m = self.bins_per_unit as i64;
        let w = self.bin_width();
        let mut below = 0u64;
        let mut out = Vec::with_capacity(self.bin_counts.len() + 1);
        for k in 0..=self.bin_counts.len() {
            let i = self.first_bin + k as i64;
            let mut count = below;
            if i >= 1 {
                count += self.exact_zero_count;
            }
            if i > m {
                count += self.exact_one_count;
            }
            out.push((i as f64 * w, count as f64 / n));
            if k < self.bin_counts.len() {
                below += self.bin_counts[k];
            }
        }
        out
    }

    pub fn write_csv<W: Write>(&self, out: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        let io = |e: csv::Error| Error::Domain(format!("csv write failed: {e}"));
        w.write_record(["bin_left", "bin_right", "count"]).map_err(io)?;
        for k in 0..self.bin_counts.len() {
            let (l, r) = self.bin_edges(k);
            w.write_record([format!("{l}"), format!("{r}"), self.bin_counts[k].to_string()])
                .map_err(io)?;
        }
        w.flush().map_err(|e| Error::Domain(format!("csv write failed: {e}")))
    }

    pub fn sidecar_json(&self) -> Value {
        json!({
            "n_runs": self.n_runs,
            "seed": self.seed,
            "exact_zero": self.exact_zero_count,
            "exact_one": self.exact_one_count,
            "params": self.params,
        })
    }

    /// Rebuilds a summary from its CSV table and JSON sidecar.
    pub fn read<R1: Read, R2: Read>(csv_in: R1, json_in: R2) -> Result<Self> {
        let bad = |m: String| Error::Domain(format!("empirical summary: {m}"));
        let side: Value = serde_json::from_reader(json_in).map_err(|e| bad(e.to_string()))?;
        let field = |k: &str| side.get(k).and_then(Value::as_u64).ok_or_else(|| bad(format!("missing '{k}'")));
        let (n_runs, seed) = (field("n_runs")?, field("seed")?);
        let (zeros, ones) = (field("exact_zero")?, field("exact_one")?);
        let mut rows = Vec::new();
        let mut reader = csv::Reader::from_reader(csv_in);
        for rec in reader.records() {
            let rec = rec.map_err(|e| bad(e.to_string()))?;
            let num = |i: usize| rec.get(i).ok_or_else(|| bad("short row".into()));
            let l: f64 = num(0)?.parse().map_err(|_| bad("bad bin_left".into()))?;
            let r: f64 = num(1)?.parse().map_err(|_| bad("bad bin_right".into()))?;
            let c: u64 = num(2)?.parse().map_err(|_| bad("bad count".into()))?;
            rows.push((l, r, c));
        }
        let (l0, r0, _) = *rows.first().ok_or_else(|| bad("empty table".into()))?;
        let bins_per_unit = (1.0 / (r0 - l0)).round() as u32;
        let first_bin = (l0 * bins_per_unit as f64).round() as i64;
        let summary = Self {
            n_runs,
            bins_per_unit,
            first_bin,
            bin_counts: rows.iter().map(|r| r.2).collect(),
            exact_zero_count: zeros,
            exact_one_count: ones,
            seed,
            params: side.get("params").cloned().unwrap_or(Value::Null),
        };
        let total: u64 = summary.bin_counts.iter().sum::<u64>() + zeros + ones;
        if total != n_runs {
            return Err(bad(format!("counts sum to {total}, sidecar says {n_runs}")));
        }
        Ok(summary)
    }
}

/// Occupation values of `n_runs` independent replicas in replica order.
pub fn simulate_values(p: &TelegraphParams, x: f64, f: &ProbeFunction, n_runs: u64, seed: u64) -> Vec<f64> {
    (0..n_runs)
        .into_par_iter()
        .map(|i| {
            let mut rng = replica_rng(seed, i);
            let path = sample_path(p, &mut rng);
            occupation(&path, p, x, f)
        })
        .collect()
}

/// Runs `n_runs` replicas and bins the occupation values at width 0.01.
///
/// Replica `i` always uses stream `i` of `seed`, and the reduction is in
/// replica order, so the result does not depend on the number of workers.
pub fn run_experiment(
    p: &TelegraphParams,
    x: f64,
    f: &ProbeFunction,
    n_runs: u64,
    seed: u64,
) -> Result<EmpiricalSummary> {
    if n_runs == 0 {
        return domain("n_runs must be at least 1");
    }
    let values = simulate_values(p, x, f, n_runs, seed);
    let mut params = p.to_json();
    params["x"] = json!(x);
    params["probe"] = json!(f.name());
    EmpiricalSummary::from_values(&values, DEFAULT_BINS_PER_UNIT, seed, params)
}

/// Kolmogorov–Smirnov distance between the binned sample and a law, probed
/// at every bin edge (left limits) and additionally at the atoms 0 and 1
/// (right limits).
pub fn ks_statistic(emp: &EmpiricalSummary, law: &MixedLaw) -> f64 {
    let n = emp.n_runs as f64;
    let mut worst: f64 = 0.0;
    for (e, f_emp) in emp.edge_cdf() {
        worst = worst.max((f_emp - law.cdf_left(e)).abs());
    }
    let below: u64 = emp
        .bin_counts
        .iter()
        .enumerate()
        .filter(|(k, _)| emp.first_bin + (*k as i64) < 0)
        .map(|(_, c)| c)
        .sum();
    let at_zero = (below + emp.exact_zero_count) as f64 / n;
    worst = worst.max((at_zero - law.cdf(0.0)).abs());
    let m = emp.bins_per_unit as i64;
    let upto_one: u64 = emp
        .bin_counts
        .iter()
        .enumerate()
        .filter(|(k, _)| emp.first_bin + (*k as i64) < m)
        .map(|(_, c)| c)
        .sum();
    let at_one = (upto_one + emp.exact_zero_count + emp.exact_one_count) as f64 / n;
    worst.max((at_one - law.cdf(1.0)).abs()).min(1.0)
}

/// Monte Carlo estimate of `E[g0(x + X_t)]` with its standard error.
pub fn mc_expectation<G>(
    p: &TelegraphParams,
    g0: G,
    x: f64,
    t: f64,
    n_runs: u64,
    seed: u64,
) -> Result<(f64, f64)>
where
    G: Fn(f64) -> f64 + Sync,
{
    if !(0.0..=p.horizon).contains(&t) {
        return domain(format!("mc_expectation: need 0 <= t <= T, got t = {t}"));
    }
    if n_runs < 2 {
        return domain("mc_expectation needs at least two runs");
    }
    let horizon = p.with_horizon(t.max(f64::MIN_POSITIVE));
    let values: Vec<f64> = (0..n_runs)
        .into_par_iter()
        .map(|i| {
            let mut rng = replica_rng(seed, i);
            let path = sample_path(&horizon, &mut rng);
            g0(path.position(p.c, x, t))
        })
        .collect();
    let n = n_runs as f64;
    let mean = values.iter().sum::<f64>() / n;
    let var = values.iter().map(|v| (v - mean) * (v - mean)).sum::<f64>() / (n - 1.0);
    Ok((mean, (var / n).sqrt()))
}

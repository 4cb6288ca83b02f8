//! Command-line front end.
//!
//! Every subcommand writes its data to `--output` (or stdout) and short
//! human-readable notes to stderr. Exit status: 0 on success, 1 when a
//! numerical step fails or a verification check does not pass, 2 on a
//! usage error.

use std::fs::{self, File};
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Map, Value};

use crate::laplace::{self, Check, Suite, TransformPoint};
use crate::law::{MixedLaw, DEFAULT_GRID_SIZE};
use crate::limit::{limit_law, LimitLawSpec};
use crate::sim::{self, EmpiricalSummary, ProbeFunction};
use crate::special::QuadSpec;
use crate::telegraph::{self, InitialVelocity, TelegraphParams};
use crate::Error;

pub const EXIT_OK: i32 = 0;
pub const EXIT_NUMERIC: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "telegraph-occupation",
    version,
    about = "Occupation-time laws of the telegraph process",
    args_override_self = true
)]
pub struct RunConfig {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Exact law of the occupation fraction (origin or offset start).
    Law(LawArgs),
    /// Limit law Y_a (arcsine at a = 0).
    Limit(LimitArgs),
    /// Hitting-time density and CDF on a grid.
    Hitting(HittingArgs),
    /// Monte Carlo histogram of the occupation fraction.
    Simulate(SimulateArgs),
    /// Laplace-domain verification report.
    Verify(VerifyArgs),
    /// Solution of the telegraph equation on an (x, t) grid.
    #[command(name = "solve-te")]
    SolveTe(SolveTeArgs),
    /// Overlay a simulated histogram with the exact or limiting law.
    Compare(CompareArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Reference {
    /// Exact finite-T law (Heaviside probe only).
    Exact,
    /// Limit law with a = x / sqrt(c²T/λ).
    Limit,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum InitialFunction {
    Cos,
    Sin,
    Gauss,
}

impl InitialFunction {
    fn eval(self, z: f64) -> f64 {
        match self {
            Self::Cos => z.cos(),
            Self::Sin => z.sin(),
            Self::Gauss => (-z * z).exp(),
        }
    }
}

#[derive(Debug, Clone, Args)]
pub struct ProcessArgs {
    /// Reversal rate.
    #[arg(long, default_value_t = 1.0)]
    pub lambda: f64,
    /// Speed.
    #[arg(long, default_value_t = 1.0)]
    pub c: f64,
    /// Time horizon.
    #[arg(long = "T", default_value_t = 1.0)]
    pub horizon: f64,
    /// Initial velocity: plus, minus or symmetric.
    #[arg(long, default_value = "plus")]
    pub v0: InitialVelocity,
}

impl ProcessArgs {
    fn params(&self) -> crate::Result<TelegraphParams> {
        TelegraphParams::new(self.lambda, self.c, self.horizon, self.v0)
    }
}

#[derive(Debug, Clone, Args)]
pub struct OutputArgs {
    /// Output file (stdout when absent).
    #[arg(long, short)]
    pub output: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// key=value file; flags given on the command line win.
    #[arg(long)]
    pub config: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct LawArgs {
    #[command(flatten)]
    pub process: ProcessArgs,
    /// Starting point; 0 gives the origin law.
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    pub x: f64,
    #[arg(long, default_value_t = DEFAULT_GRID_SIZE)]
    pub grid: usize,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Debug, Clone, Args)]
pub struct LimitArgs {
    /// Scaled offset; derived from --x, --lambda, --c, --T when absent.
    #[arg(long, allow_hyphen_values = true)]
    pub a: Option<f64>,
    #[command(flatten)]
    pub process: ProcessArgs,
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    pub x: f64,
    #[arg(long, default_value_t = DEFAULT_GRID_SIZE)]
    pub grid: usize,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Debug, Clone, Args)]
pub struct HittingArgs {
    #[command(flatten)]
    pub process: ProcessArgs,
    /// Starting point (x < 0); the level is -x.
    #[arg(long, allow_hyphen_values = true)]
    pub x: f64,
    /// Right end of the time grid (default T0 + 10/λ).
    #[arg(long)]
    pub umax: Option<f64>,
    #[arg(long, default_value_t = 201)]
    pub grid: usize,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Debug, Clone, Args)]
pub struct SimulateArgs {
    #[command(flatten)]
    pub process: ProcessArgs,
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    pub x: f64,
    /// heaviside, atan or atan-cos.
    #[arg(long, default_value = "heaviside")]
    pub probe: ProbeFunction,
    /// Number of replicas.
    #[arg(long, default_value_t = 10_000)]
    pub n: u64,
    #[arg(long)]
    pub seed: u64,
    /// Histogram CSV path; the JSON sidecar goes next to it.
    #[arg(long, short)]
    pub output: Option<PathBuf>,
    #[arg(long)]
    pub config: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct VerifyArgs {
    /// all, collapse, lemma33, hitting, lemma41, origin or offset.
    #[arg(long, default_value = "all")]
    pub suite: Suite,
    /// Extra transform point; needs --beta as well.
    #[arg(long)]
    pub s: Option<f64>,
    #[arg(long)]
    pub beta: Option<f64>,
    #[command(flatten)]
    pub process: ProcessArgs,
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    pub x: f64,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Debug, Clone, Args)]
pub struct SolveTeArgs {
    #[arg(long, default_value_t = 1.0)]
    pub lambda: f64,
    #[arg(long, default_value_t = 1.0)]
    pub c: f64,
    #[arg(long, value_enum, default_value_t = InitialFunction::Cos)]
    pub g0: InitialFunction,
    #[arg(long, default_value_t = -5.0, allow_hyphen_values = true)]
    pub xmin: f64,
    #[arg(long, default_value_t = 5.0, allow_hyphen_values = true)]
    pub xmax: f64,
    #[arg(long, default_value_t = 41)]
    pub nx: usize,
    #[arg(long, default_value_t = 2.0)]
    pub tmax: f64,
    #[arg(long, default_value_t = 11)]
    pub nt: usize,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Debug, Clone, Args)]
pub struct CompareArgs {
    /// Histogram CSV written by `simulate`.
    #[arg(long)]
    pub input: PathBuf,
    /// Sidecar JSON (default: the input path with a .json extension).
    #[arg(long)]
    pub sidecar: Option<PathBuf>,
    /// Exact for the Heaviside probe, limit otherwise.
    #[arg(long, value_enum)]
    pub reference: Option<Reference>,
    #[arg(long, default_value_t = DEFAULT_GRID_SIZE)]
    pub grid: usize,
    #[command(flatten)]
    pub out: OutputArgs,
}

/// Failure of a command, mapped onto the exit status.
#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Numeric(String),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::Domain(_) => CliError::Usage(e.to_string()),
            _ => CliError::Numeric(e.to_string()),
        }
    }
}

impl From<io::Error> for CliError {
    fn from(e: io::Error) -> Self {
        CliError::Usage(format!("i/o error: {e}"))
    }
}

type CliResult<T> = std::result::Result<T, CliError>;

/// Parses `args` (program name first), runs the command and returns the
/// exit status.
pub fn run<I, S>(args: I) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<String>,
{
    let args: Vec<String> = args.into_iter().map(Into::into).collect();
    let args = match expand_config(args) {
        Ok(a) => a,
        Err(msg) => {
            eprintln!("error: {msg}");
            return EXIT_USAGE;
        }
    };
    let cfg = match RunConfig::try_parse_from(&args) {
        Ok(cfg) => cfg,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
        }
    };
    match dispatch(&cfg) {
        Ok(code) => code,
        Err(CliError::Usage(msg)) => {
            eprintln!("error: {msg}");
            EXIT_USAGE
        }
        Err(CliError::Numeric(msg)) => {
            eprintln!("numerical failure: {msg}");
            EXIT_NUMERIC
        }
    }
}

/// Splices `--key value` pairs from a `--config` file right after the
/// subcommand, so that later command-line flags override them.
fn expand_config(args: Vec<String>) -> std::result::Result<Vec<String>, String> {
    let mut path = None;
    for (i, a) in args.iter().enumerate() {
        if let Some(p) = a.strip_prefix("--config=") {
            path = Some(p.to_string());
        } else if a == "--config" {
            path = Some(args.get(i + 1).ok_or("--config needs a path")?.clone());
        }
    }
    let Some(path) = path else { return Ok(args) };
    let text = fs::read_to_string(&path).map_err(|e| format!("cannot read config {path}: {e}"))?;
    let mut extra = Vec::new();
    for (n, line) in text.lines().enumerate() {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (k, v) = line
            .split_once('=')
            .ok_or_else(|| format!("{path}:{}: expected key=value", n + 1))?;
        let k = k.trim().trim_start_matches("--");
        if k == "config" {
            return Err(format!("{path}:{}: nested config files are not supported", n + 1));
        }
        extra.push(format!("--{k}={}", v.trim()));
    }
    let at = 2.min(args.len());
    let mut out = args[..at].to_vec();
    out.extend(extra);
    out.extend_from_slice(&args[at..]);
    Ok(out)
}

pub fn dispatch(cfg: &RunConfig) -> CliResult<i32> {
    let spec = QuadSpec::default();
    match &cfg.command {
        Command::Law(a) => cmd_law(a, &spec),
        Command::Limit(a) => cmd_limit(a, &spec),
        Command::Hitting(a) => cmd_hitting(a, &spec),
        Command::Simulate(a) => cmd_simulate(a),
        Command::Verify(a) => cmd_verify(a, &spec),
        Command::SolveTe(a) => cmd_solve_te(a, &spec),
        Command::Compare(a) => cmd_compare(a),
    }
}

fn cmd_law(a: &LawArgs, spec: &QuadSpec) -> CliResult<i32> {
    let p = a.process.params()?;
    let law = if a.x == 0.0 {
        telegraph::origin_law(&p, a.grid)?
    } else {
        telegraph::offset_law(&p, a.x, a.grid, spec)?
    };
    eprintln!(
        "law: atoms {:?}, total mass {:.12}",
        law.atoms().iter().map(|at| (at.y, at.mass)).collect::<Vec<_>>(),
        law.total_mass()
    );
    write_law(&law, &a.out)?;
    Ok(EXIT_OK)
}

fn cmd_limit(a: &LimitArgs, spec: &QuadSpec) -> CliResult<i32> {
    let scaled = match a.a {
        Some(v) => v,
        None => {
            let p = &a.process;
            LimitLawSpec::scaled_offset(p.lambda, p.c, p.horizon, a.x)
        }
    };
    let law = limit_law(&LimitLawSpec::new(scaled, a.grid)?, spec)?;
    eprintln!("limit law: a = {scaled}, atom {:.12}", law.atom_mass());
    write_law(&law, &a.out)?;
    Ok(EXIT_OK)
}

fn write_law(law: &MixedLaw, out: &OutputArgs) -> CliResult<()> {
    match out.format {
        Format::Json => {
            let mut text = law.to_json()?;
            text.push('\n');
            emit(out.output.as_deref(), text.as_bytes())
        }
        Format::Csv => {
            let mut rows = Vec::new();
            for at in law.atoms() {
                rows.push(vec!["atom".to_string(), at.y.to_string(), at.mass.to_string()]);
            }
            for g in law.grid() {
                rows.push(vec!["density".to_string(), g.y.to_string(), g.pdf.to_string()]);
            }
            write_csv(out.output.as_deref(), &["kind", "y", "value"], rows)
        }
    }
}

fn cmd_hitting(a: &HittingArgs, spec: &QuadSpec) -> CliResult<i32> {
    let p = a.process.params()?;
    let hit = telegraph::hitting_law(&p, a.x)?;
    let umax = a.umax.unwrap_or(hit.t0 + 10.0 / p.lambda);
    if !(umax > hit.t0) || a.grid < 2 {
        return Err(CliError::Usage(format!(
            "need --umax > T0 = {} and --grid >= 2",
            hit.t0
        )));
    }
    let h = (umax - hit.t0) / (a.grid - 1) as f64;
    let mut rows = Vec::with_capacity(a.grid);
    let mut cdf = hit.atom_at_t0;
    let mut prev = hit.t0;
    for k in 0..a.grid {
        let u = hit.t0 + k as f64 * h;
        cdf += hit.density_mass(prev, u, spec)?;
        prev = u;
        rows.push([u, hit.density(u), cdf]);
    }
    eprintln!("hitting: T0 = {}, atom at T0 = {:.12}", hit.t0, hit.atom_at_t0);
    match a.out.format {
        Format::Csv => write_csv(
            a.out.output.as_deref(),
            &["u", "density", "cdf"],
            rows.iter().map(|r| r.iter().map(|v| v.to_string()).collect()).collect(),
        )?,
        Format::Json => {
            let doc = json!({
                "params": p.to_json(),
                "x": a.x,
                "t0": hit.t0,
                "atom_at_t0": hit.atom_at_t0,
                "u": rows.iter().map(|r| r[0]).collect::<Vec<_>>(),
                "density": rows.iter().map(|r| r[1]).collect::<Vec<_>>(),
                "cdf": rows.iter().map(|r| r[2]).collect::<Vec<_>>(),
            });
            emit_json(a.out.output.as_deref(), &doc)?;
        }
    }
    Ok(EXIT_OK)
}

fn cmd_simulate(a: &SimulateArgs) -> CliResult<i32> {
    let p = a.process.params()?;
    let summary = sim::run_experiment(&p, a.x, &a.probe, a.n, a.seed)?;
    let (first, last) = summary.edge_box_frequencies();
    eprintln!(
        "simulate: {} runs, first box {first:.4}, last box {last:.4}, outside [0,1] {:.4}",
        summary.n_runs,
        summary.outside_unit_fraction()
    );
    match &a.output {
        Some(path) => {
            summary.write_csv(BufWriter::new(File::create(path)?))?;
            let side = path.with_extension("json");
            emit_json(Some(&side), &summary.sidecar_json())?;
        }
        None => summary.write_csv(io::stdout().lock())?,
    }
    Ok(EXIT_OK)
}

fn cmd_verify(a: &VerifyArgs, spec: &QuadSpec) -> CliResult<i32> {
    let mut checks = laplace::verification_report(a.suite, spec)?;
    match (a.s, a.beta) {
        (Some(s), Some(beta)) => checks.extend(custom_checks(a, s, beta, spec)?),
        (None, None) => {}
        _ => return Err(CliError::Usage("--s and --beta go together".into())),
    }
    let failed = checks.iter().filter(|c| !c.pass).count();
    for c in &checks {
        eprintln!(
            "{} {:<24} err {:.2e} (tol {:.0e}) {}",
            if c.pass { "PASS" } else { "FAIL" },
            c.check,
            c.abs_err,
            c.tol,
            c.params
        );
    }
    eprintln!("{} checks, {failed} failed", checks.len());
    match a.out.format {
        Format::Json => emit_json(a.out.output.as_deref(), &serde_json::to_value(&checks).unwrap())?,
        Format::Csv => write_csv(
            a.out.output.as_deref(),
            &["check", "params", "lhs", "rhs", "abs_err", "tol", "pass"],
            checks
                .iter()
                .map(|c| {
                    vec![
                        c.check.clone(),
                        c.params.to_string(),
                        c.lhs.to_string(),
                        c.rhs.to_string(),
                        c.abs_err.to_string(),
                        c.tol.to_string(),
                        c.pass.to_string(),
                    ]
                })
                .collect(),
        )?,
    }
    Ok(if failed == 0 { EXIT_OK } else { EXIT_NUMERIC })
}

/// Closed form against numerical transform of the exact law at one user
/// supplied point, in horizon units.
fn custom_checks(a: &VerifyArgs, s: f64, beta: f64, spec: &QuadSpec) -> CliResult<Vec<Check>> {
    let p = a.process.params()?;
    let tp = TransformPoint::new(s, beta)?;
    let lt = p.lambda_t();
    let signs = match p.v0.sign() {
        Some(sign) => vec![sign],
        None => vec![telegraph::Sign::Plus, telegraph::Sign::Minus],
    };
    let mut out = Vec::new();
    for sign in signs {
        let mut params = json!({"s": s, "beta": beta, "lambda_t": lt, "sign": sign.velocity().as_str()});
        let (name, lhs, rhs) = if a.x == 0.0 {
            let lhs = laplace::origin_roundtrip_numeric(&tp, lt, sign, 256, spec)?;
            ("origin_roundtrip", lhs, laplace::w_origin(&tp, lt, sign)?)
        } else {
            let xi = a.x / (p.c * p.horizon);
            params["xi"] = json!(xi);
            let coarse = QuadSpec::new(1e-7, 1e-6, spec.max_subdivisions)?;
            let lhs = laplace::offset_roundtrip_numeric(xi, &tp, lt, sign, 128, &coarse)?;
            ("offset_roundtrip", lhs, laplace::w_offset(xi, &tp, lt, sign)?)
        };
        out.push(Check::new(name, params, lhs, rhs, 1e-4));
    }
    Ok(out)
}

fn cmd_solve_te(a: &SolveTeArgs, spec: &QuadSpec) -> CliResult<i32> {
    if a.nx < 1 || a.nt < 1 || !(a.tmax > 0.0) || !(a.xmax >= a.xmin) {
        return Err(CliError::Usage("need nx, nt >= 1, tmax > 0 and xmax >= xmin".into()));
    }
    let p = TelegraphParams::new(a.lambda, a.c, a.tmax, InitialVelocity::Symmetric)?;
    let step = |lo: f64, hi: f64, n: usize, k: usize| {
        if n == 1 {
            lo
        } else {
            lo + (hi - lo) * k as f64 / (n - 1) as f64
        }
    };
    let g0 = a.g0;
    let mut rows = Vec::with_capacity(a.nx * a.nt);
    for j in 0..a.nt {
        let t = step(0.0, a.tmax, a.nt, j);
        for i in 0..a.nx {
            let x = step(a.xmin, a.xmax, a.nx, i);
            let v = telegraph::telegraph_expectation(&p, |z| g0.eval(z), x, t, spec)?;
            rows.push([x, t, v]);
        }
    }
    match a.out.format {
        Format::Csv => write_csv(
            a.out.output.as_deref(),
            &["x", "t", "v"],
            rows.iter().map(|r| r.iter().map(|v| v.to_string()).collect()).collect(),
        )?,
        Format::Json => {
            let doc = json!({
                "lambda": a.lambda,
                "c": a.c,
                "g0": format!("{:?}", a.g0).to_lowercase(),
                "points": rows.iter().map(|r| json!({"x": r[0], "t": r[1], "v": r[2]})).collect::<Vec<_>>(),
            });
            emit_json(a.out.output.as_deref(), &doc)?;
        }
    }
    Ok(EXIT_OK)
}

fn cmd_compare(a: &CompareArgs) -> CliResult<i32> {
    let side = a.sidecar.clone().unwrap_or_else(|| a.input.with_extension("json"));
    let summary = EmpiricalSummary::read(File::open(&a.input)?, File::open(&side)?)?;
    let params = &summary.params;
    let get = |k: &str| -> CliResult<f64> {
        params
            .get(k)
            .and_then(Value::as_f64)
            .ok_or_else(|| CliError::Usage(format!("sidecar params lack numeric '{k}'")))
    };
    let v0: InitialVelocity = params
        .get("v0")
        .and_then(Value::as_str)
        .unwrap_or("plus")
        .parse()
        .map_err(CliError::Usage)?;
    let probe = params.get("probe").and_then(Value::as_str).unwrap_or("heaviside");
    let p = TelegraphParams::new(get("lambda")?, get("c")?, get("T")?, v0)?;
    let x = get("x")?;
    let reference = a.reference.unwrap_or(if probe == "heaviside" {
        Reference::Exact
    } else {
        Reference::Limit
    });
    let spec = QuadSpec::default();
    let law = match reference {
        Reference::Exact if x == 0.0 => telegraph::origin_law(&p, a.grid)?,
        Reference::Exact => telegraph::offset_law(&p, x, a.grid, &spec)?,
        Reference::Limit => {
            let scaled = LimitLawSpec::scaled_offset(p.lambda, p.c, p.horizon, x);
            limit_law(&LimitLawSpec::new(scaled, a.grid)?, &spec)?
        }
    };
    let n = summary.n_runs as f64;
    let m = summary.bins_per_unit as i64;
    let mut rows = Vec::with_capacity(summary.bin_counts.len());
    for k in 0..summary.bin_counts.len() {
        let i = summary.first_bin + k as i64;
        let (l, r) = summary.bin_edges(k);
        let (lc, rc) = (l.clamp(0.0, 1.0), r.clamp(0.0, 1.0));
        // bin-averaged density times N·Δ, then the expected count with atoms
        let scaled = n * (law.continuous_cdf(rc) - law.continuous_cdf(lc));
        let upper = if i == m - 1 { law.cdf(rc) } else { law.cdf_left(rc) };
        let expected = if (0..m).contains(&i) { n * (upper - law.cdf_left(lc)) } else { 0.0 };
        rows.push((l, r, summary.bin_count_with_atoms(i), scaled, expected));
    }
    eprintln!(
        "compare: {} reference, KS distance {:.4}",
        match reference {
            Reference::Exact => "exact",
            Reference::Limit => "limit",
        },
        sim::ks_statistic(&summary, &law)
    );
    match a.out.format {
        Format::Csv => write_csv(
            a.out.output.as_deref(),
            &["bin_left", "bin_right", "count", "scaled_density", "expected_count"],
            rows.iter()
                .map(|r| vec![r.0.to_string(), r.1.to_string(), r.2.to_string(), r.3.to_string(), r.4.to_string()])
                .collect(),
        )?,
        Format::Json => {
            let items: Vec<Value> = rows
                .iter()
                .map(|r| {
                    let mut o = Map::new();
                    o.insert("bin_left".into(), json!(r.0));
                    o.insert("bin_right".into(), json!(r.1));
                    o.insert("count".into(), json!(r.2));
                    o.insert("scaled_density".into(), json!(r.3));
                    o.insert("expected_count".into(), json!(r.4));
                    Value::Object(o)
                })
                .collect();
            emit_json(a.out.output.as_deref(), &json!({"params": params, "bins": items}))?;
        }
    }
    Ok(EXIT_OK)
}

fn emit(path: Option<&Path>, bytes: &[u8]) -> CliResult<()> {
    match path {
        Some(p) => fs::write(p, bytes)?,
        None => io::stdout().lock().write_all(bytes)?,
    }
    Ok(())
}

fn emit_json(path: Option<&Path>, doc: &Value) -> CliResult<()> {
    let mut text = serde_json::to_string_pretty(doc).expect("json values always serialize");
    text.push('\n');
    emit(path, text.as_bytes())
}

fn write_csv(path: Option<&Path>, header: &[&str], rows: Vec<Vec<String>>) -> CliResult<()> {
    let sink: Box<dyn Write> = match path {
        Some(p) => Box::new(BufWriter::new(File::create(p)?)),
        None => Box::new(io::stdout().lock()),
    };
    let mut w = csv::Writer::from_writer(sink);
    let io_err = |e: csv::Error| CliError::Usage(format!("csv write failed: {e}"));
    w.write_record(header).map_err(io_err)?;
    for r in rows {
        w.write_record(&r).map_err(io_err)?;
    }
    w.flush()?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn config_is_spliced_before_flags() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("run.cfg");
        fs::write(&path, "# figure 1a\nlambda = 2\nT=1000\nseed=7\n").unwrap();
        let args: Vec<String> = ["prog", "simulate", "--config", path.to_str().unwrap(), "--T", "5"]
            .iter()
            .map(|s| s.to_string())
            .collect();
        let expanded = expand_config(args).unwrap();
        let cfg = RunConfig::try_parse_from(&expanded).unwrap();
        match cfg.command {
            Command::Simulate(s) => {
                assert_eq!(s.process.lambda, 2.0);
                assert_eq!(s.process.horizon, 5.0);
                assert_eq!(s.seed, 7);
            }
            other => panic!("parsed {other:?}"),
        }
    }

    #[test]
    fn seed_is_mandatory_for_simulate() {
        assert!(RunConfig::try_parse_from(["prog", "simulate", "--n", "10"]).is_err());
        assert_eq!(run(["prog", "simulate", "--n", "10"]), EXIT_USAGE);
    }

    #[test]
    fn domain_errors_are_usage_errors() {
        assert_eq!(run(["prog", "law", "--lambda", "-1"]), EXIT_USAGE);
        assert_eq!(run(["prog", "hitting", "--x", "1"]), EXIT_USAGE);
    }

    #[test]
    fn negative_values_parse() {
        let cfg = RunConfig::try_parse_from(["prog", "law", "--x", "-1", "--v0", "minus"]).unwrap();
        match cfg.command {
            Command::Law(l) => {
                assert_eq!(l.x, -1.0);
                assert_eq!(l.process.v0, InitialVelocity::Minus);
            }
            other => panic!("parsed {other:?}"),
        }
    }
}

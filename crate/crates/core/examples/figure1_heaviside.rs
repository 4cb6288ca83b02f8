//! Histogram of the occupation fraction of (0, ∞) over N = 10,000 paths,
//! λ = c = 1, T = 1000, plus start, against the exact law.
//!
//! Pass a directory as the first argument to also write the histogram
//! CSV, its JSON sidecar and an overlay table (exact density × NΔ).

use std::fs::File;
use std::io::Write;
use std::path::PathBuf;
use std::time::Instant;

use telegraph_occupation::limit::arcsine_cdf;
use telegraph_occupation::sim::{ks_statistic, run_experiment, ProbeFunction};
use telegraph_occupation::telegraph::{box_probability, origin_law, InitialVelocity, TelegraphParams};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let n = 10_000;
    let p = TelegraphParams::new(1.0, 1.0, 1000.0, InitialVelocity::Plus)?;
    let start = Instant::now();
    let summary = run_experiment(&p, 0.0, &ProbeFunction::heaviside(), n, 42)?;
    let law = origin_law(&p, 512)?;
    let (first, last) = summary.edge_box_frequencies();
    let (e_first, e_last) = (box_probability(&law, 0.0, 0.01)?, box_probability(&law, 0.99, 1.0)?);
    let sd = |q: f64| (q * (1.0 - q) / n as f64).sqrt();
    println!("simulated in {:.2?}", start.elapsed());
    println!("box [0, 0.01]: {first:.4} vs exact {e_first:.4} ({:+.2} sd)", (first - e_first) / sd(e_first));
    println!("box [0.99, 1]: {last:.4} vs exact {e_last:.4} ({:+.2} sd)", (last - e_last) / sd(e_last));
    println!("arcsine box: {:.4}", arcsine_cdf(0.01)?);
    println!("KS distance to exact law: {:.4}", ks_statistic(&summary, &law));

    if let Some(dir) = std::env::args().nth(1).map(PathBuf::from) {
        std::fs::create_dir_all(&dir)?;
        summary.write_csv(File::create(dir.join("figure1a.csv"))?)?;
        serde_json::to_writer_pretty(File::create(dir.join("figure1a.json"))?, &summary.sidecar_json())?;
        let mut out = File::create(dir.join("figure1a_overlay.csv"))?;
        writeln!(out, "bin_left,bin_right,count,exact_scaled")?;
        for k in 0..summary.bin_counts.len() {
            let (l, r) = summary.bin_edges(k);
            let i = summary.first_bin + k as i64;
            let scaled = n as f64 * (law.continuous_cdf(r.min(1.0)) - law.continuous_cdf(l.max(0.0)));
            writeln!(out, "{l},{r},{},{scaled}", summary.bin_count_with_atoms(i))?;
        }
        println!("wrote {}", dir.display());
    }
    Ok(())
}

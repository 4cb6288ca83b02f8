//! Runs the Laplace-domain verification suite and prints one line per check.
//!
//! Optional argument: the suite name (all, collapse, lemma33, hitting,
//! lemma41, origin, offset).

use std::time::Instant;

use telegraph_occupation::laplace::{verification_report, Suite};
use telegraph_occupation::special::QuadSpec;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let suite: Suite = std::env::args().nth(1).as_deref().unwrap_or("all").parse()?;
    let start = Instant::now();
    let report = verification_report(suite, &QuadSpec::default())?;
    for c in &report {
        println!(
            "{} {:<20} lhs {:>14.10} rhs {:>14.10} err {:.1e} {}",
            if c.pass { "ok  " } else { "FAIL" },
            c.check,
            c.lhs,
            c.rhs,
            c.abs_err,
            c.params
        );
    }
    let failed = report.iter().filter(|c| !c.pass).count();
    println!("{} checks, {failed} failed, {:.2?}", report.len(), start.elapsed());
    if failed > 0 {
        std::process::exit(1);
    }
    Ok(())
}

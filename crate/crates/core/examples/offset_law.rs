//! Occupation fraction for a path started away from the origin.
//!
//! For x < 0 the path must first reach 0, so there is an atom at 0; with a
//! plus start there is also an atom at 1 - |x|/(cT) from the straight run.
//! Starting at -x instead of x mirrors the law: η(x) and 1 - η(-x) agree
//! once the initial direction is flipped.

use telegraph_occupation::special::QuadSpec;
use telegraph_occupation::telegraph::{offset_law, InitialVelocity, TelegraphParams};

fn main() -> telegraph_occupation::Result<()> {
    let spec = QuadSpec::default();
    for v0 in [InitialVelocity::Plus, InitialVelocity::Minus, InitialVelocity::Symmetric] {
        let p = TelegraphParams::new(1.0, 1.0, 5.0, v0)?;
        for x in [-1.0, 1.0] {
            let law = offset_law(&p, x, 256, &spec)?;
            let atoms: Vec<String> = law.atoms().iter().map(|a| format!("{:.6}@{}", a.mass, a.y)).collect();
            println!(
                "v0={:<9} x={x:+} atoms [{}] mean {:.6} mass {:.10}",
                v0.as_str(),
                atoms.join(", "),
                law.expectation(|y| y),
                law.total_mass()
            );
        }
    }

    let plus = TelegraphParams::new(1.0, 1.0, 5.0, InitialVelocity::Plus)?;
    let left = offset_law(&plus, -1.0, 256, &spec)?;
    let right = offset_law(&plus.with_v0(InitialVelocity::Minus), 1.0, 256, &spec)?.reflect();
    println!("sup |F_plus(-1) - F_reflected_minus(+1)| = {:.2e}", left.sup_distance(&right));
    Ok(())
}

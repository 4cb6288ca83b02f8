use telegraph_occupation::sim::{ks_statistic, run_experiment, ProbeFunction};
use telegraph_occupation::special::QuadSpec;
use telegraph_occupation::telegraph::{offset_law, InitialVelocity, TelegraphParams};

fn params(v0: InitialVelocity) -> TelegraphParams {
    TelegraphParams::new(1.0, 1.0, 5.0, v0).unwrap()
}

/// η⁺(x) has the law of 1 - η⁻(-x).
#[test]
fn reflection_identity_on_quantiles() {
    let spec = QuadSpec::default();
    for x in [-1.0, 1.0] {
        let plus = offset_law(&params(InitialVelocity::Plus), x, 256, &spec).unwrap();
        let minus = offset_law(&params(InitialVelocity::Minus), -x, 256, &spec).unwrap().reflect();
        for k in 0..50 {
            let p = (k as f64 + 0.5) / 50.0;
            let (a, b) = (plus.quantile(p), minus.quantile(p));
            assert!((a - b).abs() < 1e-5, "x={x} p={p}: {a} vs {b}");
            assert!((plus.cdf(a) - minus.cdf(a)).abs() < 1e-5, "x={x} y={a}");
        }
    }
}

/// The x > 0 laws are built by reflection, so check them against sampling too.
#[test]
fn positive_start_matches_simulation() {
    let spec = QuadSpec::default();
    for v0 in [InitialVelocity::Plus, InitialVelocity::Minus, InitialVelocity::Symmetric] {
        let p = params(v0);
        let law = offset_law(&p, 1.0, 256, &spec).unwrap();
        let emp = run_experiment(&p, 1.0, &ProbeFunction::heaviside(), 40_000, 3).unwrap();
        // 99.9% Kolmogorov band at N = 40,000 is about 0.0098
        let ks = ks_statistic(&emp, &law);
        assert!(ks < 0.0098, "{v0:?}: KS {ks}");
    }
}

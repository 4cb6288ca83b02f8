use telegraph_occupation::limit::arcsine_cdf;
use telegraph_occupation::telegraph::{origin_law, InitialVelocity, TelegraphParams};

#[test]
fn origin_law_approaches_arcsine_monotonically() {
    let mut last = f64::INFINITY;
    for horizon in [10.0, 100.0, 1000.0, 10000.0] {
        let p = TelegraphParams::new(1.0, 1.0, horizon, InitialVelocity::Plus).unwrap();
        let ks = origin_law(&p, 512).unwrap().sup_distance_to(|y| arcsine_cdf(y).unwrap());
        assert!(ks < last, "T={horizon}: {ks} >= {last}");
        last = ks;
    }
    assert!(last < 0.01);
}

#[test]
fn symmetric_start_also_converges() {
    let mut last = f64::INFINITY;
    for horizon in [10.0, 100.0, 1000.0] {
        let p = TelegraphParams::new(2.0, 0.5, horizon, InitialVelocity::Symmetric).unwrap();
        let ks = origin_law(&p, 512).unwrap().sup_distance_to(|y| arcsine_cdf(y).unwrap());
        assert!(ks < last);
        last = ks;
    }
}

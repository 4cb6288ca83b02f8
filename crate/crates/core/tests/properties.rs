use proptest::prelude::*;

use telegraph_occupation::laplace::{kappa, w_offset, w_origin, TransformPoint};
use telegraph_occupation::sim::{
    occupation, replica_rng, sample_path, EmpiricalSummary, ProbeFunction, DEFAULT_BINS_PER_UNIT,
};
use telegraph_occupation::special::{bessel_i0_scaled, bessel_i1_scaled};
use telegraph_occupation::telegraph::{origin_law, phi, psi, InitialVelocity, Sign, TelegraphParams};

fn any_start() -> impl Strategy<Value = InitialVelocity> {
    prop_oneof![
        Just(InitialVelocity::Plus),
        Just(InitialVelocity::Minus),
        Just(InitialVelocity::Symmetric)
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn phi_depends_on_product_only(lt in 0.01f64..500.0, t in 0.0f64..1.0, alpha in 0.1f64..10.0) {
        let a = phi(alpha * lt, t).unwrap();
        let b = phi(lt, alpha * t).unwrap();
        prop_assert!((a - b).abs() <= 1e-14 * a.max(1e-300) + 1e-300);
        prop_assert!(a > 0.0 && a <= 0.5);
    }

    #[test]
    fn psi_is_symmetric(lt in 0.01f64..5000.0, y in 0.0f64..1.0) {
        let (a, b) = (psi(lt, y).unwrap(), psi(lt, 1.0 - y).unwrap());
        prop_assert!((a - b).abs() <= 1e-14 * a);
    }

    #[test]
    fn bessel_ratio_below_one(z in 0.0f64..1e4) {
        let (i0, i1) = (bessel_i0_scaled(z).unwrap(), bessel_i1_scaled(z).unwrap());
        prop_assert!(i1 <= i0 && i1 >= 0.0 && i0 <= 1.0);
    }

    #[test]
    fn origin_law_is_normalised(lt in 0.05f64..2e4, v0 in any_start()) {
        let p = TelegraphParams::new(1.0, 1.0, lt, v0).unwrap();
        let law = origin_law(&p, 256).unwrap();
        prop_assert!((law.total_mass() - 1.0).abs() < 1e-6);
        // reflecting twice gives the same distribution function back
        let twice = law.reflect().reflect();
        for k in 0..=20 {
            let y = k as f64 / 20.0;
            prop_assert!((law.cdf(y) - twice.cdf(y)).abs() < 1e-12);
        }
    }

    #[test]
    fn quantile_inverts_cdf(lt in 0.5f64..1000.0, p in 0.0f64..1.0) {
        let tp = TelegraphParams::new(1.0, 1.0, lt, InitialVelocity::Symmetric).unwrap();
        let law = origin_law(&tp, 256).unwrap();
        let y = law.quantile(p);
        prop_assert!(law.cdf(y) >= p - 1e-9);
        prop_assert!(law.cdf_left(y) <= p + 1e-9);
    }

    #[test]
    fn transforms_collapse_at_zero_tilt(s in 0.01f64..50.0, lt in 0.01f64..1e3, xi in -3.0f64..3.0) {
        let tp = TransformPoint::new(s, 0.0).unwrap();
        for sign in [Sign::Plus, Sign::Minus] {
            prop_assert!((w_origin(&tp, lt, sign).unwrap() * s - 1.0).abs() < 1e-12);
            if xi != 0.0 {
                prop_assert!((w_offset(xi, &tp, lt, sign).unwrap() * s - 1.0).abs() < 1e-12);
            }
        }
        prop_assert!(kappa(s, lt).unwrap() > s);
    }

    #[test]
    fn occupation_stays_in_range(seed in any::<u64>(), x in -5.0f64..5.0, lambda in 0.1f64..10.0, v0 in any_start()) {
        let p = TelegraphParams::new(lambda, 1.0, 20.0, v0).unwrap();
        let path = sample_path(&p, &mut replica_rng(seed, 0));
        let total: f64 = path.segments().map(|(a, b, _)| b - a).sum();
        prop_assert!((total - p.horizon).abs() < 1e-9);
        for probe in [ProbeFunction::heaviside(), ProbeFunction::atan_half()] {
            let eta = occupation(&path, &p, x, &probe);
            prop_assert!((0.0..=1.0).contains(&eta), "{} {eta}", probe.name());
        }
        let wiggly = occupation(&path, &p, x, &ProbeFunction::atan_cos_half());
        prop_assert!(wiggly > -1.0 && wiggly < 2.0);
    }

    #[test]
    fn summary_round_trips(values in prop::collection::vec(-0.3f64..1.3, 1..300), seed in any::<u64>()) {
        let mut values = values;
        values.push(0.0);
        values.push(1.0);
        let s = EmpiricalSummary::from_values(&values, DEFAULT_BINS_PER_UNIT, seed, serde_json::json!({"T": 1.0})).unwrap();
        let mut csv = Vec::new();
        s.write_csv(&mut csv).unwrap();
        let side = serde_json::to_vec(&s.sidecar_json()).unwrap();
        let back = EmpiricalSummary::read(&csv[..], &side[..]).unwrap();
        prop_assert_eq!(back, s);
    }
}

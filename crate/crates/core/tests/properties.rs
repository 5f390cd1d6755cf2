use nonclassical::*;
use proptest::prelude::*;

fn state() -> impl Strategy<Value = QubitStateF64> {
    (0.0..=1.0f64, 0.0..=1.0f64, 0.0..std::f64::consts::TAU).prop_map(|(p, r, phi)| {
        QubitStateF64::new(p, Complex::from_polar(r * (p * (1.0 - p)).sqrt(), phi)).unwrap()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(2000))]

    #[test]
    fn measures_in_unit_interval(s in state()) {
        let r = measure_report(&s).unwrap();
        for v in [r.tau, r.distance, r.concurrence_potential, r.negativity_potential] {
            prop_assert!((0.0..=1.0).contains(&v), "{v}");
        }
    }

    #[test]
    fn ordering(s in state()) {
        let r = measure_report(&s).unwrap();
        prop_assert!(r.negativity_potential <= r.concurrence_potential + 1e-9);
        prop_assert!(r.distance <= r.tau + 1e-9);
    }

    #[test]
    fn distance_is_population(s in state()) {
        prop_assert!((nonclassical_distance(&s).value - s.p()).abs() <= 1e-12);
    }

    #[test]
    fn phase_blind(s in state(), phi in 0.0..std::f64::consts::TAU) {
        let t = QubitStateF64::new(s.p(), s.x() * Complex::from_polar(1.0, phi)).unwrap();
        let (a, b) = (measure_report(&s).unwrap(), measure_report(&t).unwrap());
        prop_assert!((a.tau - b.tau).abs() <= 1e-12);
        prop_assert!((a.negativity_potential - b.negativity_potential).abs() <= 1e-12);
    }

    #[test]
    fn negativity_routes_agree(s in state()) {
        let closed = negativity_potential_closed(&s);
        for m in NegativityMethod::ALL {
            prop_assert!((negativity_potential(&s, m).unwrap() - closed).abs() <= 1e-8, "{m:?}");
        }
    }

    #[test]
    fn depth_grows_with_coherence(p in 0.01..0.99f64, r in 0.0..0.98f64) {
        let bound = (p * (1.0 - p)).sqrt();
        let lo = QubitStateF64::real(p, r * bound).unwrap();
        let hi = QubitStateF64::real(p, (r + 0.02) * bound).unwrap();
        prop_assert!(depth_analytic(&hi).tau >= depth_analytic(&lo).tau - 1e-12);
    }
}

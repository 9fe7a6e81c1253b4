use catport::{CatState, Protocol, ProtocolKind, ProtocolSpec};
use proptest::prelude::*;

fn spec_strategy() -> impl Strategy<Value = ProtocolSpec> {
    (2usize..=3, 2usize..=3, 0usize..4).prop_flat_map(|(d, m, which)| {
        (2..=m + 1).prop_map(move |k| match which {
            0 => ProtocolSpec::bell(d, m).unwrap(),
            1 => ProtocolSpec::ghz(d, m).unwrap(),
            2 => ProtocolSpec::barred(d, m).unwrap(),
            _ => ProtocolSpec::hybrid(d, m, k).unwrap(),
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn every_possible_outcome_teleports_exactly(spec in spec_strategy(), seed in any::<u64>()) {
        let cat = CatState::random(spec.dim, spec.particles, seed).unwrap();
        let records = Protocol::new(spec).unwrap().enumerate(&cat).unwrap();
        let total: f64 = records.iter().map(|r| r.probability).sum();
        prop_assert!((total - 1.0).abs() < 1e-10);
        let expected = (spec.dim as f64).powi(spec.outcome_dits() as i32).recip();
        for r in records.iter().filter(|r| r.is_possible()) {
            prop_assert!((r.probability - expected).abs() < 1e-10);
            prop_assert!(r.fidelity.unwrap() >= 1.0 - 1e-10);
        }
    }

    #[test]
    fn global_phase_leaves_outcomes_unchanged(
        spec in spec_strategy(),
        seed in any::<u64>(),
        theta in 0.0..std::f64::consts::TAU,
    ) {
        let cat = CatState::random(spec.dim, spec.particles, seed).unwrap();
        let protocol = Protocol::new(spec).unwrap();
        let a = protocol.enumerate(&cat).unwrap();
        let b = protocol.enumerate(&cat.with_global_phase(theta)).unwrap();
        for (x, y) in a.iter().zip(&b) {
            prop_assert_eq!(&x.label, &y.label);
            prop_assert!((x.probability - y.probability).abs() < 1e-12);
            prop_assert_eq!(x.correction, y.correction);
        }
    }

    #[test]
    fn hybrid_endpoints_match_bell_and_barred_distributions(
        d in 2usize..=3,
        m in 2usize..=3,
        seed in any::<u64>(),
    ) {
        let cat = CatState::random(d, m, seed).unwrap();
        let probs = |spec: ProtocolSpec| -> Vec<f64> {
            Protocol::new(spec).unwrap().enumerate(&cat).unwrap().iter().map(|r| r.probability).collect()
        };
        let pairs = [
            (ProtocolSpec::new(ProtocolKind::Barred, d, m, None).unwrap(), ProtocolSpec::hybrid(d, m, 2).unwrap()),
            (ProtocolSpec::bell(d, m).unwrap(), ProtocolSpec::hybrid(d, m, m + 1).unwrap()),
        ];
        for (reference, hybrid) in pairs {
            let (p, q) = (probs(reference), probs(hybrid));
            prop_assert_eq!(p.len(), q.len());
            for (x, y) in p.iter().zip(&q) {
                prop_assert!((x - y).abs() < 1e-12);
            }
        }
    }
}

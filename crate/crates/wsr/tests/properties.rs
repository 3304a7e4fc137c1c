//! Property-based invariants for the scoring rules.

use proptest::collection::vec;
use proptest::prelude::*;

use wsr::{
    crps_sample, crps_sample_naive, default_bandwidth, es_sample, mmds_sample, owcrps_sample,
    owes_sample, owmmds_sample, owvs_sample, twcrps_sample, twes_sample, twmmds_sample,
    twvs_sample, vs_sample, BoundsSpec, Chain, EnsembleForecast, KdeModel, MultiChain,
    MultiWeight, MultivariateEnsemble, ScoreStatus, VsParams, Weight,
};

fn member_value() -> impl Strategy<Value = f64> {
    -10.0..10.0f64
}

fn weight_value() -> impl Strategy<Value = f64> {
    0.0..5.0f64
}

fn uni_forecast() -> impl Strategy<Value = (EnsembleForecast, f64)> {
    (1usize..60)
        .prop_flat_map(|m| {
            (
                vec(member_value(), m),
                vec(weight_value(), m),
                member_value(),
                any::<bool>(),
            )
        })
        .prop_filter_map("weights must not sum to zero", |(members, weights, obs, uniform)| {
            let fc = if uniform || weights.iter().sum::<f64>() <= 0.0 {
                EnsembleForecast::new(members).ok()?
            } else {
                EnsembleForecast::with_weights(members, weights).ok()?
            };
            Some((fc, obs))
        })
}

fn multi_forecast() -> impl Strategy<Value = (MultivariateEnsemble, Vec<f64>)> {
    (1usize..5, 1usize..25)
        .prop_flat_map(|(d, m)| {
            (
                vec(vec(member_value(), d), m),
                vec(member_value(), d),
            )
        })
        .prop_map(|(members, obs)| {
            (MultivariateEnsemble::from_members(members).unwrap(), obs)
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn crps_fast_equals_naive((fc, obs) in uni_forecast()) {
        let fast = crps_sample(obs, &fc).unwrap().value;
        let naive = crps_sample_naive(obs, &fc).unwrap().value;
        prop_assert!((fast - naive).abs() < 1e-10, "fast={fast} naive={naive}");
    }

    #[test]
    fn crps_nonnegative_and_shift_invariant((fc, obs) in uni_forecast(), c in -20.0..20.0f64) {
        let base = crps_sample(obs, &fc).unwrap().value;
        prop_assert!(base >= 0.0);

        let shifted = EnsembleForecast::with_weights(
            fc.members().iter().map(|x| x + c).collect(),
            fc.member_weights().to_vec(),
        ).unwrap();
        let moved = crps_sample(obs + c, &shifted).unwrap().value;
        prop_assert!((base - moved).abs() < 1e-10, "base={base} moved={moved}");
    }

    #[test]
    fn crps_positive_homogeneity((fc, obs) in uni_forecast(), c in 0.1..10.0f64) {
        let base = crps_sample(obs, &fc).unwrap().value;
        let scaled_fc = EnsembleForecast::with_weights(
            fc.members().iter().map(|x| c * x).collect(),
            fc.member_weights().to_vec(),
        ).unwrap();
        let scaled = crps_sample(c * obs, &scaled_fc).unwrap().value;
        prop_assert!((scaled - c * base).abs() < 1e-9 * c.max(1.0),
            "c={c} base={base} scaled={scaled}");
    }

    #[test]
    fn twcrps_identity_reduction((fc, obs) in uni_forecast()) {
        let tw = twcrps_sample(obs, &fc, &Chain::identity()).unwrap().value;
        let plain = crps_sample(obs, &fc).unwrap().value;
        prop_assert_eq!(tw.to_bits(), plain.to_bits());
    }

    #[test]
    fn owcrps_unit_reduction((fc, obs) in uni_forecast()) {
        let ow = owcrps_sample(obs, &fc, &Weight::unit()).unwrap().value;
        let plain = crps_sample(obs, &fc).unwrap().value;
        prop_assert!((ow - plain).abs() < 1e-12);
    }

    #[test]
    fn twcrps_clamp_bounds_scores_nonnegative((fc, obs) in uni_forecast(), a in -5.0..5.0f64) {
        let chain = Chain::interval(a, f64::INFINITY).unwrap();
        let score = twcrps_sample(obs, &fc, &chain).unwrap();
        prop_assert!(score.value >= 0.0);
        prop_assert_eq!(score.status, ScoreStatus::Defined);
    }

    #[test]
    fn twcrps_monotone_in_threshold((fc, obs) in uni_forecast()) {
        let mut last = f64::INFINITY;
        for k in 0..12 {
            let a = -6.0 + k as f64;
            let chain = Chain::interval(a, f64::INFINITY).unwrap();
            let value = twcrps_sample(obs, &fc, &chain).unwrap().value;
            prop_assert!(value <= last + 1e-12);
            last = value;
        }
    }

    #[test]
    fn owcrps_status_contract((fc, obs) in uni_forecast(), a in -5.0..5.0f64) {
        let weight = Weight::interval(a, f64::INFINITY).unwrap();
        let score = owcrps_sample(obs, &fc, &weight).unwrap();
        let w_obs = obs > a;
        let mass = fc.members().iter().zip(fc.member_weights())
            .filter(|(&x, _)| x > a)
            .map(|(_, &w)| w)
            .sum::<f64>();
        if !w_obs {
            prop_assert_eq!(score.value, 0.0);
            prop_assert_eq!(score.status, ScoreStatus::Defined);
        } else if mass == 0.0 {
            prop_assert_eq!(score.status, ScoreStatus::UndefinedWeightMass);
        } else {
            prop_assert_eq!(score.status, ScoreStatus::Defined);
            prop_assert!(score.value >= 0.0);
        }
    }

    #[test]
    fn es_d1_equals_crps((fc, obs) in uni_forecast()) {
        let columns: Vec<Vec<f64>> = fc.members().iter().map(|&x| vec![x]).collect();
        let multi = MultivariateEnsemble::from_members_weighted(
            columns, fc.member_weights().to_vec()).unwrap();
        let es = es_sample(&[obs], &multi).unwrap().value;
        let crps = crps_sample(obs, &fc).unwrap().value;
        prop_assert!((es - crps).abs() < 1e-12, "es={es} crps={crps}");
    }

    #[test]
    fn multivariate_reductions((fc, obs) in multi_forecast()) {
        let d = fc.dim();
        let identity = MultiChain::identity();
        let unit = MultiWeight::interval(BoundsSpec::unbounded(d));
        let params = VsParams::default();

        let es = es_sample(&obs, &fc).unwrap().value;
        prop_assert_eq!(twes_sample(&obs, &fc, &identity).unwrap().value.to_bits(), es.to_bits());
        let owes = owes_sample(&obs, &fc, &unit).unwrap().value;
        prop_assert!((owes - es).abs() < 1e-12);

        let vs = vs_sample(&obs, &fc, &params).unwrap().value;
        prop_assert_eq!(twvs_sample(&obs, &fc, &identity, &params).unwrap().value.to_bits(), vs.to_bits());
        let owvs = owvs_sample(&obs, &fc, &unit, &params).unwrap().value;
        prop_assert!((owvs - vs).abs() < 1e-10 * vs.abs().max(1.0));

        let mmds = mmds_sample(&obs, &fc).unwrap().value;
        prop_assert_eq!(twmmds_sample(&obs, &fc, &identity).unwrap().value.to_bits(), mmds.to_bits());
        let owmmds = owmmds_sample(&obs, &fc, &unit).unwrap().value;
        prop_assert!((owmmds - mmds).abs() < 1e-12);
    }

    #[test]
    fn tw_is_transform_then_score((fc, obs) in multi_forecast(), a in -3.0..0.0f64, b in 0.0..3.0f64) {
        prop_assume!(a < b);
        let d = fc.dim();
        let bounds = BoundsSpec::broadcast(a, b, d).unwrap();
        let chain = MultiChain::interval(bounds);

        let clamped: Vec<Vec<f64>> = fc.members()
            .map(|x| x.iter().map(|&v| v.max(a).min(b)).collect())
            .collect();
        let clamped_obs: Vec<f64> = obs.iter().map(|&v| v.max(a).min(b)).collect();
        // uniform weights, matching the strategy, so the rebuilt ensemble
        // carries bit-identical weights
        let transformed = MultivariateEnsemble::from_members(clamped).unwrap();

        let tw = twes_sample(&obs, &fc, &chain).unwrap().value;
        let direct = es_sample(&clamped_obs, &transformed).unwrap().value;
        prop_assert_eq!(tw.to_bits(), direct.to_bits());

        let tw = twmmds_sample(&obs, &fc, &chain).unwrap().value;
        let direct = mmds_sample(&clamped_obs, &transformed).unwrap().value;
        prop_assert_eq!(tw.to_bits(), direct.to_bits());
    }

    #[test]
    fn mmds_stays_in_bounds((fc, obs) in multi_forecast()) {
        let mmds = mmds_sample(&obs, &fc).unwrap().value;
        prop_assert!((-1.0..=0.5).contains(&mmds), "mmds={mmds}");
    }

    #[test]
    fn es_and_vs_nonnegative((fc, obs) in multi_forecast()) {
        prop_assert!(es_sample(&obs, &fc).unwrap().value >= 0.0);
        prop_assert!(vs_sample(&obs, &fc, &VsParams::default()).unwrap().value >= 0.0);
    }

    #[test]
    fn kde_density_nonnegative_and_bandwidth_scales(
        members in vec(member_value(), 5..40), z in -12.0..12.0f64, c in 0.5..4.0f64)
    {
        let fc = EnsembleForecast::new(members.clone()).unwrap();
        if let Ok(kde) = KdeModel::from_forecast(&fc, None) {
            prop_assert!(kde.density(z) >= 0.0);
            prop_assert!(kde.cdf(z) >= 0.0 && kde.cdf(z) <= 1.0);

            let scaled: Vec<f64> = members.iter().map(|x| c * x).collect();
            let bw = default_bandwidth(&members).unwrap();
            let bw_scaled = default_bandwidth(&scaled).unwrap();
            prop_assert!((bw_scaled - c * bw).abs() < 1e-10 * bw_scaled.max(1.0));
        }
    }

    #[test]
    fn member_weights_omitted_equals_uniform((fc, obs) in uni_forecast()) {
        let m = fc.len();
        let uniform = EnsembleForecast::with_weights(
            fc.members().to_vec(), vec![1.0; m]).unwrap();
        let plain = EnsembleForecast::new(fc.members().to_vec()).unwrap();
        let a = crps_sample(obs, &uniform).unwrap().value;
        let b = crps_sample(obs, &plain).unwrap().value;
        prop_assert!((a - b).abs() < 1e-12);
    }
}

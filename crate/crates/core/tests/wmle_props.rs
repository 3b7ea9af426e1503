mod common;

use centrality::expfam::FamilyModel;
use centrality::means::{holder_mean, lehmer_mean, Exponent, ValueSeries};
use centrality::wmle::{
    apply_kernel, lse_critical, lse_objective, mle_closed_form, mle_numeric, numeric_curvature,
    weighted_loglik, MeanScale, WeightKernel, DEFAULT_BRACKET, DEFAULT_TOL,
};
use proptest::prelude::*;

use common::{all_models, rel_err};

fn model() -> impl Strategy<Value = FamilyModel> {
    (0..8usize).prop_map(|i| all_models()[i])
}

fn kernel() -> impl Strategy<Value = WeightKernel> {
    prop_oneof![
        Just(WeightKernel::Unit),
        (-1.5f64..2.0).prop_map(WeightKernel::Power),
        Just(WeightKernel::LogShift),
    ]
}

fn data() -> impl Strategy<Value = ValueSeries> {
    prop::collection::vec(0.1f64..10.0, 3..40).prop_map(|v| ValueSeries::new(v).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn closed_form_matches_numeric_maximizer(m in model(), k in kernel(), xs in data()) {
        let (series, _) = apply_kernel(&xs, k, None).unwrap();
        let closed = mle_closed_form(&m, &series).unwrap();
        let numeric = mle_numeric(&m, &series, DEFAULT_BRACKET, DEFAULT_TOL).unwrap();
        prop_assert!(rel_err(closed.theta_hat, numeric.theta_hat) < 1e-6,
            "{} {}: {} vs {}", m, k, closed.theta_hat, numeric.theta_hat);
        prop_assert!(closed.curvature < 0.0);
        let fd = numeric_curvature(&m, &series, closed.theta_hat).unwrap();
        prop_assert!(rel_err(closed.curvature, fd) < 1e-4);
    }

    #[test]
    fn estimate_is_a_local_maximum(m in model(), k in kernel(), xs in data()) {
        let (series, _) = apply_kernel(&xs, k, None).unwrap();
        let fit = mle_closed_form(&m, &series).unwrap();
        let at = |t: f64| weighted_loglik(&m, t, &series).unwrap();
        prop_assert!(at(fit.theta_hat) >= at(fit.theta_hat * 1.01));
        prop_assert!(at(fit.theta_hat) >= at(fit.theta_hat * 0.99));
        prop_assert!(rel_err(at(fit.theta_hat), fit.loglik) < 1e-12);
    }

    #[test]
    fn scaling_all_weights_leaves_the_estimate(m in model(), k in kernel(), xs in data(), c in 0.01f64..100.0) {
        let (series, _) = apply_kernel(&xs, k, None).unwrap();
        let a = mle_closed_form(&m, &series).unwrap();
        let b = mle_closed_form(&m, &series.scaled(c).unwrap()).unwrap();
        prop_assert!(rel_err(a.theta_hat, b.theta_hat) < 1e-12);
        prop_assert!(rel_err(c * a.curvature, b.curvature) < 1e-10);
    }

    #[test]
    fn least_squares_in_r_recovers_the_mle(m in model(), k in kernel(), xs in data()) {
        let (series, _) = apply_kernel(&xs, k, None).unwrap();
        let mle = mle_closed_form(&m, &series).unwrap().theta_hat;
        prop_assert_eq!(lse_critical(&m, &series, &m).unwrap(), mle);
        let best = lse_objective(&m, &series, mle, &m).unwrap();
        for t in [mle * 0.98, mle * 1.02] {
            prop_assert!(lse_objective(&m, &series, t, &m).unwrap() >= best);
        }
    }

    #[test]
    fn exponential_power_kernel_is_a_lehmer_mean(xs in data(), beta in -1.5f64..3.0) {
        let (series, _) = apply_kernel(&xs, WeightKernel::Power(beta), None).unwrap();
        let theta = mle_closed_form(&FamilyModel::exponential(), &series).unwrap().theta_hat;
        let l = lehmer_mean(&xs, Exponent::new(beta + 1.0).unwrap(), None).unwrap();
        prop_assert!(rel_err(1.0 / theta, l) < 1e-10);
    }

    #[test]
    fn weibull_unit_kernel_is_a_holder_mean(xs in data(), alpha in 0.2f64..4.0) {
        let series = common::unweighted(xs.as_slice());
        let theta = mle_closed_form(&FamilyModel::weibull(alpha).unwrap(), &series).unwrap().theta_hat;
        let h = holder_mean(&xs, Exponent::new(alpha).unwrap(), None).unwrap();
        prop_assert!(rel_err(1.0 / theta, h) < 1e-10);
    }
}

#[test]
fn other_transforms_invert_the_same_sufficient_mean() {
    let series = common::unweighted(&[1.0, 2.0, 4.0]);
    let model = FamilyModel::exponential();
    let m = centrality::wmle::sufficient_mean(&model, &series)
        .unwrap()
        .value();
    assert_eq!(lse_critical(&model, &series, &MeanScale).unwrap(), m);
    let positive_only = centrality::wmle::FnTransform {
        forward: f64::ln,
        inverse: |m: f64| (m > 0.0).then(|| m.exp()),
    };
    assert!(lse_critical(&model, &series, &positive_only).is_err());
}

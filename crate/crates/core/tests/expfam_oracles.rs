mod common;

use centrality::expfam::{FamilyModel, ModelKind};
use statrs::distribution::{ContinuousCDF, Gamma, Normal};
use statrs::function::erf::erf;

use common::{all_models, integrate_positive_line, ks_statistic, rel_err, rng};

const THETAS: [f64; 4] = [0.3, 1.0, 2.0, 5.0];

fn density(model: &FamilyModel, theta: f64) -> impl Fn(f64) -> f64 + '_ {
    move |x| model.pdf(theta, x).unwrap_or(0.0)
}

#[test]
fn densities_integrate_to_one() {
    for model in all_models() {
        for theta in THETAS {
            let mass = integrate_positive_line(density(&model, theta), 1e-11);
            assert!(
                (mass - 1.0).abs() < 1e-6,
                "{model} at θ={theta}: mass {mass}"
            );
        }
    }
}

#[test]
fn r_is_the_mean_of_t_by_quadrature() {
    for model in all_models() {
        for theta in THETAS {
            let pdf = density(&model, theta);
            let mean = integrate_positive_line(|x| model.t(x).map_or(0.0, |t| t * pdf(x)), 1e-11);
            let r = model.r_of_theta(theta).unwrap();
            assert!(
                rel_err(mean, r) < 1e-6,
                "{model} at θ={theta}: ∫T p = {mean}, r = {r}"
            );
        }
    }
}

#[test]
fn variance_of_t_by_quadrature() {
    for model in all_models() {
        for theta in [0.5, 2.0] {
            let pdf = density(&model, theta);
            let r = model.r_of_theta(theta).unwrap();
            let var = integrate_positive_line(
                |x| model.t(x).map_or(0.0, |t| (t - r) * (t - r) * pdf(x)),
                1e-11,
            );
            let v = model.variance_t(theta).unwrap();
            assert!(rel_err(var, v) < 1e-5, "{model} at θ={theta}: {var} vs {v}");
        }
    }
}

#[test]
fn monte_carlo_mean_of_t_within_four_standard_errors() {
    let n = 100_000;
    for (i, model) in all_models().into_iter().enumerate() {
        let theta = 1.7;
        let mut rng = rng(100 + i as u64);
        let ts: Vec<f64> = model
            .sample_n(theta, n, &mut rng)
            .into_iter()
            .map(|x| model.t(x).unwrap())
            .collect();
        let mean = ts.iter().sum::<f64>() / n as f64;
        let var = ts.iter().map(|t| (t - mean).powi(2)).sum::<f64>() / (n - 1) as f64;
        let se = (var / n as f64).sqrt();
        let r = model.r_of_theta(theta).unwrap();
        assert!(
            (mean - r).abs() < 4.0 * se,
            "{model}: sample mean {mean}, r {r}, se {se}"
        );
    }
}

/// Closed-form CDFs, written independently of the library's densities.
fn reference_cdf(model: &FamilyModel, theta: f64) -> Box<dyn Fn(f64) -> f64> {
    let h = model.hyper();
    let std_normal = Normal::new(0.0, 1.0).unwrap();
    match model.kind() {
        ModelKind::Exponential => Box::new(move |x| 1.0 - (-theta * x).exp()),
        ModelKind::Weibull => Box::new(move |x| 1.0 - (-(theta * x).powf(h.shape)).exp()),
        ModelKind::StdLogNormal => Box::new(move |x| std_normal.cdf(theta * x.ln())),
        ModelKind::HalfNormal => Box::new(move |x| erf(theta * x / 2f64.sqrt())),
        ModelKind::GenHalfNormal => Box::new(move |x| erf((theta * x).powf(h.shape) / 2f64.sqrt())),
        ModelKind::Gamma => {
            let g = Gamma::new(h.k, theta).unwrap();
            Box::new(move |x| g.cdf(x))
        }
        ModelKind::InvGamma => {
            let g = Gamma::new(h.k, theta).unwrap();
            Box::new(move |x| 1.0 - g.cdf(1.0 / x))
        }
        ModelKind::GenGamma => {
            let g = Gamma::new(h.b / h.shape, 1.0).unwrap();
            Box::new(move |x| g.cdf((theta * x).powf(h.shape)))
        }
    }
}

#[test]
fn samplers_pass_kolmogorov_smirnov() {
    let n = 20_000;
    // critical value at the 0.1% level
    let critical = 1.95 / (n as f64).sqrt();
    for (i, model) in all_models().into_iter().enumerate() {
        for (j, theta) in [0.6, 2.5].into_iter().enumerate() {
            let mut rng = rng(1000 + 10 * i as u64 + j as u64);
            let xs = model.sample_n(theta, n, &mut rng);
            let d = ks_statistic(&xs, reference_cdf(&model, theta));
            assert!(d < critical, "{model} at θ={theta}: D = {d}");
        }
    }
}

#[test]
fn reference_cdfs_agree_with_integrated_densities() {
    for model in all_models() {
        let theta = 1.3;
        let cdf = reference_cdf(&model, theta);
        for x in [0.4f64, 1.0, 2.2] {
            let pdf = density(&model, theta);
            let mass = common::adaptive_simpson(
                |s| {
                    let y = s.exp();
                    if y > x {
                        0.0
                    } else {
                        pdf(y) * y
                    }
                },
                -60.0,
                x.ln(),
                1e-12,
            );
            assert!(
                (mass - cdf(x)).abs() < 1e-7,
                "{model} at x={x}: {mass} vs {}",
                cdf(x)
            );
        }
    }
}

#[test]
fn shape_one_members_reduce_to_simpler_models() {
    let x = 1.7;
    for theta in THETAS {
        let exp = FamilyModel::exponential().pdf(theta, x).unwrap();
        assert!(
            rel_err(
                FamilyModel::weibull(1.0).unwrap().pdf(theta, x).unwrap(),
                exp
            ) < 1e-14
        );
        assert!(rel_err(FamilyModel::gamma(1.0).unwrap().pdf(theta, x).unwrap(), exp) < 1e-14);
        assert!(
            rel_err(
                FamilyModel::gen_gamma(1.0, 1.0)
                    .unwrap()
                    .pdf(theta, x)
                    .unwrap(),
                exp
            ) < 1e-14
        );
        let hn = FamilyModel::half_normal().pdf(theta, x).unwrap();
        assert!(
            rel_err(
                FamilyModel::gen_half_normal(1.0)
                    .unwrap()
                    .pdf(theta, x)
                    .unwrap(),
                hn
            ) < 1e-14
        );
    }
}

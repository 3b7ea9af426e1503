//! Shared helpers for the integration tests: independent numeric oracles and
//! seeded data generators.

#![allow(dead_code)]

use rand::rngs::StdRng;
use rand::{RngExt, SeedableRng};

use centrality::expfam::{FamilyModel, ModelKind};
use centrality::means::ValueSeries;
use centrality::wmle::WeightedSeries;

pub fn rng(seed: u64) -> StdRng {
    StdRng::seed_from_u64(seed)
}

pub fn rel_err(a: f64, b: f64) -> f64 {
    if a == b {
        0.0
    } else {
        (a - b).abs() / a.abs().max(b.abs())
    }
}

/// `n` values uniform on `(lo, hi]`.
pub fn uniform_values(rng: &mut StdRng, n: usize, lo: f64, hi: f64) -> Vec<f64> {
    (0..n)
        .map(|_| hi - (hi - lo) * rng.random::<f64>())
        .collect()
}

pub fn uniform_series(rng: &mut StdRng, n: usize, lo: f64, hi: f64) -> ValueSeries {
    ValueSeries::new(uniform_values(rng, n, lo, hi)).unwrap()
}

pub fn unweighted(xs: &[f64]) -> WeightedSeries {
    WeightedSeries::new(xs.iter().map(|&x| (x, 1.0)).collect()).unwrap()
}

#[allow(clippy::too_many_arguments)]
fn simpson_step<F: Fn(f64) -> f64>(
    f: &F,
    a: f64,
    b: f64,
    fa: f64,
    fm: f64,
    fb: f64,
    whole: f64,
    tol: f64,
    depth: u32,
) -> f64 {
    let m = 0.5 * (a + b);
    let (lm, rm) = (0.5 * (a + m), 0.5 * (m + b));
    let (flm, frm) = (f(lm), f(rm));
    let left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    let right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    let delta = left + right - whole;
    if depth == 0 || delta.abs() <= 15.0 * tol {
        left + right + delta / 15.0
    } else {
        simpson_step(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1)
            + simpson_step(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1)
    }
}

/// Adaptive Simpson quadrature of `f` over `[a, b]`.
pub fn adaptive_simpson<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, tol: f64) -> f64 {
    // split first so narrow peaks are not missed by the initial 3-point rule
    let pieces = 64;
    let h = (b - a) / pieces as f64;
    (0..pieces)
        .map(|i| {
            let (lo, hi) = (a + i as f64 * h, a + (i + 1) as f64 * h);
            let (fa, fm, fb) = (f(lo), f(0.5 * (lo + hi)), f(hi));
            let whole = (hi - lo) / 6.0 * (fa + 4.0 * fm + fb);
            simpson_step(&f, lo, hi, fa, fm, fb, whole, tol / pieces as f64, 40)
        })
        .sum()
}

/// `∫_0^∞ g(x) dx` computed as `∫ g(e^s) e^s ds` over `s ∈ [-60, 60]`.
pub fn integrate_positive_line<F: Fn(f64) -> f64>(g: F, tol: f64) -> f64 {
    adaptive_simpson(
        |s| {
            let x = s.exp();
            let v = g(x) * x;
            if v.is_finite() {
                v
            } else {
                0.0
            }
        },
        -60.0,
        60.0,
        tol,
    )
}

/// Two-sided Kolmogorov–Smirnov statistic of `samples` against `cdf`.
pub fn ks_statistic<F: Fn(f64) -> f64>(samples: &[f64], cdf: F) -> f64 {
    let mut sorted = samples.to_vec();
    sorted.sort_by(f64::total_cmp);
    let n = sorted.len() as f64;
    sorted
        .iter()
        .enumerate()
        .map(|(i, &x)| {
            let f = cdf(x);
            (f - i as f64 / n).abs().max(((i + 1) as f64 / n - f).abs())
        })
        .fold(0.0, f64::max)
}

/// One representative of every catalog entry, with non-trivial hyperparameters.
pub fn all_models() -> Vec<FamilyModel> {
    vec![
        FamilyModel::exponential(),
        FamilyModel::weibull(1.5).unwrap(),
        FamilyModel::std_lognormal(),
        FamilyModel::half_normal(),
        FamilyModel::gen_half_normal(0.8).unwrap(),
        FamilyModel::gamma(2.0).unwrap(),
        FamilyModel::inv_gamma(3.0).unwrap(),
        FamilyModel::gen_gamma(1.5, 2.5).unwrap(),
    ]
}

pub fn kind_list() -> Vec<ModelKind> {
    all_models().iter().map(|m| m.kind()).collect()
}

/// Histogram of `n` draws from an equal-weight mixture of exponentials with
/// the given rates, binned on `[0, hi]`. Draws past `hi` are discarded.
pub fn mixture_histogram(
    rng: &mut StdRng,
    rates: &[f64],
    n: usize,
    bins: usize,
    hi: f64,
) -> centrality::fitsearch::Histogram {
    let width = hi / bins as f64;
    let mut counts = vec![0.0; bins];
    let mut kept = 0;
    while kept < n {
        let rate = rates[rng.random_range(0..rates.len())];
        let u: f64 = rng.random();
        let x = -(1.0 - u).ln() / rate;
        if x < hi {
            counts[((x / width) as usize).min(bins - 1)] += 1.0;
            kept += 1;
        }
    }
    let edges = (0..=bins).map(|i| i as f64 * width).collect();
    centrality::fitsearch::Histogram::new(edges, counts).unwrap()
}

//! Weighted maximum-likelihood estimation for the catalog models.
//!
//! Each observation contributes its log-density scaled by a θ-free weight
//! `u(x)`. Setting the score to zero gives
//!
//! ```text
//! r(θ) = Σ u_i T(x_i) / Σ u_i
//! ```
//!
//! and since `r` is strictly increasing the estimate is `r⁻¹` of the weighted
//! sufficient mean ([`mle_closed_form`]). [`mle_numeric`] maximizes the same
//! likelihood directly and serves as an independent check. The weighted
//! least-squares objective `Σ u_i (T(x_i) - O(θ))²` has its critical point at
//! the same weighted mean ([`lse_critical`]).

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::expfam::FamilyModel;
use crate::means::{ValueSeries, WeightVector};
use crate::optim::brent_minimize;

/// The relevance function u(x).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum WeightKernel {
    /// u(x) = 1
    Unit,
    /// u(x) = x^β
    Power(f64),
    /// u(x) = ln(x + 1)
    LogShift,
}

impl WeightKernel {
    pub fn eval(&self, x: f64) -> Result<f64> {
        match *self {
            WeightKernel::Unit => Ok(1.0),
            WeightKernel::Power(beta) => {
                if x == 0.0 && beta < 0.0 {
                    Err(Error::Domain(format!("x^{beta} is undefined at x = 0")))
                } else {
                    Ok(x.powf(beta))
                }
            }
            WeightKernel::LogShift => Ok(x.ln_1p()),
        }
    }

    /// Short name used in reports: `unit`, `power` or `log1p`.
    pub fn label(&self) -> &'static str {
        match self {
            WeightKernel::Unit => "unit",
            WeightKernel::Power(_) => "power",
            WeightKernel::LogShift => "log1p",
        }
    }

    pub fn beta(&self) -> Option<f64> {
        match *self {
            WeightKernel::Power(beta) => Some(beta),
            _ => None,
        }
    }
}

impl fmt::Display for WeightKernel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            WeightKernel::Power(beta) => write!(f, "power:{beta}"),
            other => f.write_str(other.label()),
        }
    }
}

impl FromStr for WeightKernel {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "unit" => Ok(WeightKernel::Unit),
            "log1p" | "log-shift" => Ok(WeightKernel::LogShift),
            _ => {
                let beta = s
                    .strip_prefix("power:")
                    .and_then(|b| b.parse::<f64>().ok())
                    .filter(|b| b.is_finite())
                    .ok_or_else(|| {
                        Error::Domain(format!(
                            "unknown kernel `{s}` (expected unit, power:<beta> or log1p)"
                        ))
                    })?;
                Ok(WeightKernel::Power(beta))
            }
        }
    }
}

/// Weighted data: pairs `(x_i, u_i)` with `x_i ≥ 0` and `u_i > 0`.
#[derive(Debug, Clone, PartialEq)]
pub struct WeightedSeries {
    xs: Vec<f64>,
    us: Vec<f64>,
}

impl WeightedSeries {
    pub fn new(points: Vec<(f64, f64)>) -> Result<Self> {
        if points.is_empty() {
            return Err(Error::EmptyData);
        }
        for (index, &(x, u)) in points.iter().enumerate() {
            if !x.is_finite() || x < 0.0 {
                return Err(Error::BadValue {
                    index,
                    value: x,
                    reason: "values must be finite and non-negative",
                });
            }
            if !u.is_finite() || u <= 0.0 {
                return Err(Error::BadValue {
                    index,
                    value: u,
                    reason: "weights must be finite and strictly positive",
                });
            }
        }
        let (xs, us) = points.into_iter().unzip();
        Ok(Self { xs, us })
    }

    /// Every point with weight one.
    pub fn unweighted(xs: &ValueSeries) -> Self {
        Self {
            xs: xs.as_slice().to_vec(),
            us: vec![1.0; xs.len()],
        }
    }

    pub fn len(&self) -> usize {
        self.xs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.xs.is_empty()
    }

    pub fn values(&self) -> &[f64] {
        &self.xs
    }

    pub fn weights(&self) -> &[f64] {
        &self.us
    }

    pub fn points(&self) -> impl Iterator<Item = (f64, f64)> + '_ {
        self.xs.iter().copied().zip(self.us.iter().copied())
    }

    pub fn total_weight(&self) -> f64 {
        self.us.iter().sum()
    }

    /// The same data with every weight multiplied by `factor > 0`.
    pub fn scaled(&self, factor: f64) -> Result<Self> {
        Self::new(self.points().map(|(x, u)| (x, u * factor)).collect())
    }
}

/// Pairs each value with `u(x_i) · w_i` and drops points whose combined weight
/// is zero. Returns the series and the number of dropped points.
pub fn apply_kernel(
    xs: &ValueSeries,
    kernel: WeightKernel,
    base_weights: Option<&WeightVector>,
) -> Result<(WeightedSeries, usize)> {
    if let Some(w) = base_weights {
        if w.len() != xs.len() {
            return Err(Error::Domain(format!(
                "{} weights for {} values",
                w.len(),
                xs.len()
            )));
        }
    }
    let mut points = Vec::with_capacity(xs.len());
    let mut dropped = 0;
    for (i, &x) in xs.as_slice().iter().enumerate() {
        let base = base_weights.map_or(1.0, |w| w.as_slice()[i]);
        let u = kernel.eval(x)? * base;
        if u > 0.0 {
            points.push((x, u));
        } else {
            dropped += 1;
        }
    }
    if points.is_empty() {
        return Err(Error::EmptyData);
    }
    Ok((WeightedSeries::new(points)?, dropped))
}

/// `Σ u_i [ln a(x_i) + η(θ) T(x_i) - H(θ)]`, the log of the weighted likelihood.
pub fn weighted_loglik(model: &FamilyModel, theta: f64, data: &WeightedSeries) -> Result<f64> {
    let mut acc = 0.0;
    for (x, u) in data.points() {
        acc += u * model.ln_pdf(theta, x)?;
    }
    Ok(acc)
}

/// The u-weighted mean of the sufficient statistic T over the data.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SufficientMean(f64);

impl SufficientMean {
    pub fn value(self) -> f64 {
        self.0
    }
}

/// `Σ u_i T(x_i) / Σ u_i`, clamped to the hull of the T values.
pub fn sufficient_mean(model: &FamilyModel, data: &WeightedSeries) -> Result<SufficientMean> {
    let mut weighted = 0.0;
    let mut total = 0.0;
    let mut lo = f64::INFINITY;
    let mut hi = f64::NEG_INFINITY;
    for (x, u) in data.points() {
        let t = model.t(x)?;
        lo = lo.min(t);
        hi = hi.max(t);
        weighted += u * t;
        total += u;
    }
    Ok(SufficientMean((weighted / total).clamp(lo, hi)))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MleResult {
    pub theta_hat: f64,
    /// Weighted log-likelihood at `theta_hat`.
    pub loglik: f64,
    /// Second derivative of the weighted log-likelihood at `theta_hat`.
    pub curvature: f64,
}

/// θ̂ = r⁻¹(Σ u_i T(x_i) / Σ u_i).
///
/// The curvature at the critical point is `-η'(θ̂)² Var_θ̂[T] Σu`
/// (equivalently `-η'(θ̂) r'(θ̂) Σu`), which is negative for every model.
pub fn mle_closed_form(model: &FamilyModel, data: &WeightedSeries) -> Result<MleResult> {
    let m = sufficient_mean(model, data)?;
    let theta_hat = model.r_inverse(m.value())?;
    let loglik = weighted_loglik(model, theta_hat, data)?;
    let curvature = -model.eta_prime(theta_hat) * model.r_prime(theta_hat)? * data.total_weight();
    Ok(MleResult {
        theta_hat,
        loglik,
        curvature,
    })
}

pub const DEFAULT_BRACKET: (f64, f64) = (1e-6, 1e6);
pub const DEFAULT_TOL: f64 = 1e-9;
const MAX_EXPANSIONS: usize = 3;
const EDGE_MARGIN: f64 = 1e-6;

/// Maximizes the weighted log-likelihood over `ln θ` without using the
/// closed form. The bracket is widened tenfold on each side, at most three
/// times, while the maximum sits on its boundary. `tol` is the absolute
/// tolerance on `ln θ`, i.e. relative on θ.
pub fn mle_numeric(
    model: &FamilyModel,
    data: &WeightedSeries,
    bracket: (f64, f64),
    tol: f64,
) -> Result<MleResult> {
    let (mut lo, mut hi) = bracket;
    if !(lo.is_finite() && hi.is_finite() && lo > 0.0 && hi > lo) {
        return Err(Error::Domain(format!("invalid bracket [{lo}, {hi}]")));
    }
    for expansion in 0..=MAX_EXPANSIONS {
        let (a, b) = (lo.ln(), hi.ln());
        let best = brent_minimize(
            |s| weighted_loglik(model, s.exp(), data).map_or(f64::INFINITY, |l| -l),
            a,
            b,
            tol,
            500,
        );
        let at_edge = best.x - a < EDGE_MARGIN || b - best.x < EDGE_MARGIN;
        if !at_edge && best.fx.is_finite() {
            let theta_hat = best.x.exp();
            return Ok(MleResult {
                theta_hat,
                loglik: weighted_loglik(model, theta_hat, data)?,
                curvature: numeric_curvature(model, data, theta_hat)?,
            });
        }
        if expansion < MAX_EXPANSIONS {
            lo /= 10.0;
            hi *= 10.0;
        }
    }
    Err(Error::NoInteriorMaximum { lo, hi })
}

/// Central finite-difference estimate of d²/dθ² of the weighted log-likelihood.
pub fn numeric_curvature(model: &FamilyModel, data: &WeightedSeries, theta: f64) -> Result<f64> {
    let h = 1e-4 * theta;
    let plus = weighted_loglik(model, theta + h, data)?;
    let mid = weighted_loglik(model, theta, data)?;
    let minus = weighted_loglik(model, theta - h, data)?;
    Ok((plus - 2.0 * mid + minus) / (h * h))
}

/// A strictly monotone reparametrization `O(θ)` with its inverse.
pub trait Transform {
    fn forward(&self, theta: f64) -> f64;
    /// `None` when `m` is outside the range of `O`.
    fn inverse(&self, m: f64) -> Option<f64>;
}

/// The model's own `r(θ)`; with it the least-squares and likelihood
/// estimates coincide.
impl Transform for FamilyModel {
    fn forward(&self, theta: f64) -> f64 {
        self.r_of_theta(theta).unwrap_or(f64::NAN)
    }

    fn inverse(&self, m: f64) -> Option<f64> {
        self.r_inverse(m).ok()
    }
}

/// `O(θ) = θ`: the estimate is reported on the sufficient-mean scale.
#[derive(Debug, Clone, Copy, Default)]
pub struct MeanScale;

impl Transform for MeanScale {
    fn forward(&self, theta: f64) -> f64 {
        theta
    }

    fn inverse(&self, m: f64) -> Option<f64> {
        Some(m)
    }
}

/// A transform built from a pair of closures.
pub struct FnTransform<F, G> {
    pub forward: F,
    pub inverse: G,
}

impl<F, G> Transform for FnTransform<F, G>
where
    F: Fn(f64) -> f64,
    G: Fn(f64) -> Option<f64>,
{
    fn forward(&self, theta: f64) -> f64 {
        (self.forward)(theta)
    }

    fn inverse(&self, m: f64) -> Option<f64> {
        (self.inverse)(m)
    }
}

/// `ξ(θ) = Σ u_i (T(x_i) - O(θ))²`.
pub fn lse_objective<O: Transform + ?Sized>(
    model: &FamilyModel,
    data: &WeightedSeries,
    theta: f64,
    transform: &O,
) -> Result<f64> {
    let o = transform.forward(theta);
    if !o.is_finite() {
        return Err(Error::OutOfRange(theta));
    }
    let mut acc = 0.0;
    for (x, u) in data.points() {
        let d = model.t(x)? - o;
        acc += u * d * d;
    }
    Ok(acc)
}

/// The critical point of [`lse_objective`]: `O⁻¹(Σ u_i T(x_i) / Σ u_i)`.
pub fn lse_critical<O: Transform + ?Sized>(
    model: &FamilyModel,
    data: &WeightedSeries,
    transform: &O,
) -> Result<f64> {
    let m = sufficient_mean(model, data)?.value();
    match transform.inverse(m) {
        Some(theta) if theta.is_finite() => Ok(theta),
        _ => Err(Error::OutOfRange(m)),
    }
}

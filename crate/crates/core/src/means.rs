//! Weighted central tendencies: the Kolmogorov f-mean, the Hölder (power)
//! family, the Lehmer family, and the value-dependent v-weights that both
//! families apply to their data.
//!
//! Every mean here is evaluated in log space with the largest term factored
//! out, so extreme exponents on wide-ranging data neither overflow nor
//! underflow. The Hölder family switches to an `expm1`/`ln_1p` evaluation for
//! exponents close to zero and to the exact geometric mean for `|alpha| < 1e-9`.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// Exponents with magnitude below this are evaluated as the geometric mean.
pub const GEOMETRIC_THRESHOLD: f64 = 1e-9;

/// A non-empty series of finite, non-negative measurements.
#[derive(Debug, Clone, PartialEq)]
pub struct ValueSeries(Vec<f64>);

impl ValueSeries {
    pub fn new(values: Vec<f64>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::EmptyData);
        }
        for (index, &value) in values.iter().enumerate() {
            if !value.is_finite() || value < 0.0 {
                return Err(Error::BadValue {
                    index,
                    value,
                    reason: "values must be finite and non-negative",
                });
            }
        }
        Ok(Self(values))
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn min(&self) -> f64 {
        self.0.iter().copied().fold(f64::INFINITY, f64::min)
    }

    pub fn max(&self) -> f64 {
        self.0.iter().copied().fold(f64::NEG_INFINITY, f64::max)
    }

    pub fn into_inner(self) -> Vec<f64> {
        self.0
    }
}

impl TryFrom<Vec<f64>> for ValueSeries {
    type Error = Error;

    fn try_from(values: Vec<f64>) -> Result<Self> {
        Self::new(values)
    }
}

/// Strictly positive relevance weights (the w-weights), paired by index with
/// a [`ValueSeries`].
#[derive(Debug, Clone, PartialEq)]
pub struct WeightVector(Vec<f64>);

impl WeightVector {
    pub fn new(weights: Vec<f64>) -> Result<Self> {
        if weights.is_empty() {
            return Err(Error::EmptyData);
        }
        for (index, &value) in weights.iter().enumerate() {
            if !value.is_finite() || value <= 0.0 {
                return Err(Error::BadValue {
                    index,
                    value,
                    reason: "weights must be finite and strictly positive",
                });
            }
        }
        Ok(Self(weights))
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

/// The real parameter selecting one member of a mean family. The infinite
/// members are the max and min limits.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Exponent {
    NegInf,
    Finite(f64),
    PosInf,
}

impl Exponent {
    pub fn new(alpha: f64) -> Result<Self> {
        if alpha.is_nan() {
            Err(Error::Domain("exponent must not be NaN".into()))
        } else if alpha == f64::INFINITY {
            Ok(Self::PosInf)
        } else if alpha == f64::NEG_INFINITY {
            Ok(Self::NegInf)
        } else {
            Ok(Self::Finite(alpha))
        }
    }

    pub fn value(self) -> f64 {
        match self {
            Self::NegInf => f64::NEG_INFINITY,
            Self::Finite(a) => a,
            Self::PosInf => f64::INFINITY,
        }
    }

    fn finite(self) -> Result<f64> {
        match self {
            Self::Finite(a) => Ok(a),
            _ => Err(Error::Domain(
                "this quantity needs a finite exponent".into(),
            )),
        }
    }
}

impl FromStr for Exponent {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let alpha: f64 = s
            .trim()
            .parse()
            .map_err(|_| Error::Domain(format!("cannot parse exponent `{s}`")))?;
        Self::new(alpha)
    }
}

impl fmt::Display for Exponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::NegInf => f.write_str("-inf"),
            Self::Finite(a) => write!(f, "{a}"),
            Self::PosInf => f.write_str("inf"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MeanFamily {
    Holder,
    Lehmer,
}

fn check_weights(xs: &ValueSeries, weights: Option<&WeightVector>) -> Result<()> {
    match weights {
        Some(w) if w.len() != xs.len() => Err(Error::Domain(format!(
            "{} weights for {} values",
            w.len(),
            xs.len()
        ))),
        _ => Ok(()),
    }
}

fn weight_at(weights: Option<&WeightVector>, i: usize) -> f64 {
    weights.map_or(1.0, |w| w.0[i])
}

fn weight_sum(xs: &ValueSeries, weights: Option<&WeightVector>) -> f64 {
    weights.map_or(xs.len() as f64, |w| w.0.iter().sum())
}

/// Zero values may only be raised to non-negative powers.
fn check_zeros(xs: &ValueSeries, exponent: f64) -> Result<()> {
    if exponent < 0.0 {
        if let Some(index) = xs.0.iter().position(|&x| x == 0.0) {
            return Err(Error::BadValue {
                index,
                value: 0.0,
                reason: "zero raised to a negative power",
            });
        }
    }
    Ok(())
}

/// ln(w_i x_i^e), with 0^0 = 1 and 0^e = 0 for e > 0.
fn log_term(x: f64, w: f64, e: f64) -> f64 {
    if x == 0.0 {
        if e == 0.0 {
            w.ln()
        } else {
            f64::NEG_INFINITY
        }
    } else {
        w.ln() + e * x.ln()
    }
}

/// ln Σ w_i x_i^e, factoring out the largest term.
fn ln_power_sum(xs: &ValueSeries, weights: Option<&WeightVector>, e: f64) -> f64 {
    let terms: Vec<f64> =
        xs.0.iter()
            .enumerate()
            .map(|(i, &x)| log_term(x, weight_at(weights, i), e))
            .collect();
    let peak = terms.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    if peak == f64::NEG_INFINITY {
        return f64::NEG_INFINITY;
    }
    peak + terms.iter().map(|t| (t - peak).exp()).sum::<f64>().ln()
}

fn clamp_to_range(value: f64, xs: &ValueSeries) -> f64 {
    value.clamp(xs.min(), xs.max())
}

/// Kolmogorov (generalized f-) mean `f_inv(mean(f(x_i)))`.
///
/// `f` must be continuous and strictly monotone on the data and `f_inv` its
/// exact inverse; no numeric inversion is attempted.
pub fn kolmogorov_mean<F, G>(xs: &ValueSeries, f: F, f_inv: G) -> Result<f64>
where
    F: Fn(f64) -> f64,
    G: Fn(f64) -> f64,
{
    let mut acc = 0.0;
    for (index, &x) in xs.0.iter().enumerate() {
        let fx = f(x);
        if !fx.is_finite() {
            return Err(Error::BadValue {
                index,
                value: x,
                reason: "generator is not finite at this value",
            });
        }
        acc += fx;
    }
    let mean = f_inv(acc / xs.len() as f64);
    if !mean.is_finite() {
        return Err(Error::Domain(format!("inverse generator returned {mean}")));
    }
    Ok(clamp_to_range(mean, xs))
}

/// Hölder (power) mean, optionally w-weighted:
/// `(Σ w_i x_i^α / Σ w_j)^(1/α)`.
///
/// `α = 0` is the weighted geometric mean, `α = ±∞` the max/min.
pub fn holder_mean(
    xs: &ValueSeries,
    alpha: Exponent,
    weights: Option<&WeightVector>,
) -> Result<f64> {
    check_weights(xs, weights)?;
    let alpha = match alpha {
        Exponent::PosInf => return Ok(xs.max()),
        Exponent::NegInf => return Ok(xs.min()),
        Exponent::Finite(a) => a,
    };
    check_zeros(xs, if alpha <= 0.0 { -1.0 } else { alpha })?;
    let total = weight_sum(xs, weights);

    if alpha.abs() < GEOMETRIC_THRESHOLD {
        let log_mean =
            xs.0.iter()
                .enumerate()
                .map(|(i, &x)| weight_at(weights, i) * x.ln())
                .sum::<f64>()
                / total;
        return Ok(clamp_to_range(log_mean.exp(), xs));
    }

    // ln of the weighted mean of x^α.
    let near_one =
        xs.0.iter()
            .all(|&x| x > 0.0 && (alpha * x.ln()).abs() <= 1.0);
    let ln_mean = if near_one {
        let excess =
            xs.0.iter()
                .enumerate()
                .map(|(i, &x)| weight_at(weights, i) * (alpha * x.ln()).exp_m1())
                .sum::<f64>()
                / total;
        excess.ln_1p()
    } else {
        ln_power_sum(xs, weights, alpha) - total.ln()
    };
    if ln_mean == f64::NEG_INFINITY {
        // every value is zero
        return Ok(0.0);
    }
    Ok(clamp_to_range((ln_mean / alpha).exp(), xs))
}

/// Lehmer mean, optionally w-weighted: `Σ w_i x_i^α / Σ w_j x_j^(α-1)`.
pub fn lehmer_mean(
    xs: &ValueSeries,
    alpha: Exponent,
    weights: Option<&WeightVector>,
) -> Result<f64> {
    check_weights(xs, weights)?;
    let alpha = match alpha {
        Exponent::PosInf => return Ok(xs.max()),
        Exponent::NegInf => return Ok(xs.min()),
        Exponent::Finite(a) => a,
    };
    check_zeros(xs, alpha - 1.0)?;
    let ln_num = ln_power_sum(xs, weights, alpha);
    let ln_den = ln_power_sum(xs, weights, alpha - 1.0);
    if ln_den == f64::NEG_INFINITY {
        return Ok(0.0);
    }
    Ok(clamp_to_range((ln_num - ln_den).exp(), xs))
}

/// The v-weights each family assigns to its data: `w_i x_i^(α-1) / Σ w_j`
/// for Hölder and `w_i x_i^(α-1) / Σ w_j x_j^(α-1)` for Lehmer.
///
/// With these weights `H_α = (Σ v_i x_i)^(1/α)` and `L_α = Σ v_i x_i`.
/// Lehmer weights sum to one; Hölder weights sum to `H_(α-1)^(α-1)`.
pub fn v_weights(
    xs: &ValueSeries,
    alpha: Exponent,
    family: MeanFamily,
    weights: Option<&WeightVector>,
) -> Result<Vec<f64>> {
    check_weights(xs, weights)?;
    let e = alpha.finite()? - 1.0;
    check_zeros(xs, e)?;
    let ln_norm = match family {
        MeanFamily::Holder => weight_sum(xs, weights).ln(),
        MeanFamily::Lehmer => ln_power_sum(xs, weights, e),
    };
    if ln_norm == f64::NEG_INFINITY {
        return Err(Error::Domain(
            "v-weights are undefined when every value is zero".into(),
        ));
    }
    Ok(xs
        .0
        .iter()
        .enumerate()
        .map(|(i, &x)| (log_term(x, weight_at(weights, i), e) - ln_norm).exp())
        .collect())
}

/// Evaluates both sides of `H_α(rescaled) = L_α^(1/α)`.
///
/// The first component raises `Σ v_i x_i` to `1/α`, where `v_i` are the
/// Hölder v-weights rescaled to sum to one; the second raises the Lehmer
/// mean to `1/α`.
pub fn holder_lehmer_link(xs: &ValueSeries, alpha: Exponent) -> Result<(f64, f64)> {
    let a = alpha.finite()?;
    if a == 0.0 {
        return Err(Error::Domain("the link needs a non-zero exponent".into()));
    }
    let rescaled = v_weights(xs, alpha, MeanFamily::Lehmer, None)?;
    let weighted: f64 = rescaled.iter().zip(&xs.0).map(|(v, x)| v * x).sum();
    let left = weighted.powf(1.0 / a);
    let right = lehmer_mean(xs, alpha, None)?.powf(1.0 / a);
    Ok((left, right))
}

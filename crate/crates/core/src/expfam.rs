//! One-parameter exponential-family models of the form
//! `f(x|θ) = a(x) exp(η(θ) T(x) - H(θ))` on `x ≥ 0`, with `θ > 0`.
//!
//! All eight catalog members share the same skeleton:
//!
//! ```text
//! η(θ) = c θ^q        H(θ) = -h ln θ        T(x) = -g(x)
//! r(θ) = H'(θ)/η'(θ) = -h / (c q θ^q)
//! ```
//!
//! so `r` is strictly increasing with the closed-form inverse
//! `θ = (-h / (c q m))^(1/q)` for any `m < 0`.
//!
//! | model             | c   | q   | h   | g(x)      |
//! |-------------------|-----|-----|-----|-----------|
//! | exponential       | 1   | 1   | 1   | x         |
//! | weibull(α)        | 1   | α   | α   | x^α       |
//! | std-lognormal     | 1/2 | 2   | 1   | ln²x      |
//! | half-normal       | 1/2 | 2   | 1   | x²        |
//! | gen-half-normal(α)| 1/2 | 2α  | α   | x^(2α)    |
//! | gamma(k)          | 1   | 1   | k   | x         |
//! | inv-gamma(k)      | 1   | 1   | k   | 1/x       |
//! | gen-gamma(α, b)   | 1   | α   | b   | x^α       |

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use rand::Rng;
use rand_distr::{Distribution, Exp1, Gamma, StandardNormal};
use serde::{Deserialize, Serialize};
use statrs::function::gamma::ln_gamma;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ModelKind {
    Exponential,
    Weibull,
    #[serde(rename = "std-lognormal")]
    StdLogNormal,
    HalfNormal,
    GenHalfNormal,
    Gamma,
    InvGamma,
    GenGamma,
}

impl ModelKind {
    pub const ALL: [ModelKind; 8] = [
        ModelKind::Exponential,
        ModelKind::Weibull,
        ModelKind::StdLogNormal,
        ModelKind::HalfNormal,
        ModelKind::GenHalfNormal,
        ModelKind::Gamma,
        ModelKind::InvGamma,
        ModelKind::GenGamma,
    ];

    pub fn name(self) -> &'static str {
        match self {
            ModelKind::Exponential => "exponential",
            ModelKind::Weibull => "weibull",
            ModelKind::StdLogNormal => "std-lognormal",
            ModelKind::HalfNormal => "half-normal",
            ModelKind::GenHalfNormal => "gen-half-normal",
            ModelKind::Gamma => "gamma",
            ModelKind::InvGamma => "inv-gamma",
            ModelKind::GenGamma => "gen-gamma",
        }
    }

    /// Whether the model carries a shape exponent α that can be swept.
    pub fn has_shape(self) -> bool {
        matches!(
            self,
            ModelKind::Weibull | ModelKind::GenHalfNormal | ModelKind::GenGamma
        )
    }
}

impl FromStr for ModelKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        ModelKind::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| Error::UnknownModel(s.to_string()))
    }
}

impl fmt::Display for ModelKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Fixed, known hyperparameters. Each model reads only the ones it uses:
/// `shape` (α) for weibull, gen-half-normal and gen-gamma; `k` for gamma and
/// inv-gamma; `b` for gen-gamma.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Hyper {
    pub shape: f64,
    pub k: f64,
    pub b: f64,
}

impl Default for Hyper {
    fn default() -> Self {
        Self {
            shape: 1.0,
            k: 1.0,
            b: 1.0,
        }
    }
}

/// A catalog entry with its hyperparameters fixed.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FamilyModel {
    kind: ModelKind,
    shape: f64,
    k: f64,
    b: f64,
}

fn positive(name: &'static str, value: f64) -> Result<f64> {
    if value.is_finite() && value > 0.0 {
        Ok(value)
    } else {
        Err(Error::InvalidHyper { name, value })
    }
}

/// Looks up a model by name; see [`ModelKind::name`] for the accepted names.
pub fn catalog(name: &str, hyper: &Hyper) -> Result<FamilyModel> {
    FamilyModel::new(name.parse()?, hyper)
}

impl FamilyModel {
    pub fn new(kind: ModelKind, hyper: &Hyper) -> Result<Self> {
        let mut model = Self {
            kind,
            shape: 1.0,
            k: 1.0,
            b: 1.0,
        };
        match kind {
            ModelKind::Weibull | ModelKind::GenHalfNormal => {
                model.shape = positive("shape", hyper.shape)?;
            }
            ModelKind::Gamma | ModelKind::InvGamma => model.k = positive("k", hyper.k)?,
            ModelKind::GenGamma => {
                model.shape = positive("shape", hyper.shape)?;
                model.b = positive("b", hyper.b)?;
            }
            ModelKind::Exponential | ModelKind::StdLogNormal | ModelKind::HalfNormal => {}
        }
        Ok(model)
    }

    pub fn exponential() -> Self {
        Self::new(ModelKind::Exponential, &Hyper::default()).unwrap()
    }

    pub fn half_normal() -> Self {
        Self::new(ModelKind::HalfNormal, &Hyper::default()).unwrap()
    }

    pub fn std_lognormal() -> Self {
        Self::new(ModelKind::StdLogNormal, &Hyper::default()).unwrap()
    }

    pub fn weibull(shape: f64) -> Result<Self> {
        Self::new(
            ModelKind::Weibull,
            &Hyper {
                shape,
                ..Hyper::default()
            },
        )
    }

    pub fn gen_half_normal(shape: f64) -> Result<Self> {
        Self::new(
            ModelKind::GenHalfNormal,
            &Hyper {
                shape,
                ..Hyper::default()
            },
        )
    }

    pub fn gamma(k: f64) -> Result<Self> {
        Self::new(
            ModelKind::Gamma,
            &Hyper {
                k,
                ..Hyper::default()
            },
        )
    }

    pub fn inv_gamma(k: f64) -> Result<Self> {
        Self::new(
            ModelKind::InvGamma,
            &Hyper {
                k,
                ..Hyper::default()
            },
        )
    }

    pub fn gen_gamma(shape: f64, b: f64) -> Result<Self> {
        Self::new(ModelKind::GenGamma, &Hyper { shape, k: 1.0, b })
    }

    pub fn kind(&self) -> ModelKind {
        self.kind
    }

    pub fn name(&self) -> &'static str {
        self.kind.name()
    }

    pub fn hyper(&self) -> Hyper {
        Hyper {
            shape: self.shape,
            k: self.k,
            b: self.b,
        }
    }

    /// The shape exponent α, for the models that have one.
    pub fn shape(&self) -> Option<f64> {
        self.kind.has_shape().then_some(self.shape)
    }

    /// The same model with a different shape exponent.
    pub fn with_shape(&self, shape: f64) -> Result<Self> {
        if !self.kind.has_shape() {
            return Err(Error::Domain(format!(
                "{} has no shape parameter",
                self.name()
            )));
        }
        Ok(Self {
            shape: positive("shape", shape)?,
            ..*self
        })
    }

    /// (c, q, h) with η = c θ^q and H = -h ln θ.
    fn canonical(&self) -> (f64, f64, f64) {
        let a = self.shape;
        match self.kind {
            ModelKind::Exponential => (1.0, 1.0, 1.0),
            ModelKind::Weibull => (1.0, a, a),
            ModelKind::StdLogNormal | ModelKind::HalfNormal => (0.5, 2.0, 1.0),
            ModelKind::GenHalfNormal => (0.5, 2.0 * a, a),
            ModelKind::Gamma | ModelKind::InvGamma => (1.0, 1.0, self.k),
            ModelKind::GenGamma => (1.0, a, self.b),
        }
    }

    /// ln a(x) = constant + coefficient · ln x.
    fn base_measure(&self) -> (f64, f64) {
        let a = self.shape;
        let half_ln_2_over_pi = 0.5 * (2.0 / PI).ln();
        match self.kind {
            ModelKind::Exponential => (0.0, 0.0),
            ModelKind::Weibull => (a.ln(), a - 1.0),
            ModelKind::StdLogNormal => (-0.5 * (2.0 * PI).ln(), -1.0),
            ModelKind::HalfNormal => (half_ln_2_over_pi, 0.0),
            ModelKind::GenHalfNormal => (a.ln() + half_ln_2_over_pi, a - 1.0),
            ModelKind::Gamma => (-ln_gamma(self.k), self.k - 1.0),
            ModelKind::InvGamma => (-ln_gamma(self.k), -self.k - 1.0),
            ModelKind::GenGamma => (a.ln() - ln_gamma(self.b / a), self.b - 1.0),
        }
    }

    /// Whether `x` lies in the support. Zero is admitted only where both
    /// T(0) and a(0) are finite.
    pub fn in_support(&self, x: f64) -> bool {
        if !x.is_finite() || x < 0.0 {
            return false;
        }
        if x > 0.0 {
            return true;
        }
        match self.kind {
            ModelKind::StdLogNormal | ModelKind::InvGamma => false,
            _ => self.base_measure().1 >= 0.0,
        }
    }

    fn check_theta(theta: f64) -> Result<()> {
        if theta.is_finite() && theta > 0.0 {
            Ok(())
        } else {
            Err(Error::ThetaOutOfDomain(theta))
        }
    }

    fn check_x(&self, x: f64) -> Result<()> {
        if self.in_support(x) {
            Ok(())
        } else {
            Err(Error::OutsideSupport(x))
        }
    }

    /// g(x) = -T(x), assuming `x` is in the support.
    fn g(&self, x: f64) -> f64 {
        let a = self.shape;
        match self.kind {
            ModelKind::Exponential | ModelKind::Gamma => x,
            ModelKind::Weibull | ModelKind::GenGamma => x.powf(a),
            ModelKind::StdLogNormal => x.ln().powi(2),
            ModelKind::HalfNormal => x * x,
            ModelKind::GenHalfNormal => x.powf(2.0 * a),
            ModelKind::InvGamma => 1.0 / x,
        }
    }

    /// The sufficient-statistic transform T(x).
    pub fn t(&self, x: f64) -> Result<f64> {
        self.check_x(x)?;
        Ok(-self.g(x))
    }

    /// ln a(x).
    pub fn ln_base(&self, x: f64) -> Result<f64> {
        self.check_x(x)?;
        let (constant, coefficient) = self.base_measure();
        if coefficient == 0.0 {
            Ok(constant)
        } else {
            Ok(constant + coefficient * x.ln())
        }
    }

    pub fn eta(&self, theta: f64) -> f64 {
        let (c, q, _) = self.canonical();
        c * theta.powf(q)
    }

    pub fn eta_prime(&self, theta: f64) -> f64 {
        let (c, q, _) = self.canonical();
        c * q * theta.powf(q - 1.0)
    }

    pub fn eta_second(&self, theta: f64) -> f64 {
        let (c, q, _) = self.canonical();
        c * q * (q - 1.0) * theta.powf(q - 2.0)
    }

    /// The log-normalizer H(θ).
    pub fn log_normalizer(&self, theta: f64) -> f64 {
        -self.canonical().2 * theta.ln()
    }

    pub fn log_normalizer_prime(&self, theta: f64) -> f64 {
        -self.canonical().2 / theta
    }

    pub fn log_normalizer_second(&self, theta: f64) -> f64 {
        self.canonical().2 / (theta * theta)
    }

    pub fn ln_pdf(&self, theta: f64, x: f64) -> Result<f64> {
        Self::check_theta(theta)?;
        let ln_a = self.ln_base(x)?;
        Ok(ln_a - self.eta(theta) * self.g(x) - self.log_normalizer(theta))
    }

    pub fn pdf(&self, theta: f64, x: f64) -> Result<f64> {
        Ok(self.ln_pdf(theta, x)?.exp())
    }

    /// r(θ) = H'(θ)/η'(θ), which equals E_θ[T(x)].
    pub fn r_of_theta(&self, theta: f64) -> Result<f64> {
        Self::check_theta(theta)?;
        let (c, q, h) = self.canonical();
        Ok(-h / (c * q) * theta.powf(-q))
    }

    /// dr/dθ = η'(θ) Var_θ[T(x)].
    pub fn r_prime(&self, theta: f64) -> Result<f64> {
        Self::check_theta(theta)?;
        let (c, q, h) = self.canonical();
        Ok(h / c * theta.powf(-q - 1.0))
    }

    /// Var_θ[T(x)] = r'(θ)/η'(θ).
    pub fn variance_t(&self, theta: f64) -> Result<f64> {
        Ok(self.r_prime(theta)? / self.eta_prime(theta))
    }

    /// The unique θ with r(θ) = m. Every T is negative on the interior of the
    /// support, so only `m < 0` has a solution.
    pub fn r_inverse(&self, m: f64) -> Result<f64> {
        if !(m.is_finite() && m < 0.0) {
            return Err(Error::NoMle(m));
        }
        let (c, q, h) = self.canonical();
        let theta = (-h / (c * q * m)).powf(1.0 / q);
        if theta.is_finite() && theta > 0.0 {
            Ok(theta)
        } else {
            Err(Error::NoMle(m))
        }
    }

    /// Draws one value from f(·|θ). `theta` must be in the domain.
    pub fn sample<R: Rng + ?Sized>(&self, theta: f64, rng: &mut R) -> f64 {
        let a = self.shape;
        match self.kind {
            ModelKind::Exponential => {
                let e: f64 = Exp1.sample(rng);
                e / theta
            }
            ModelKind::Weibull => {
                let e: f64 = Exp1.sample(rng);
                e.powf(1.0 / a) / theta
            }
            ModelKind::StdLogNormal => {
                let z: f64 = StandardNormal.sample(rng);
                (z / theta).exp()
            }
            ModelKind::HalfNormal => {
                let z: f64 = StandardNormal.sample(rng);
                z.abs() / theta
            }
            ModelKind::GenHalfNormal => {
                let z: f64 = StandardNormal.sample(rng);
                z.abs().powf(1.0 / a) / theta
            }
            ModelKind::Gamma => unit_gamma(self.k, rng) / theta,
            ModelKind::InvGamma => theta / unit_gamma(self.k, rng),
            ModelKind::GenGamma => unit_gamma(self.b / a, rng).powf(1.0 / a) / theta,
        }
    }

    pub fn sample_n<R: Rng + ?Sized>(&self, theta: f64, n: usize, rng: &mut R) -> Vec<f64> {
        (0..n).map(|_| self.sample(theta, rng)).collect()
    }
}

fn unit_gamma<R: Rng + ?Sized>(shape: f64, rng: &mut R) -> f64 {
    Gamma::new(shape, 1.0)
        .expect("shape validated at construction")
        .sample(rng)
}

impl fmt::Display for FamilyModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            ModelKind::Weibull | ModelKind::GenHalfNormal => {
                write!(f, "{}(shape={})", self.name(), self.shape)
            }
            ModelKind::Gamma | ModelKind::InvGamma => write!(f, "{}(k={})", self.name(), self.k),
            ModelKind::GenGamma => write!(f, "{}(shape={}, b={})", self.name(), self.shape, self.b),
            _ => f.write_str(self.name()),
        }
    }
}

use std::path::PathBuf;

use thiserror::Error;

/// Errors produced anywhere in the crate.
#[derive(Debug, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("value {value} at index {index} is outside the admissible domain: {reason}")]
    BadValue {
        index: usize,
        value: f64,
        reason: &'static str,
    },

    #[error("no data left to estimate from")]
    EmptyData,

    #[error("unknown model `{0}`")]
    UnknownModel(String),

    #[error("invalid hyperparameter {name} = {value}: must be finite and positive")]
    InvalidHyper { name: &'static str, value: f64 },

    #[error("theta = {0} is outside the parameter domain (0, inf)")]
    ThetaOutOfDomain(f64),

    #[error("x = {0} is outside the model support")]
    OutsideSupport(f64),

    #[error("sufficient mean {0} is outside the range of r(theta); no maximum-likelihood estimate exists")]
    NoMle(f64),

    #[error("value {0} is outside the range of the transformation")]
    OutOfRange(f64),

    #[error("numeric maximizer found no interior maximum in [{lo}, {hi}]")]
    NoInteriorMaximum { lo: f64, hi: f64 },

    #[error("invalid histogram: {0}")]
    Histogram(String),

    #[error("invalid grid: {0}")]
    Grid(String),

    #[error("every grid point failed ({} points)", .0.len())]
    SweepFailed(Vec<(String, String)>),

    #[error("{path}:{line}: {msg}")]
    Parse {
        path: PathBuf,
        line: usize,
        msg: String,
    },

    #[error("unsupported image format: {0}")]
    ImageFormat(String),

    #[error("image is {width}x{height}, smaller than one 8x8 block")]
    ImageTooSmall { width: usize, height: usize },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

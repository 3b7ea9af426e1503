//! Weighted central tendencies and weighted maximum-likelihood estimation for
//! one-parameter exponential-family densities, with a histogram-fitting
//! harness for absolute DCT coefficient statistics.
//!
//! * [`means`]: Kolmogorov, Hölder and Lehmer means and their v-weights.
//! * [`expfam`]: the eight-model catalog and the `r(θ)` machinery.
//! * [`wmle`]: weighted likelihood, closed-form and numeric estimators, and
//!   the equivalent weighted least-squares problem.
//! * [`fitsearch`]: histogram fitting, MSE scoring, β/shape grid sweeps and
//!   kernel comparison.
//! * [`ingest`]: CSV/JSON/PGM I/O, 8×8 block DCT, histogram construction.
//! * [`cli`]: the `centrality` command-line front end.
//!
//! Runnable walkthroughs live in `examples/`.

pub mod cli;
pub mod error;
pub mod expfam;
pub mod fitsearch;
pub mod ingest;
pub mod means;
pub mod optim;
pub mod wmle;

pub use error::{Error, Result};

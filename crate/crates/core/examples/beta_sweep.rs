//! Grid search over β (and the Weibull shape) on a heavy-tailed histogram.
//!
//! cargo run --example beta_sweep

use centrality::expfam::FamilyModel;
use centrality::fitsearch::{
    fit_histogram, sweep_beta_trace, sweep_shape_beta, Histogram, SweepGrid,
};
use centrality::wmle::WeightKernel;
use rand::rngs::StdRng;
use rand::{RngExt, SeedableRng};

/// Mixture of exponentials, the usual shape of |DCT| coefficient histograms.
fn heavy_tailed(n: usize) -> centrality::Result<Histogram> {
    let mut rng = StdRng::seed_from_u64(21);
    let xs: Vec<f64> = (0..n)
        .map(|_| {
            let rate = [0.3, 2.0, 10.0][rng.random_range(0..3)];
            -(1.0 - rng.random::<f64>()).ln() / rate
        })
        .collect();
    Ok(centrality::ingest::build_histogram(&xs, 100, Some((0.0, 12.0)))?.histogram)
}

fn main() -> centrality::Result<()> {
    let hist = heavy_tailed(30_000)?;
    let model = FamilyModel::exponential();
    let unit = fit_histogram(&model, &hist, WeightKernel::Unit)?;
    let trace = sweep_beta_trace(&model, &hist, &SweepGrid::default_beta())?;

    println!("beta    mse");
    for p in trace.points.iter().step_by(8) {
        let mse = p.fit.as_ref().map_or(f64::NAN, |f| f.mse);
        println!("{:>5.2}   {mse:.4e}", p.beta.unwrap_or(0.0));
    }
    let best = &trace.best;
    println!(
        "\nunit kernel mse {:.4e}; best beta {:?} mse {:.4e} ({:.1}% lower)",
        unit.mse,
        best.beta,
        best.mse,
        100.0 * (unit.mse - best.mse) / unit.mse
    );

    let weibull = FamilyModel::weibull(1.0)?;
    let both = sweep_shape_beta(
        &weibull,
        &hist,
        &SweepGrid::new(0.3, 2.0, 0.1)?,
        &SweepGrid::new(-1.0, 1.0, 0.1)?,
    )?;
    println!(
        "weibull: best shape {:?}, beta {:?}, theta {:.4}, mse {:.4e}",
        both.alpha, both.beta, both.theta_hat, both.mse
    );
    Ok(())
}

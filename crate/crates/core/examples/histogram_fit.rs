//! Fits a sampled gamma histogram with each weight kernel and compares the
//! MSE between the empirical and fitted densities.
//!
//! cargo run --example histogram_fit

use centrality::expfam::FamilyModel;
use centrality::fitsearch::fit_histogram;
use centrality::ingest::build_histogram;
use centrality::wmle::WeightKernel;
use rand::rngs::StdRng;
use rand::SeedableRng;

fn main() -> centrality::Result<()> {
    let truth = FamilyModel::gamma(2.0)?;
    let xs = truth.sample_n(1.5, 50_000, &mut StdRng::seed_from_u64(3));
    let binned = build_histogram(&xs, 80, Some((0.0, 6.0)))?;
    println!(
        "{} draws, {} clipped into the last bin\n",
        xs.len(),
        binned.clipped
    );

    for model in [
        truth,
        FamilyModel::exponential(),
        FamilyModel::weibull(1.4)?,
    ] {
        for kernel in [
            WeightKernel::Unit,
            WeightKernel::Power(0.5),
            WeightKernel::LogShift,
        ] {
            let r = fit_histogram(&model, &binned.histogram, kernel)?;
            println!(
                "{:<20} {:<10} theta = {:.4}  mse = {:.3e}",
                model.to_string(),
                kernel.to_string(),
                r.theta_hat,
                r.mse
            );
        }
    }
    Ok(())
}

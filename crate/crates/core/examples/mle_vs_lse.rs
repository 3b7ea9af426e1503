//! The weighted MLE is the minimizer of Σ u (T(x) - r(θ))². Other choices of
//! the transform give other estimators of the same sufficient mean.
//!
//! cargo run --example mle_vs_lse

use centrality::expfam::FamilyModel;
use centrality::means::ValueSeries;
use centrality::wmle::{
    apply_kernel, lse_critical, lse_objective, mle_closed_form, sufficient_mean, FnTransform,
    MeanScale, WeightKernel,
};

fn main() -> centrality::Result<()> {
    let model = FamilyModel::gamma(2.0)?;
    let xs = ValueSeries::new(vec![0.4, 0.9, 1.3, 2.2, 2.8, 4.1, 6.5])?;
    let (data, _) = apply_kernel(&xs, WeightKernel::Power(-0.5), None)?;

    let mle = mle_closed_form(&model, &data)?;
    let lse = lse_critical(&model, &data, &model)?;
    println!("weighted MLE            θ = {:.12}", mle.theta_hat);
    println!("least squares in r(θ)   θ = {lse:.12}");
    println!(
        "sufficient mean           = {:.12}",
        sufficient_mean(&model, &data)?.value()
    );
    println!(
        "identity transform        = {:.12}",
        lse_critical(&model, &data, &MeanScale)?
    );

    // r(θ) = -k/θ; the transform -1/θ differs by the constant k
    let reciprocal = FnTransform {
        forward: |t: f64| -1.0 / t,
        inverse: |m: f64| (m < 0.0).then(|| -1.0 / m),
    };
    println!(
        "transform -1/θ          θ = {:.12}",
        lse_critical(&model, &data, &reciprocal)?
    );

    println!("\n  θ        least-squares objective");
    for f in [0.8, 0.9, 1.0, 1.1, 1.2] {
        let t = f * mle.theta_hat;
        println!("  {t:.4}   {:.6}", lse_objective(&model, &data, t, &model)?);
    }
    Ok(())
}

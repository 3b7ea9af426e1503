//! Hölder, Lehmer and Kolmogorov means of a small dataset, weighted and
//! unweighted, with the v-weights behind them.
//!
//! cargo run --example means_tour

use centrality::means::{
    holder_lehmer_link, holder_mean, kolmogorov_mean, lehmer_mean, v_weights, Exponent, MeanFamily,
    ValueSeries, WeightVector,
};

fn main() -> centrality::Result<()> {
    let xs = ValueSeries::new(vec![0.6, 1.1, 2.0, 3.5, 8.0])?;
    let freq = WeightVector::new(vec![4.0, 1.0, 1.0, 1.0, 3.0])?;

    println!(
        "{:>6} {:>10} {:>10} {:>12} {:>12}",
        "alpha", "holder", "lehmer", "holder(w)", "lehmer(w)"
    );
    for a in [
        f64::NEG_INFINITY,
        -2.0,
        -1.0,
        0.0,
        0.5,
        1.0,
        2.0,
        f64::INFINITY,
    ] {
        let e = Exponent::new(a)?;
        println!(
            "{:>6} {:>10.5} {:>10.5} {:>12.5} {:>12.5}",
            e.to_string(),
            holder_mean(&xs, e, None)?,
            lehmer_mean(&xs, e, None)?,
            holder_mean(&xs, e, Some(&freq))?,
            lehmer_mean(&xs, e, Some(&freq))?,
        );
    }

    // the log-exp mean: f(x) = exp(x)
    let log_exp = kolmogorov_mean(&xs, f64::exp, f64::ln)?;
    println!("\nkolmogorov mean with f = exp: {log_exp:.5}");

    let alpha = Exponent::new(2.0)?;
    let v = v_weights(&xs, alpha, MeanFamily::Lehmer, None)?;
    println!("\nLehmer v-weights at alpha = 2 (large values dominate):");
    for (x, w) in xs.as_slice().iter().zip(&v) {
        println!("  x = {x:<4} v = {w:.4}");
    }
    let (left, right) = holder_lehmer_link(&xs, alpha)?;
    println!("(sum v x)^(1/2) = {left:.12}, L_2^(1/2) = {right:.12}");
    Ok(())
}

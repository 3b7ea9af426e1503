//! H_α, L_α and the v-weights of the two-point set {0.6, 2} across α, written
//! as CSV for plotting. Equivalent to `centrality curves --pair 0.6,2`.
//!
//! cargo run --example mean_curves > curves.csv

use centrality::fitsearch::SweepGrid;
use centrality::means::{holder_mean, lehmer_mean, v_weights, Exponent, MeanFamily, ValueSeries};

fn main() -> centrality::Result<()> {
    let xs = ValueSeries::new(vec![0.6, 2.0])?;
    let geometric = (0.6f64 * 2.0).sqrt();
    println!("alpha,holder,lehmer,arithmetic,v_h(0.6),v_l(0.6),v_h(2),v_l(2)");
    for a in SweepGrid::new(-5.0, 5.0, 0.1)?.points() {
        let e = Exponent::new(a)?;
        let vh = v_weights(&xs, e, MeanFamily::Holder, None)?;
        let vl = v_weights(&xs, e, MeanFamily::Lehmer, None)?;
        println!(
            "{a:.1},{},{},1.3,{},{},{},{}",
            holder_mean(&xs, e, None)?,
            lehmer_mean(&xs, e, None)?,
            vh[0],
            vl[0],
            vh[1],
            vl[1]
        );
    }
    eprintln!("H_0 = L_0.5 = {geometric:.5} for this pair; H_1 = L_1 = 1.3");
    Ok(())
}

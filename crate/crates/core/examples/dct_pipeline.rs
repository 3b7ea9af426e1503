//! End to end: synthetic grayscale images → PGM files → absolute block DCT
//! coefficients → histograms → per-kernel win percentages.
//!
//! cargo run --release --example dct_pipeline

use centrality::expfam::FamilyModel;
use centrality::fitsearch::{compare_kernels, CompareConfig, SweepGrid};
use centrality::ingest::{block_dct8, build_histogram, load_pgm, save_pgm, GrayImage};
use rand::rngs::StdRng;
use rand::{RngExt, SeedableRng};

/// Smooth gradients plus a few hard edges and mild noise.
fn synthetic_image(seed: u64, width: usize, height: usize) -> centrality::Result<GrayImage> {
    let mut rng = StdRng::seed_from_u64(seed);
    let (fx, fy) = (rng.random_range(0.01..0.08), rng.random_range(0.01..0.08));
    let edge = rng.random_range(width / 4..3 * width / 4);
    let pixels = (0..width * height)
        .map(|i| {
            let (x, y) = ((i % width) as f64, (i / width) as f64);
            let mut v = 128.0 + 60.0 * (fx * x).sin() * (fy * y).cos();
            if i % width > edge {
                v -= 50.0;
            }
            v += rng.random_range(-6.0..6.0);
            v.clamp(0.0, 255.0) as u8
        })
        .collect();
    GrayImage::new(width, height, pixels)
}

fn main() -> centrality::Result<()> {
    let dir = std::env::temp_dir().join("centrality-dct-pipeline");
    std::fs::create_dir_all(&dir)?;

    let mut hists = Vec::new();
    for seed in 0..8 {
        let path = dir.join(format!("img{seed}.pgm"));
        save_pgm(&synthetic_image(seed, 128, 96)?, &path)?;
        let img = load_pgm(&path)?;
        let coeffs = block_dct8(&img, true)?;
        let binned = build_histogram(&coeffs.values, 100, Some((0.0, 200.0)))?;
        println!(
            "{}: {} blocks, {} coefficients, {} clipped",
            path.display(),
            coeffs.blocks,
            coeffs.values.len(),
            binned.clipped
        );
        hists.push(binned.histogram);
    }

    let models = [
        FamilyModel::exponential(),
        FamilyModel::weibull(1.0)?,
        FamilyModel::gamma(0.5)?,
        FamilyModel::gen_half_normal(1.0)?,
    ];
    let config = CompareConfig {
        beta_grid: SweepGrid::new(-1.0, 1.0, 0.1)?,
        shape_grid: Some(SweepGrid::new(0.3, 2.0, 0.1)?),
        tie_epsilon: 1e-3,
    };
    let table = compare_kernels(&models, &hists, &config)?;
    println!(
        "\n{:<24} {:>6} {:>7} {:>7} {:>7} {:>12}",
        "model", "hists", "unit%", "power%", "log1p%", "improvement"
    );
    for r in &table.rows {
        println!(
            "{:<24} {:>6} {:>7.1} {:>7.1} {:>7.1} {:>12.3}",
            r.model, r.histograms, r.unit_pct, r.power_pct, r.log1p_pct, r.mean_improvement
        );
    }
    Ok(())
}

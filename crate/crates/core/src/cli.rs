//! The `centrality` command line.
//!
//! ```text
//! centrality mean     --family holder|lehmer|kolmogorov (--alpha A | --alpha-grid lo:hi:step) --input values.csv [--weights]
//! centrality fit      --model M --kernel unit|power:B|log1p --input hist.csv [--shape A] [--k K] [--b B] [--out report.json]
//! centrality sweep    --model M --input hist.csv [--beta lo:hi:step] [--shape-grid lo:hi:step] [--sidecar path] [--out report.json]
//! centrality dct-hist --input img.pgm [--bins N] [--range lo:hi] [--exclude-dc] [--out hist.csv]
//! centrality compare  --models m1,m2 --inputs dir [--beta lo:hi:step] [--tie-eps E] [--shape-grid lo:hi:step]
//! centrality curves   --pair x1,x2 [--alpha-grid lo:hi:step]
//! ```
//!
//! Exit codes: 0 on success, 1 when the computation fails, 2 on a usage error.

use std::ffi::OsString;
use std::fmt::Display;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::error::Error;
use crate::expfam::{FamilyModel, Hyper, ModelKind};
use crate::fitsearch::{
    compare_kernels, fit_histogram, sweep_beta_trace, sweep_shape_beta_trace, CompareConfig,
    FitReport, Histogram, SweepGrid,
};
use crate::ingest::{
    block_dct8, build_histogram, histogram_files, load_histogram_csv, load_pgm, load_values_csv,
    write_histogram_csv,
};
use crate::means::{
    holder_mean, kolmogorov_mean, lehmer_mean, v_weights, Exponent, MeanFamily, ValueSeries,
};
use crate::wmle::WeightKernel;

#[derive(Debug, Parser)]
#[command(
    name = "centrality",
    version,
    about = "Weighted means and weighted exponential-family fitting"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Hölder, Lehmer or Kolmogorov mean of a values file.
    Mean(MeanArgs),
    /// Fit one model and kernel to a histogram.
    Fit(FitArgs),
    /// Grid search over β (and optionally the shape) for one histogram.
    Sweep(SweepArgs),
    /// Histogram of absolute 8×8 block DCT coefficients of a PGM image.
    DctHist(DctHistArgs),
    /// Per-kernel win percentages over a directory of histograms.
    Compare(CompareArgs),
    /// H, L and v-weights of a two-point dataset across α.
    Curves(CurvesArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum MeanKind {
    Holder,
    Lehmer,
    Kolmogorov,
}

#[derive(Debug, Args)]
#[command(group(clap::ArgGroup::new("exponent").required(true).args(["alpha", "alpha_grid"])))]
pub struct MeanArgs {
    #[arg(long, value_enum)]
    pub family: MeanKind,
    /// Exponent; `inf` and `-inf` select max and min.
    #[arg(long, allow_hyphen_values = true)]
    pub alpha: Option<Exponent>,
    #[arg(long, allow_hyphen_values = true)]
    pub alpha_grid: Option<SweepGrid>,
    #[arg(long)]
    pub input: PathBuf,
    /// Use the second column of the input as w-weights.
    #[arg(long)]
    pub weights: bool,
}

#[derive(Debug, Args)]
pub struct HyperArgs {
    /// Shape α for weibull, gen-half-normal and gen-gamma.
    #[arg(long, allow_hyphen_values = true)]
    pub shape: Option<f64>,
    /// k for gamma and inv-gamma.
    #[arg(long, allow_hyphen_values = true, default_value_t = 1.0)]
    pub k: f64,
    /// b for gen-gamma.
    #[arg(long, allow_hyphen_values = true, default_value_t = 1.0)]
    pub b: f64,
}

#[derive(Debug, Args)]
pub struct FitArgs {
    #[arg(long)]
    pub model: ModelKind,
    #[arg(long, default_value = "unit")]
    pub kernel: WeightKernel,
    #[arg(long)]
    pub input: PathBuf,
    #[command(flatten)]
    pub hyper: HyperArgs,
    /// Report path; stdout when omitted.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    #[arg(long)]
    pub model: ModelKind,
    #[arg(long, allow_hyphen_values = true, default_value_t = SweepGrid::default_beta())]
    pub beta: SweepGrid,
    #[arg(long, allow_hyphen_values = true)]
    pub shape_grid: Option<SweepGrid>,
    #[arg(long)]
    pub input: PathBuf,
    #[command(flatten)]
    pub hyper: HyperArgs,
    /// Per-point MSE table; defaults to `<input>.sweep.csv`.
    #[arg(long)]
    pub sidecar: Option<PathBuf>,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct DctHistArgs {
    #[arg(long)]
    pub input: PathBuf,
    #[arg(long, default_value_t = 100)]
    pub bins: usize,
    /// Binning range `lo:hi`; `[0, max]` when omitted.
    #[arg(long, allow_hyphen_values = true, value_parser = parse_range)]
    pub range: Option<(f64, f64)>,
    #[arg(long)]
    pub exclude_dc: bool,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct CompareArgs {
    #[arg(long, value_delimiter = ',', required = true)]
    pub models: Vec<ModelKind>,
    /// Directory of histogram CSV files.
    #[arg(long)]
    pub inputs: PathBuf,
    #[arg(long, allow_hyphen_values = true, default_value_t = SweepGrid::default_beta())]
    pub beta: SweepGrid,
    #[arg(long, allow_hyphen_values = true, default_value_t = 1e-3)]
    pub tie_eps: f64,
    /// Shape grid for shape families; a single value fixes the shape.
    #[arg(long, allow_hyphen_values = true, default_value_t = SweepGrid::default_shape())]
    pub shape_grid: SweepGrid,
    #[arg(long, allow_hyphen_values = true, default_value_t = 1.0)]
    pub k: f64,
    #[arg(long, allow_hyphen_values = true, default_value_t = 1.0)]
    pub b: f64,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct CurvesArgs {
    #[arg(long, value_parser = parse_pair)]
    pub pair: (f64, f64),
    #[arg(long, allow_hyphen_values = true, default_value = "-5:5:0.1")]
    pub alpha_grid: SweepGrid,
}

fn parse_two(s: &str, sep: char) -> Result<(f64, f64), String> {
    let (a, b) = s
        .split_once(sep)
        .ok_or_else(|| format!("expected two numbers separated by `{sep}`"))?;
    let num = |t: &str| t.trim().parse::<f64>().map_err(|e| format!("`{t}`: {e}"));
    Ok((num(a)?, num(b)?))
}

fn parse_range(s: &str) -> Result<(f64, f64), String> {
    parse_two(s, ':')
}

fn parse_pair(s: &str) -> Result<(f64, f64), String> {
    parse_two(s, ',')
}

enum Failure {
    Usage(String),
    Compute(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Compute(e)
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Compute(e.into())
    }
}

type CliResult = Result<(), Failure>;

/// Parses `args` (including the program name) and runs the command, writing
/// results to `out` and diagnostics to `err`. Returns the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let rendered = e.render().to_string();
            let sink: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = sink.write_all(rendered.as_bytes());
            return code;
        }
    };
    match execute(cli.command, out, err) {
        Ok(()) => 0,
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            2
        }
        Err(Failure::Compute(e)) => {
            let _ = writeln!(err, "error: {e}");
            1
        }
    }
}

fn execute(command: Command, out: &mut dyn Write, err: &mut dyn Write) -> CliResult {
    match command {
        Command::Mean(a) => cmd_mean(a, out),
        Command::Fit(a) => cmd_fit(a, out),
        Command::Sweep(a) => cmd_sweep(a, out),
        Command::DctHist(a) => cmd_dct_hist(a, out, err),
        Command::Compare(a) => cmd_compare(a, out),
        Command::Curves(a) => cmd_curves(a, out),
    }
}

/// Writes to `path` when given, otherwise to `out`.
fn emit(path: Option<&Path>, out: &mut dyn Write, bytes: &[u8]) -> CliResult {
    match path {
        Some(p) => fs::write(p, bytes)?,
        None => out.write_all(bytes)?,
    }
    Ok(())
}

fn report_bytes(report: &FitReport) -> Result<Vec<u8>, Failure> {
    let mut text = serde_json::to_string_pretty(report).map_err(Error::from)?;
    text.push('\n');
    Ok(text.into_bytes())
}

fn csv_field(value: impl Display) -> String {
    let s = value.to_string();
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s
    }
}

fn mean_at(
    family: MeanKind,
    xs: &ValueSeries,
    weights: Option<&crate::means::WeightVector>,
    alpha: Exponent,
) -> crate::Result<f64> {
    match family {
        MeanKind::Holder => holder_mean(xs, alpha, weights),
        MeanKind::Lehmer => lehmer_mean(xs, alpha, weights),
        MeanKind::Kolmogorov => {
            if weights.is_some() {
                return Err(Error::Domain("the kolmogorov mean takes no weights".into()));
            }
            match alpha {
                Exponent::Finite(0.0) => kolmogorov_mean(xs, f64::ln, f64::exp),
                Exponent::Finite(a) => kolmogorov_mean(xs, |x| x.powf(a), |y| y.powf(1.0 / a)),
                _ => Err(Error::Domain(
                    "the kolmogorov generator x^A needs a finite A".into(),
                )),
            }
        }
    }
}

fn cmd_mean(a: MeanArgs, out: &mut dyn Write) -> CliResult {
    let (xs, weights) = load_values_csv(&a.input)?.into_parts()?;
    let weights = match (a.weights, weights) {
        (true, None) => {
            return Err(Failure::Compute(Error::Domain(format!(
                "--weights given but {} has no weight column",
                a.input.display()
            ))))
        }
        (true, w) => w,
        (false, _) => None,
    };
    if let Some(alpha) = a.alpha {
        writeln!(out, "{}", mean_at(a.family, &xs, weights.as_ref(), alpha)?)?;
    } else if let Some(grid) = a.alpha_grid {
        let mut text = String::from("alpha,mean\n");
        for alpha in grid.points() {
            let m = mean_at(a.family, &xs, weights.as_ref(), Exponent::new(alpha)?)?;
            text.push_str(&format!("{alpha},{m}\n"));
        }
        out.write_all(text.as_bytes())?;
    }
    Ok(())
}

fn build_model(kind: ModelKind, h: &HyperArgs) -> Result<FamilyModel, Failure> {
    if h.shape.is_some() && !kind.has_shape() {
        return Err(Failure::Usage(format!(
            "model {kind} has no shape parameter"
        )));
    }
    let hyper = Hyper {
        shape: h.shape.unwrap_or(1.0),
        k: h.k,
        b: h.b,
    };
    Ok(FamilyModel::new(kind, &hyper)?)
}

fn cmd_fit(a: FitArgs, out: &mut dyn Write) -> CliResult {
    let model = build_model(a.model, &a.hyper)?;
    let hist = load_histogram_csv(&a.input)?;
    let report = fit_histogram(&model, &hist, a.kernel)?;
    emit(a.out.as_deref(), out, &report_bytes(&report)?)
}

fn default_sidecar(input: &Path) -> PathBuf {
    let mut name = input.as_os_str().to_owned();
    name.push(".sweep.csv");
    PathBuf::from(name)
}

fn cmd_sweep(a: SweepArgs, out: &mut dyn Write) -> CliResult {
    let model = build_model(a.model, &a.hyper)?;
    let hist: Histogram = load_histogram_csv(&a.input)?;
    let trace = match a.shape_grid {
        Some(_) if !model.kind().has_shape() => {
            return Err(Failure::Usage(format!(
                "model {} has no shape parameter",
                a.model
            )))
        }
        Some(shapes) => sweep_shape_beta_trace(&model, &hist, &shapes, &a.beta)?,
        None => sweep_beta_trace(&model, &hist, &a.beta)?,
    };
    let with_alpha = a.shape_grid.is_some();
    let mut table = String::from(if with_alpha {
        "beta,alpha,mse\n"
    } else {
        "beta,mse\n"
    });
    for p in &trace.points {
        let beta = p.beta.unwrap_or(0.0);
        let mse = p.fit.as_ref().map_or(f64::NAN, |f| f.mse);
        if with_alpha {
            let alpha = p.alpha.unwrap_or(f64::NAN);
            table.push_str(&format!("{beta},{alpha},{mse}\n"));
        } else {
            table.push_str(&format!("{beta},{mse}\n"));
        }
    }
    let sidecar = a.sidecar.unwrap_or_else(|| default_sidecar(&a.input));
    fs::write(&sidecar, table)?;
    emit(a.out.as_deref(), out, &report_bytes(&trace.best)?)
}

fn cmd_dct_hist(a: DctHistArgs, out: &mut dyn Write, err: &mut dyn Write) -> CliResult {
    let img = load_pgm(&a.input)?;
    let coeffs = block_dct8(&img, a.exclude_dc)?;
    let binned = build_histogram(&coeffs.values, a.bins, a.range)?;
    if binned.clipped > 0 {
        writeln!(
            err,
            "note: {} coefficients outside the range were clipped into the end bins",
            binned.clipped
        )?;
    }
    let mut buf = Vec::new();
    write_histogram_csv(&binned.histogram, &mut buf)?;
    emit(a.out.as_deref(), out, &buf)
}

fn cmd_compare(a: CompareArgs, out: &mut dyn Write) -> CliResult {
    let hyper = Hyper {
        shape: 1.0,
        k: a.k,
        b: a.b,
    };
    let models = a
        .models
        .iter()
        .map(|&kind| FamilyModel::new(kind, &hyper))
        .collect::<crate::Result<Vec<_>>>()?;
    let files = histogram_files(&a.inputs)?;
    if files.is_empty() {
        return Err(Failure::Compute(Error::Domain(format!(
            "no .csv histograms in {}",
            a.inputs.display()
        ))));
    }
    let hists = files
        .iter()
        .map(load_histogram_csv)
        .collect::<crate::Result<Vec<_>>>()?;
    let config = CompareConfig {
        beta_grid: a.beta,
        shape_grid: Some(a.shape_grid),
        tie_epsilon: a.tie_eps,
    };
    let table = compare_kernels(&models, &hists, &config)?;
    let mut text =
        String::from("model,histograms,failed,unit_pct,power_pct,log1p_pct,mean_improvement\n");
    for r in &table.rows {
        text.push_str(&format!(
            "{},{},{},{},{},{},{}\n",
            csv_field(&r.model),
            r.histograms,
            r.failed,
            r.unit_pct,
            r.power_pct,
            r.log1p_pct,
            r.mean_improvement
        ));
    }
    emit(a.out.as_deref(), out, text.as_bytes())
}

fn cmd_curves(a: CurvesArgs, out: &mut dyn Write) -> CliResult {
    let (x1, x2) = a.pair;
    let xs = ValueSeries::new(vec![x1, x2])?;
    let mut text = format!("alpha,H,L,v_h({x1}),v_l({x1}),v_h({x2}),v_l({x2})\n");
    for alpha in a.alpha_grid.points() {
        let e = Exponent::new(alpha)?;
        let h = holder_mean(&xs, e, None)?;
        let l = lehmer_mean(&xs, e, None)?;
        let vh = v_weights(&xs, e, MeanFamily::Holder, None)?;
        let vl = v_weights(&xs, e, MeanFamily::Lehmer, None)?;
        text.push_str(&format!(
            "{alpha},{h},{l},{},{},{},{}\n",
            vh[0], vl[0], vh[1], vl[1]
        ));
    }
    out.write_all(text.as_bytes())?;
    Ok(())
}

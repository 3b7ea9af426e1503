//! Reading and writing the on-disk formats, and turning grayscale images into
//! histograms of absolute 8×8 block DCT coefficients.
//!
//! Formats (all text formats have no header):
//!
//! * values CSV: `value` or `value,weight` per line, one form per file;
//! * histogram CSV: `bin_left,bin_right,count` per line, bins contiguous;
//! * report JSON: a flat [`FitReport`] object;
//! * images: binary PGM (`P5`) with `maxval ≤ 255`.

use std::f64::consts::PI;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::sync::OnceLock;

use crate::error::{Error, Result};
use crate::fitsearch::{FitReport, Histogram};
use crate::means::{ValueSeries, WeightVector};
use crate::wmle::WeightedSeries;

/// Contents of a values CSV.
#[derive(Debug, Clone, PartialEq)]
pub enum LoadedValues {
    Values(ValueSeries),
    Weighted(WeightedSeries),
}

impl LoadedValues {
    /// Splits into values and optional w-weights.
    pub fn into_parts(self) -> Result<(ValueSeries, Option<WeightVector>)> {
        match self {
            LoadedValues::Values(v) => Ok((v, None)),
            LoadedValues::Weighted(w) => Ok((
                ValueSeries::new(w.values().to_vec())?,
                Some(WeightVector::new(w.weights().to_vec())?),
            )),
        }
    }

    /// Weighted form, with weight one where the file had none.
    pub fn into_weighted(self) -> WeightedSeries {
        match self {
            LoadedValues::Values(v) => WeightedSeries::unweighted(&v),
            LoadedValues::Weighted(w) => w,
        }
    }
}

fn parse_error(path: &Path, line: usize, msg: impl Into<String>) -> Error {
    Error::Parse {
        path: path.to_path_buf(),
        line,
        msg: msg.into(),
    }
}

fn parse_field(path: &Path, line: usize, field: &str) -> Result<f64> {
    let v: f64 = field
        .trim()
        .parse()
        .map_err(|_| parse_error(path, line, format!("`{}` is not a number", field.trim())))?;
    if !v.is_finite() {
        return Err(parse_error(
            path,
            line,
            format!("`{}` is not finite", field.trim()),
        ));
    }
    Ok(v)
}

/// Non-blank lines with their 1-based line numbers.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty())
}

pub fn parse_values_csv(text: &str, path: &Path) -> Result<LoadedValues> {
    let mut values = Vec::new();
    let mut weights = Vec::new();
    let mut weighted: Option<bool> = None;
    for (line, content) in content_lines(text) {
        let fields: Vec<&str> = content.split(',').collect();
        let has_weight = match fields.len() {
            1 => false,
            2 => true,
            n => {
                return Err(parse_error(
                    path,
                    line,
                    format!("expected 1 or 2 fields, found {n}"),
                ))
            }
        };
        match weighted {
            None => weighted = Some(has_weight),
            Some(w) if w != has_weight => {
                return Err(parse_error(
                    path,
                    line,
                    "mixes `value` and `value,weight` lines",
                ));
            }
            _ => {}
        }
        let value = parse_field(path, line, fields[0])?;
        if value < 0.0 {
            return Err(parse_error(path, line, format!("negative value {value}")));
        }
        values.push(value);
        if has_weight {
            let w = parse_field(path, line, fields[1])?;
            if w <= 0.0 {
                return Err(parse_error(
                    path,
                    line,
                    format!("weight {w} is not positive"),
                ));
            }
            weights.push(w);
        }
    }
    if values.is_empty() {
        return Err(parse_error(path, 0, "no values"));
    }
    if weighted == Some(true) {
        Ok(LoadedValues::Weighted(WeightedSeries::new(
            values.into_iter().zip(weights).collect(),
        )?))
    } else {
        Ok(LoadedValues::Values(ValueSeries::new(values)?))
    }
}

pub fn load_values_csv(path: impl AsRef<Path>) -> Result<LoadedValues> {
    let path = path.as_ref();
    parse_values_csv(&fs::read_to_string(path)?, path)
}

pub fn parse_histogram_csv(text: &str, path: &Path) -> Result<Histogram> {
    let mut edges: Vec<f64> = Vec::new();
    let mut counts = Vec::new();
    for (line, content) in content_lines(text) {
        let fields: Vec<&str> = content.split(',').collect();
        if fields.len() != 3 {
            return Err(parse_error(
                path,
                line,
                format!(
                    "expected bin_left,bin_right,count, found {} fields",
                    fields.len()
                ),
            ));
        }
        let left = parse_field(path, line, fields[0])?;
        let right = parse_field(path, line, fields[1])?;
        let count = parse_field(path, line, fields[2])?;
        if right <= left {
            return Err(parse_error(
                path,
                line,
                format!("bin [{left}, {right}] is empty or reversed"),
            ));
        }
        if count < 0.0 {
            return Err(parse_error(path, line, format!("negative count {count}")));
        }
        match edges.last() {
            None => edges.push(left),
            Some(&prev) if prev != left => {
                return Err(parse_error(
                    path,
                    line,
                    format!("bin starts at {left} but the previous bin ended at {prev}"),
                ));
            }
            _ => {}
        }
        edges.push(right);
        counts.push(count);
    }
    if counts.is_empty() {
        return Err(parse_error(path, 0, "no bins"));
    }
    Histogram::new(edges, counts)
}

pub fn load_histogram_csv(path: impl AsRef<Path>) -> Result<Histogram> {
    let path = path.as_ref();
    parse_histogram_csv(&fs::read_to_string(path)?, path)
}

pub fn write_histogram_csv<W: Write>(hist: &Histogram, mut out: W) -> Result<()> {
    let edges = hist.edges();
    for (b, count) in hist.counts().iter().enumerate() {
        writeln!(out, "{},{},{}", edges[b], edges[b + 1], count)?;
    }
    Ok(())
}

pub fn save_histogram_csv(hist: &Histogram, path: impl AsRef<Path>) -> Result<()> {
    let mut buf = Vec::new();
    write_histogram_csv(hist, &mut buf)?;
    fs::write(path, buf)?;
    Ok(())
}

pub fn save_report_json(report: &FitReport, path: impl AsRef<Path>) -> Result<()> {
    let mut text = serde_json::to_string_pretty(report)?;
    text.push('\n');
    fs::write(path, text)?;
    Ok(())
}

pub fn load_report_json(path: impl AsRef<Path>) -> Result<FitReport> {
    Ok(serde_json::from_str(&fs::read_to_string(path)?)?)
}

/// An 8-bit grayscale image, row-major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GrayImage {
    width: usize,
    height: usize,
    pixels: Vec<u8>,
}

impl GrayImage {
    pub fn new(width: usize, height: usize, pixels: Vec<u8>) -> Result<Self> {
        if width == 0 || height == 0 || width.checked_mul(height) != Some(pixels.len()) {
            return Err(Error::ImageFormat(format!(
                "{width}x{height} image with {} pixels",
                pixels.len()
            )));
        }
        Ok(Self {
            width,
            height,
            pixels,
        })
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn pixels(&self) -> &[u8] {
        &self.pixels
    }

    pub fn get(&self, x: usize, y: usize) -> u8 {
        self.pixels[y * self.width + x]
    }
}

/// Reads the next whitespace-delimited header token, skipping `#` comments.
fn header_token<'a>(bytes: &'a [u8], pos: &mut usize) -> Option<&'a [u8]> {
    loop {
        while *pos < bytes.len() && bytes[*pos].is_ascii_whitespace() {
            *pos += 1;
        }
        if *pos < bytes.len() && bytes[*pos] == b'#' {
            while *pos < bytes.len() && bytes[*pos] != b'\n' {
                *pos += 1;
            }
            continue;
        }
        break;
    }
    let start = *pos;
    while *pos < bytes.len() && !bytes[*pos].is_ascii_whitespace() && bytes[*pos] != b'#' {
        *pos += 1;
    }
    (start < *pos).then(|| &bytes[start..*pos])
}

fn header_number(bytes: &[u8], pos: &mut usize, what: &str) -> Result<usize> {
    header_token(bytes, pos)
        .and_then(|t| std::str::from_utf8(t).ok())
        .and_then(|t| t.parse().ok())
        .ok_or_else(|| Error::ImageFormat(format!("missing or malformed {what} in PGM header")))
}

pub fn parse_pgm(bytes: &[u8]) -> Result<GrayImage> {
    match bytes.get(..2) {
        Some(b"P5") => {}
        Some(b"P2") => {
            return Err(Error::ImageFormat(
                "ASCII PGM (P2) is not supported; use binary P5".into(),
            ))
        }
        Some(m) => {
            return Err(Error::ImageFormat(format!(
                "bad magic {:?}, expected P5",
                String::from_utf8_lossy(m)
            )))
        }
        None => return Err(Error::ImageFormat("file too short for a PGM header".into())),
    }
    let mut pos = 2;
    let width = header_number(bytes, &mut pos, "width")?;
    let height = header_number(bytes, &mut pos, "height")?;
    let maxval = header_number(bytes, &mut pos, "maxval")?;
    if maxval == 0 || maxval > 255 {
        return Err(Error::ImageFormat(format!(
            "maxval {maxval} is not in 1..=255"
        )));
    }
    // exactly one whitespace byte separates the header from the raster
    match bytes.get(pos) {
        Some(b) if b.is_ascii_whitespace() => pos += 1,
        _ => return Err(Error::ImageFormat("truncated PGM header".into())),
    }
    let n = width
        .checked_mul(height)
        .ok_or_else(|| Error::ImageFormat("image dimensions overflow".into()))?;
    let raster = bytes.get(pos..pos + n).ok_or_else(|| {
        Error::ImageFormat(format!(
            "truncated pixel data: expected {n} bytes, found {}",
            bytes.len().saturating_sub(pos)
        ))
    })?;
    GrayImage::new(width, height, raster.to_vec())
}

pub fn load_pgm(path: impl AsRef<Path>) -> Result<GrayImage> {
    parse_pgm(&fs::read(path)?)
}

pub fn encode_pgm(img: &GrayImage) -> Vec<u8> {
    let mut out = format!("P5\n{} {}\n255\n", img.width, img.height).into_bytes();
    out.extend_from_slice(&img.pixels);
    out
}

pub fn save_pgm(img: &GrayImage, path: impl AsRef<Path>) -> Result<()> {
    fs::write(path, encode_pgm(img))?;
    Ok(())
}

/// `basis[u][x] = C_u cos((2x+1)uπ/16)` with `C_0 = 1/√8`, `C_u = 1/2`.
fn dct_basis() -> &'static [[f64; 8]; 8] {
    static BASIS: OnceLock<[[f64; 8]; 8]> = OnceLock::new();
    BASIS.get_or_init(|| {
        let mut m = [[0.0; 8]; 8];
        for (u, row) in m.iter_mut().enumerate() {
            let c = if u == 0 { (1.0f64 / 8.0).sqrt() } else { 0.5 };
            for (x, v) in row.iter_mut().enumerate() {
                *v = c * ((2 * x + 1) as f64 * u as f64 * PI / 16.0).cos();
            }
        }
        m
    })
}

/// Orthonormal 2-D DCT-II of a row-major 8×8 block. Output index is
/// `8·u + v` with `u` the vertical and `v` the horizontal frequency.
///
/// The block mean is removed before the AC terms are computed and the DC
/// term is `Σp / 8` directly, so a constant block has exactly zero AC terms.
pub fn dct8x8(block: &[f64; 64]) -> [f64; 64] {
    let basis = dct_basis();
    let sum: f64 = block.iter().sum();
    let mean = sum / 64.0;
    let mut tmp = [0.0; 64];
    for u in 0..8 {
        for x in 0..8 {
            tmp[8 * u + x] = (0..8)
                .map(|y| basis[u][y] * (block[8 * y + x] - mean))
                .sum();
        }
    }
    let mut out = [0.0; 64];
    for u in 0..8 {
        for v in 0..8 {
            out[8 * u + v] = (0..8).map(|x| tmp[8 * u + x] * basis[v][x]).sum();
        }
    }
    out[0] = sum / 8.0;
    out
}

/// Inverse of [`dct8x8`].
pub fn idct8x8(coeffs: &[f64; 64]) -> [f64; 64] {
    let basis = dct_basis();
    let mut tmp = [0.0; 64];
    for y in 0..8 {
        for v in 0..8 {
            tmp[8 * y + v] = (0..8).map(|u| basis[u][y] * coeffs[8 * u + v]).sum();
        }
    }
    let mut out = [0.0; 64];
    for y in 0..8 {
        for x in 0..8 {
            out[8 * y + x] = (0..8).map(|v| tmp[8 * y + v] * basis[v][x]).sum();
        }
    }
    out
}

/// Absolute DCT coefficients of an image.
#[derive(Debug, Clone, PartialEq)]
pub struct CoefficientSet {
    pub values: Vec<f64>,
    pub dc_excluded: bool,
    pub blocks: usize,
}

/// `|F(u,v)|` for every full 8×8 block in raster order, each block's
/// coefficients in `(u,v)` raster order. Partial blocks at the right and
/// bottom edges are cropped.
pub fn block_dct8(img: &GrayImage, exclude_dc: bool) -> Result<CoefficientSet> {
    let (bw, bh) = (img.width / 8, img.height / 8);
    if bw == 0 || bh == 0 {
        return Err(Error::ImageTooSmall {
            width: img.width,
            height: img.height,
        });
    }
    let per_block = if exclude_dc { 63 } else { 64 };
    let mut values = Vec::with_capacity(bw * bh * per_block);
    let mut block = [0.0; 64];
    for by in 0..bh {
        for bx in 0..bw {
            for y in 0..8 {
                for x in 0..8 {
                    block[8 * y + x] = f64::from(img.get(8 * bx + x, 8 * by + y));
                }
            }
            let coeffs = dct8x8(&block);
            let start = usize::from(exclude_dc);
            values.extend(coeffs[start..].iter().map(|c| c.abs()));
        }
    }
    Ok(CoefficientSet {
        values,
        dc_excluded: exclude_dc,
        blocks: bw * bh,
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct BinnedHistogram {
    pub histogram: Histogram,
    /// Values outside the range, counted into the end bins.
    pub clipped: usize,
}

/// Equal-width histogram over `range`, or `[min(0, min value), max value]`
/// when no range is given (widened to unit length if degenerate).
pub fn build_histogram(
    values: &[f64],
    bins: usize,
    range: Option<(f64, f64)>,
) -> Result<BinnedHistogram> {
    if values.is_empty() {
        return Err(Error::EmptyData);
    }
    if bins < 2 {
        return Err(Error::Histogram(format!(
            "need at least 2 bins, got {bins}"
        )));
    }
    if let Some(v) = values.iter().find(|v| !v.is_finite()) {
        return Err(Error::Histogram(format!("non-finite value {v}")));
    }
    let (lo, hi) = match range {
        Some((lo, hi)) => {
            if !(lo.is_finite() && hi.is_finite() && hi > lo) {
                return Err(Error::Histogram(format!("invalid range {lo}:{hi}")));
            }
            (lo, hi)
        }
        None => {
            let lo = values.iter().copied().fold(0.0, f64::min);
            let hi = values.iter().copied().fold(f64::NEG_INFINITY, f64::max);
            (lo, if hi > lo { hi } else { lo + 1.0 })
        }
    };
    let width = (hi - lo) / bins as f64;
    let edges: Vec<f64> = (0..=bins)
        .map(|i| if i == bins { hi } else { lo + i as f64 * width })
        .collect();
    let mut counts = vec![0.0; bins];
    let mut clipped = 0;
    for &v in values {
        if v < lo || v > hi {
            clipped += 1;
        }
        let index = ((v - lo) / width).floor().clamp(0.0, (bins - 1) as f64) as usize;
        counts[index] += 1.0;
    }
    Ok(BinnedHistogram {
        histogram: Histogram::new(edges, counts)?,
        clipped,
    })
}

/// Histogram CSV files in a directory, sorted by file name.
pub fn histogram_files(dir: impl AsRef<Path>) -> Result<Vec<PathBuf>> {
    let mut files: Vec<PathBuf> = fs::read_dir(dir)?
        .filter_map(|entry| entry.ok().map(|e| e.path()))
        .filter(|p| p.is_file() && p.extension().is_some_and(|e| e == "csv"))
        .collect();
    files.sort();
    Ok(files)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p() -> &'static Path {
        Path::new("test.csv")
    }

    #[test]
    fn values_csv_forms() {
        match parse_values_csv("1\n2\n3\n", p()).unwrap() {
            LoadedValues::Values(v) => assert_eq!(v.as_slice(), &[1.0, 2.0, 3.0]),
            other => panic!("{other:?}"),
        }
        match parse_values_csv("1,2\n3,4\n", p()).unwrap() {
            LoadedValues::Weighted(w) => {
                assert_eq!(w.values(), &[1.0, 3.0]);
                assert_eq!(w.weights(), &[2.0, 4.0]);
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn values_csv_errors_carry_line_numbers() {
        let line_of = |text: &str| match parse_values_csv(text, p()) {
            Err(Error::Parse { line, .. }) => line,
            other => panic!("{other:?}"),
        };
        assert_eq!(line_of("1\n2,3\n"), 2);
        assert_eq!(line_of("1\n\n-4\n"), 3);
        assert_eq!(line_of("1,1\n2,-1\n"), 2);
        assert_eq!(line_of("abc\n"), 1);
        assert_eq!(line_of("1,2,3\n"), 1);
        assert_eq!(line_of(""), 0);
    }

    #[test]
    fn histogram_csv() {
        let h = parse_histogram_csv("0,1,3\n1,2,1\n", p()).unwrap();
        assert_eq!(h.edges(), &[0.0, 1.0, 2.0]);
        assert_eq!(h.counts(), &[3.0, 1.0]);
        assert!(matches!(
            parse_histogram_csv("0,1,3\n2,3,1\n", p()),
            Err(Error::Parse { line: 2, .. })
        ));
        assert!(parse_histogram_csv("1,0,3\n", p()).is_err());
        assert!(parse_histogram_csv("0,1,-3\n", p()).is_err());
        let mut buf = Vec::new();
        write_histogram_csv(&h, &mut buf).unwrap();
        assert_eq!(String::from_utf8(buf).unwrap(), "0,1,3\n1,2,1\n");
    }

    #[test]
    fn pgm_parsing() {
        let img = parse_pgm(b"P5\n2 2\n255\n\x00\xff\x80\x40").unwrap();
        assert_eq!((img.width(), img.height()), (2, 2));
        assert_eq!(img.pixels(), &[0, 255, 128, 64]);
        let img = parse_pgm(b"P5\n# a comment\n2 # inline\n1\n255\n\x01\x02").unwrap();
        assert_eq!(img.pixels(), &[1, 2]);
        assert!(matches!(
            parse_pgm(b"P2\n1 1\n255\n0\n"),
            Err(Error::ImageFormat(_))
        ));
        assert!(matches!(
            parse_pgm(b"P5\n2 2\n255\n\x00"),
            Err(Error::ImageFormat(_))
        ));
        assert!(matches!(
            parse_pgm(b"P5\n1 1\n65535\n\x00\x00"),
            Err(Error::ImageFormat(_))
        ));
        assert!(parse_pgm(b"P6\n1 1\n255\n\x00\x00\x00").is_err());
        let round = parse_pgm(&encode_pgm(&img)).unwrap();
        assert_eq!(round, img);
    }

    #[test]
    fn constant_block_spectrum_is_exact() {
        let block = [37.0; 64];
        let f = dct8x8(&block);
        assert_eq!(f[0], 8.0 * 37.0);
        assert!(f[1..].iter().all(|&c| c == 0.0));
    }

    #[test]
    fn dct_matches_direct_formula() {
        let block: [f64; 64] = std::array::from_fn(|i| ((i * 37 + 11) % 256) as f64);
        let f = dct8x8(&block);
        for u in 0..8 {
            for v in 0..8 {
                let cu = if u == 0 { (0.125f64).sqrt() } else { 0.5 };
                let cv = if v == 0 { (0.125f64).sqrt() } else { 0.5 };
                let mut acc = 0.0;
                for y in 0..8 {
                    for x in 0..8 {
                        acc += block[8 * y + x]
                            * ((2 * y + 1) as f64 * u as f64 * PI / 16.0).cos()
                            * ((2 * x + 1) as f64 * v as f64 * PI / 16.0).cos();
                    }
                }
                assert!((cu * cv * acc - f[8 * u + v]).abs() < 1e-10);
            }
        }
    }

    #[test]
    fn block_dct_crops_and_counts() {
        let img = GrayImage::new(17, 9, vec![90; 17 * 9]).unwrap();
        let c = block_dct8(&img, false).unwrap();
        assert_eq!(c.blocks, 2);
        assert_eq!(c.values.len(), 128);
        assert_eq!(c.values[0], 720.0);
        let c = block_dct8(&img, true).unwrap();
        assert_eq!(c.values.len(), 126);
        assert!(c.values.iter().all(|&v| v == 0.0));
        let small = GrayImage::new(7, 20, vec![0; 140]).unwrap();
        assert!(matches!(
            block_dct8(&small, false),
            Err(Error::ImageTooSmall { .. })
        ));
    }

    #[test]
    fn binning() {
        let b = build_histogram(&[0.5, 1.5, 1.5], 2, Some((0.0, 2.0))).unwrap();
        assert_eq!(b.histogram.counts(), &[1.0, 2.0]);
        assert_eq!(b.clipped, 0);
        let b = build_histogram(&[3.0; 5], 4, None).unwrap();
        assert_eq!(b.histogram.counts().iter().filter(|&&c| c > 0.0).count(), 1);
        let b = build_histogram(&[0.0; 5], 4, None).unwrap();
        assert_eq!(b.histogram.counts()[0], 5.0);
        let b = build_histogram(&[-1.0, 0.5, 9.0], 2, Some((0.0, 2.0))).unwrap();
        assert_eq!(b.clipped, 2);
        assert_eq!(b.histogram.total(), 3.0);
        assert!(build_histogram(&[], 2, None).is_err());
        assert!(build_histogram(&[1.0], 1, None).is_err());
        assert!(build_histogram(&[1.0], 2, Some((2.0, 1.0))).is_err());
    }
}

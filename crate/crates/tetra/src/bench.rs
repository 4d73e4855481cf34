//! The corpus benchmark: build low-resolution inputs from reference
//! images, upscale them with every algorithm, time each upscale and score
//! it against the reference.
//!
//! Timed sections run on the calling thread with nothing else scheduled by
//! the harness. Scoring of an image's outputs happens afterwards on a
//! rayon pool whose size is capped by [`BenchConfig::threads`] or the
//! `TETRA_THREADS` environment variable.

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};
use std::time::Instant;

use rayon::prelude::*;
use tetra_core::interp::resize;
use tetra_core::{downsample, Algorithm, Downsampler, GrayImage, IntensityDomain, QualityScores, Scheme};

use crate::error::{Error, Result};
use crate::io::{load_image, Format};
use crate::pgm::save_pgm;

pub const THREADS_ENV: &str = "TETRA_THREADS";

/// Where the low-resolution input for a reference comes from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LowRes {
    /// Downsample the reference in-process.
    Downsample(Downsampler),
    /// Read `<corpus>/x<ratio>/<same file name>`.
    Precomputed,
}

impl Default for LowRes {
    fn default() -> Self {
        LowRes::Downsample(Downsampler::Box)
    }
}

impl LowRes {
    pub fn as_str(self) -> &'static str {
        match self {
            LowRes::Downsample(d) => d.as_str(),
            LowRes::Precomputed => "precomputed",
        }
    }
}

impl std::str::FromStr for LowRes {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "box" => Ok(LowRes::Downsample(Downsampler::Box)),
            "decimate" => Ok(LowRes::Downsample(Downsampler::Decimate)),
            "precomputed" => Ok(LowRes::Precomputed),
            _ => Err(format!("unknown downsampler '{s}' (box, decimate, precomputed)")),
        }
    }
}

#[derive(Debug, Clone)]
pub struct BenchConfig {
    pub corpus_dir: PathBuf,
    pub ratios: Vec<u32>,
    pub algorithms: Vec<Algorithm>,
    pub intensity_domain: IntensityDomain,
    pub low_res: LowRes,
    /// Timed runs per (algorithm, ratio, image), after one warm-up.
    pub repetitions: usize,
    /// When set, every upscaled image is written here as PGM.
    pub output_dir: Option<PathBuf>,
    pub save_images: bool,
    pub threads: Option<usize>,
}

impl BenchConfig {
    pub fn new(corpus_dir: impl Into<PathBuf>) -> Self {
        Self {
            corpus_dir: corpus_dir.into(),
            ratios: vec![2, 4],
            algorithms: Algorithm::ALL.to_vec(),
            intensity_domain: IntensityDomain::Raw,
            low_res: LowRes::default(),
            repetitions: 3,
            output_dir: None,
            save_images: false,
            threads: None,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.ratios.is_empty() || self.ratios.iter().any(|&r| r < 2) {
            return Err(Error::Config("ratios must be non-empty integers >= 2".into()));
        }
        if self.algorithms.is_empty() {
            return Err(Error::Config("no algorithms selected".into()));
        }
        if self.repetitions == 0 {
            return Err(Error::Config("repetitions must be >= 1".into()));
        }
        if self.threads == Some(0) {
            return Err(Error::Config("thread count must be >= 1".into()));
        }
        if self.save_images && self.output_dir.is_none() {
            return Err(Error::Config("saving images requires an output directory".into()));
        }
        Ok(())
    }

    fn scheme(&self, algorithm: Algorithm) -> Scheme {
        Scheme::new(algorithm, self.intensity_domain)
    }
}

/// One (image, algorithm, ratio) measurement.
#[derive(Debug, Clone, PartialEq)]
pub struct BenchRecord {
    pub image_id: String,
    pub algorithm: Algorithm,
    pub ratio: u32,
    pub scores: QualityScores,
    /// Median wall-clock seconds over the timed repetitions.
    pub elapsed_s: f64,
}

/// Means over all images for one (algorithm, ratio).
#[derive(Debug, Clone, PartialEq)]
pub struct AggregateRow {
    pub algorithm: Algorithm,
    pub ratio: u32,
    pub mean_mse: f64,
    pub mean_psnr: f64,
    pub mean_ssim: f64,
    pub mean_elapsed_s: f64,
    pub image_count: usize,
}

#[derive(Debug, Clone)]
pub struct BenchReport {
    pub records: Vec<BenchRecord>,
    pub aggregates: Vec<AggregateRow>,
}

/// Median of a non-empty sample; the mean of the two middle values for
/// even lengths.
pub fn median(values: &[f64]) -> f64 {
    assert!(!values.is_empty(), "median of empty sample");
    let mut v = values.to_vec();
    v.sort_by(f64::total_cmp);
    let mid = v.len() / 2;
    if v.len() % 2 == 1 {
        v[mid]
    } else {
        (v[mid - 1] + v[mid]) / 2.0
    }
}

/// Runs one untimed warm-up and `repetitions` timed resizes. Returns the
/// warm-up output and the median time. Every timed output must equal the
/// warm-up output bit for bit.
pub fn timed_resize(
    image: &GrayImage,
    ratio: f64,
    scheme: Scheme,
    repetitions: usize,
) -> Result<(GrayImage, f64)> {
    if repetitions == 0 {
        return Err(Error::Config("repetitions must be >= 1".into()));
    }
    let reference = resize(image, ratio, scheme)?;
    let mut times = Vec::with_capacity(repetitions);
    for _ in 0..repetitions {
        let start = Instant::now();
        let out = resize(image, ratio, scheme);
        let elapsed = start.elapsed();
        let out = out?;
        if out != reference {
            return Err(Error::Data {
                image_id: String::new(),
                detail: format!("{} produced different output across runs", scheme.algorithm),
            });
        }
        times.push(elapsed.as_secs_f64());
    }
    // Instant has nanosecond resolution; keep the value strictly positive
    Ok((reference, median(&times).max(1e-9)))
}

/// Median seconds for one resize, after a warm-up.
pub fn time_algorithm(image: &GrayImage, ratio: f64, scheme: Scheme, repetitions: usize) -> Result<f64> {
    timed_resize(image, ratio, scheme, repetitions).map(|(_, t)| t)
}

/// Reference images in `dir` (non-recursive), sorted by file name.
pub fn list_corpus(dir: &Path) -> Result<Vec<PathBuf>> {
    let entries = fs::read_dir(dir).map_err(|e| Error::io(dir, e))?;
    let mut files = Vec::new();
    for entry in entries {
        let path = entry.map_err(|e| Error::io(dir, e))?.path();
        if path.is_file() && Format::from_path(&path).is_some() {
            files.push(path);
        }
    }
    files.sort();
    if files.is_empty() {
        return Err(Error::EmptyCorpus(dir.to_path_buf()));
    }
    Ok(files)
}

fn image_id(path: &Path) -> String {
    path.file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_default()
}

fn low_res_input(config: &BenchConfig, path: &Path, reference: &GrayImage, ratio: u32) -> Result<GrayImage> {
    let id = image_id(path);
    match config.low_res {
        LowRes::Downsample(method) => downsample(reference, ratio as usize, method).map_err(|e| Error::Data {
            image_id: id,
            detail: e.to_string(),
        }),
        LowRes::Precomputed => {
            let name = path.file_name().expect("corpus entries are files");
            load_image(config.corpus_dir.join(format!("x{ratio}")).join(name))
        }
    }
}

fn thread_pool(config: &BenchConfig) -> Result<rayon::ThreadPool> {
    let threads = match config.threads {
        Some(n) => Some(n),
        None => threads_from_env()?,
    };
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(n) = threads {
        builder = builder.num_threads(n);
    }
    builder
        .build()
        .map_err(|e| Error::Config(format!("cannot start scoring threads: {e}")))
}

/// Parses `TETRA_THREADS`; unset or empty means no cap.
pub fn threads_from_env() -> Result<Option<usize>> {
    match std::env::var(THREADS_ENV) {
        Ok(v) if v.trim().is_empty() => Ok(None),
        Ok(v) => match v.trim().parse::<usize>() {
            Ok(n) if n >= 1 => Ok(Some(n)),
            _ => Err(Error::Config(format!("{THREADS_ENV} must be a positive integer, got '{v}'"))),
        },
        Err(_) => Ok(None),
    }
}

pub fn run_benchmark(config: &BenchConfig) -> Result<BenchReport> {
    config.validate()?;
    let files = list_corpus(&config.corpus_dir)?;
    let pool = thread_pool(config)?;
    if let Some(dir) = config.output_dir.as_ref().filter(|_| config.save_images) {
        fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))?;
    }

    let mut records = Vec::new();
    for path in &files {
        let id = image_id(path);
        let reference = load_image(path)?;

        // timing: exclusive, on this thread
        let mut outputs = Vec::new();
        for &ratio in &config.ratios {
            let input = low_res_input(config, path, &reference, ratio)?;
            for &algorithm in &config.algorithms {
                let (out, elapsed_s) = timed_resize(&input, ratio as f64, config.scheme(algorithm), config.repetitions)
                    .map_err(|e| match e {
                        Error::Data { detail, .. } => Error::Data {
                            image_id: id.clone(),
                            detail,
                        },
                        other => other,
                    })?;
                if out.dimensions() != reference.dimensions() {
                    return Err(Error::Data {
                        image_id: id.clone(),
                        detail: format!(
                            "upscaled {}x{} does not match reference {}x{}",
                            out.width(),
                            out.height(),
                            reference.width(),
                            reference.height()
                        ),
                    });
                }
                outputs.push((algorithm, ratio, out, elapsed_s));
            }
        }

        // scoring: parallel, after all timed runs for this image
        let scored: Vec<Result<BenchRecord>> = pool.install(|| {
            outputs
                .par_iter()
                .map(|(algorithm, ratio, out, elapsed_s)| {
                    let scores = QualityScores::compute(out, &reference).map_err(|e| Error::Data {
                        image_id: id.clone(),
                        detail: e.to_string(),
                    })?;
                    Ok(BenchRecord {
                        image_id: id.clone(),
                        algorithm: *algorithm,
                        ratio: *ratio,
                        scores,
                        elapsed_s: *elapsed_s,
                    })
                })
                .collect()
        });
        for r in scored {
            records.push(r?);
        }

        if let Some(dir) = config.output_dir.as_ref().filter(|_| config.save_images) {
            for (algorithm, ratio, out, _) in &outputs {
                let name = format!("{id}_{algorithm}_x{ratio}_{}.pgm", config.intensity_domain);
                save_pgm(out, dir.join(name))?;
            }
        }
    }

    let aggregates = aggregate(&records);
    Ok(BenchReport { records, aggregates })
}

/// Per-(algorithm, ratio) means, ordered by ratio then algorithm.
pub fn aggregate(records: &[BenchRecord]) -> Vec<AggregateRow> {
    let mut groups: BTreeMap<(u32, Algorithm), Vec<&BenchRecord>> = BTreeMap::new();
    for r in records {
        groups.entry((r.ratio, r.algorithm)).or_default().push(r);
    }
    groups
        .into_iter()
        .map(|((ratio, algorithm), rs)| {
            let n = rs.len() as f64;
            let mean = |f: fn(&BenchRecord) -> f64| rs.iter().map(|r| f(r)).sum::<f64>() / n;
            AggregateRow {
                algorithm,
                ratio,
                mean_mse: mean(|r| r.scores.mse),
                mean_psnr: mean(|r| r.scores.psnr),
                mean_ssim: mean(|r| r.scores.ssim),
                mean_elapsed_s: mean(|r| r.elapsed_s),
                image_count: rs.len(),
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn median_definition() {
        assert_eq!(median(&[0.01, 0.03, 0.02]), 0.02);
        assert_eq!(median(&[5.0]), 5.0);
        assert_eq!(median(&[4.0, 1.0, 3.0, 2.0]), 2.5);
    }

    #[test]
    fn timing_is_positive() {
        let img = GrayImage::filled(1, 1, 3).unwrap();
        for reps in [1, 3] {
            let t = time_algorithm(&img, 2.0, Algorithm::Nearest.into(), reps).unwrap();
            assert!(t > 0.0);
        }
        assert!(time_algorithm(&img, 2.0, Algorithm::Nearest.into(), 0).is_err());
    }

    #[test]
    fn config_validation() {
        let ok = BenchConfig::new("x");
        assert!(ok.validate().is_ok());
        let mut c = ok.clone();
        c.ratios = vec![1];
        assert!(c.validate().is_err());
        let mut c = ok.clone();
        c.repetitions = 0;
        assert!(c.validate().is_err());
        let mut c = ok.clone();
        c.algorithms.clear();
        assert!(c.validate().is_err());
        let mut c = ok;
        c.save_images = true;
        assert!(c.validate().is_err());
    }

    #[test]
    fn low_res_parsing() {
        assert_eq!("box".parse::<LowRes>(), Ok(LowRes::Downsample(Downsampler::Box)));
        assert_eq!("precomputed".parse::<LowRes>(), Ok(LowRes::Precomputed));
        assert!("bilinear".parse::<LowRes>().is_err());
    }
}

//! `tetra` command line: `resize`, `metrics`, `bench`, `report`.
//!
//! Exit codes: 0 success, 1 usage, 2 I/O, 3 data error.

use std::ffi::OsString;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use tetra_core::interp::resize;
use tetra_core::{Algorithm, IntensityDomain, QualityScores, Scheme};

use crate::bench::{run_benchmark, BenchConfig, BenchReport, LowRes};
use crate::error::{Error, Result};
use crate::io::load_image;
use crate::pgm::save_pgm;
use crate::report;

pub const EXIT_USAGE: i32 = 1;

#[derive(Debug, Parser)]
#[command(name = "tetra", version, about = "Grayscale upscaling with normalized geometric weights")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum DomainArg {
    Raw,
    Unit,
    Both,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Resize one image and write it as PGM.
    Resize {
        input: PathBuf,
        output: PathBuf,
        #[arg(long, value_parser = parse_ratio)]
        ratio: f64,
        /// TN, TB, TC, MD, HR, AT or AC.
        #[arg(long, value_parser = parse_algorithm)]
        scheme: Algorithm,
        #[arg(long, value_enum, default_value = "raw")]
        intensity_domain: SingleDomain,
    },
    /// Print MSE, PSNR and SSIM between two images of equal size.
    Metrics { a: PathBuf, b: PathBuf },
    /// Run the corpus benchmark and write the report bundle.
    Bench {
        #[arg(long)]
        corpus: PathBuf,
        #[arg(long, value_delimiter = ',', default_value = "2,4")]
        ratios: Vec<u32>,
        #[arg(long, value_delimiter = ',', value_parser = parse_algorithm, default_value = "TN,TB,TC,MD,HR,AT,AC")]
        algorithms: Vec<Algorithm>,
        #[arg(long, value_enum, default_value = "raw")]
        intensity_domain: DomainArg,
        /// box, decimate or precomputed (reads <corpus>/x<ratio>/<name>).
        #[arg(long, default_value = "box", value_parser = parse_low_res)]
        downsampler: LowRes,
        #[arg(long, default_value_t = 3)]
        reps: usize,
        #[arg(long)]
        out: PathBuf,
        /// Also write every upscaled image as PGM under <out>/images.
        #[arg(long)]
        save_images: bool,
    },
    /// Draw charts and a summary from an aggregates CSV.
    Report {
        #[arg(long)]
        aggregates: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SingleDomain {
    Raw,
    Unit,
}

impl From<SingleDomain> for IntensityDomain {
    fn from(d: SingleDomain) -> Self {
        match d {
            SingleDomain::Raw => IntensityDomain::Raw,
            SingleDomain::Unit => IntensityDomain::Unit,
        }
    }
}

fn parse_ratio(s: &str) -> std::result::Result<f64, String> {
    match s.parse::<f64>() {
        Ok(r) if r.is_finite() && r > 0.0 => Ok(r),
        _ => Err(format!("'{s}' is not a positive ratio")),
    }
}

fn parse_algorithm(s: &str) -> std::result::Result<Algorithm, String> {
    s.parse().map_err(|e| format!("'{s}': {e}"))
}

fn parse_low_res(s: &str) -> std::result::Result<LowRes, String> {
    s.parse()
}

/// Formats with six significant digits, keeping trailing zeros.
pub fn sig6(v: f64) -> String {
    if v.is_nan() {
        return "nan".into();
    }
    if v.is_infinite() {
        return if v > 0.0 { "inf" } else { "-inf" }.into();
    }
    if v == 0.0 {
        return "0.00000".into();
    }
    let exp = v.abs().log10().floor() as i32;
    if !(-5..6).contains(&exp) {
        return format!("{v:.5e}");
    }
    let decimals = (5 - exp).max(0) as usize;
    let s = format!("{v:.decimals$}");
    // rounding may carry into a new leading digit (9.999999 -> 10.00000)
    let digits = s.chars().filter(|c| c.is_ascii_digit()).count();
    let leading_zeros = s.trim_start_matches('-').chars().take_while(|&c| c == '0' || c == '.').filter(|&c| c == '0').count();
    if digits - leading_zeros > 6 && decimals > 0 {
        let d = decimals - 1;
        return format!("{v:.d$}");
    }
    s
}

fn cmd_resize(input: &Path, output: &Path, ratio: f64, scheme: Scheme) -> Result<()> {
    let image = load_image(input)?;
    let out = resize(&image, ratio, scheme)?;
    save_pgm(&out, output)
}

fn cmd_metrics(a: &Path, b: &Path) -> Result<String> {
    let (a, b) = (load_image(a)?, load_image(b)?);
    let s = QualityScores::compute(&a, &b)?;
    Ok(format!("mse={}\npsnr={}\nssim={}\n", sig6(s.mse), sig6(s.psnr), sig6(s.ssim)))
}

fn bench_one(config: &BenchConfig, out: &Path) -> Result<BenchReport> {
    let report = run_benchmark(config)?;
    report::write_bundle(out, config, &report)?;
    Ok(report)
}

fn cmd_bench(mut config: BenchConfig, domain: DomainArg, out: &Path) -> Result<()> {
    let images = |dir: &Path| config.save_images.then(|| dir.join("images"));
    match domain {
        DomainArg::Raw | DomainArg::Unit => {
            config.intensity_domain = if domain == DomainArg::Raw { IntensityDomain::Raw } else { IntensityDomain::Unit };
            config.output_dir = images(out);
            let report = bench_one(&config, out)?;
            print!("{}", report::aggregate_table(&report.aggregates));
        }
        DomainArg::Both => {
            let mut results = Vec::new();
            for d in [IntensityDomain::Raw, IntensityDomain::Unit] {
                let dir = out.join(d.as_str());
                let mut c = config.clone();
                c.intensity_domain = d;
                c.output_dir = images(&dir);
                let report = bench_one(&c, &dir)?;
                println!("[{d}]");
                print!("{}", report::aggregate_table(&report.aggregates));
                results.push(report.aggregates);
            }
            let md = report::domain_comparison_markdown(&results[0], &results[1]);
            let path = out.join("domains.md");
            std::fs::write(&path, &md).map_err(|e| Error::io(&path, e))?;
            print!("{md}");
        }
    }
    Ok(())
}

fn cmd_report(aggregates: &Path, out: &Path) -> Result<()> {
    let rows = report::read_aggregates_csv(aggregates)?;
    report::write_figures(out, &rows)?;
    print!("{}", report::summary_markdown(&rows));
    Ok(())
}

pub fn execute(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Resize {
            input,
            output,
            ratio,
            scheme,
            intensity_domain,
        } => cmd_resize(&input, &output, ratio, Scheme::new(scheme, intensity_domain.into())),
        Command::Metrics { a, b } => {
            print!("{}", cmd_metrics(&a, &b)?);
            Ok(())
        }
        Command::Bench {
            corpus,
            ratios,
            algorithms,
            intensity_domain,
            downsampler,
            reps,
            out,
            save_images,
        } => {
            let mut config = BenchConfig::new(corpus);
            config.ratios = ratios;
            config.algorithms = algorithms;
            config.low_res = downsampler;
            config.repetitions = reps;
            config.save_images = save_images;
            cmd_bench(config, intensity_domain, &out)
        }
        Command::Report { aggregates, out } => cmd_report(&aggregates, &out),
    }
}

/// Parses `args` (including the program name), runs the command and
/// returns the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    match execute(cli) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

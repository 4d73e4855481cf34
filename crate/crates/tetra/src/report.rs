//! Report files: records and aggregates CSV, a JSON summary, four SVG
//! charts and a markdown summary of the ordering checks.
//!
//! CSV headers are fixed:
//!
//! ```text
//! image_id,algorithm,ratio,mse,psnr,ssim,elapsed_s
//! algorithm,ratio,mean_mse,mean_psnr,mean_ssim,mean_elapsed_s,image_count
//! ```
//!
//! Floats use Rust's locale-independent shortest round-trip formatting;
//! an infinite PSNR is written as `inf`.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use tetra_core::Algorithm;

use crate::bench::{AggregateRow, BenchConfig, BenchRecord, BenchReport};
use crate::chart;
use crate::checks::{best, ordering_checks, Metric, OrderingCheck};
use crate::error::{Error, Result};

pub const RECORDS_HEADER: &str = "image_id,algorithm,ratio,mse,psnr,ssim,elapsed_s";
pub const AGGREGATES_HEADER: &str = "algorithm,ratio,mean_mse,mean_psnr,mean_ssim,mean_elapsed_s,image_count";

#[derive(Debug, Serialize, Deserialize)]
struct RecordRow {
    image_id: String,
    algorithm: String,
    ratio: u32,
    mse: f64,
    psnr: f64,
    ssim: f64,
    elapsed_s: f64,
}

#[derive(Debug, Serialize, Deserialize)]
struct AggregateCsvRow {
    algorithm: String,
    ratio: u32,
    mean_mse: f64,
    mean_psnr: f64,
    mean_ssim: f64,
    mean_elapsed_s: f64,
    image_count: usize,
}

fn csv_err(path: &Path) -> impl Fn(csv::Error) -> Error + '_ {
    move |source| Error::Csv {
        path: path.to_path_buf(),
        source,
    }
}

fn write_rows<T: Serialize>(path: &Path, rows: impl IntoIterator<Item = T>) -> Result<()> {
    let mut w = csv::Writer::from_path(path).map_err(csv_err(path))?;
    for row in rows {
        w.serialize(row).map_err(csv_err(path))?;
    }
    w.flush().map_err(|e| Error::io(path, e))
}

pub fn write_records_csv(path: &Path, records: &[BenchRecord]) -> Result<()> {
    if records.is_empty() {
        return fs::write(path, format!("{RECORDS_HEADER}\n")).map_err(|e| Error::io(path, e));
    }
    write_rows(
        path,
        records.iter().map(|r| RecordRow {
            image_id: r.image_id.clone(),
            algorithm: r.algorithm.tag().to_string(),
            ratio: r.ratio,
            mse: r.scores.mse,
            psnr: r.scores.psnr,
            ssim: r.scores.ssim,
            elapsed_s: r.elapsed_s,
        }),
    )
}

pub fn write_aggregates_csv(path: &Path, rows: &[AggregateRow]) -> Result<()> {
    if rows.is_empty() {
        return fs::write(path, format!("{AGGREGATES_HEADER}\n")).map_err(|e| Error::io(path, e));
    }
    write_rows(
        path,
        rows.iter().map(|r| AggregateCsvRow {
            algorithm: r.algorithm.tag().to_string(),
            ratio: r.ratio,
            mean_mse: r.mean_mse,
            mean_psnr: r.mean_psnr,
            mean_ssim: r.mean_ssim,
            mean_elapsed_s: r.mean_elapsed_s,
            image_count: r.image_count,
        }),
    )
}

fn malformed(path: &Path, detail: String) -> Error {
    Error::Data {
        image_id: path.display().to_string(),
        detail,
    }
}

pub fn read_aggregates_csv(path: &Path) -> Result<Vec<AggregateRow>> {
    let file = fs::File::open(path).map_err(|e| Error::io(path, e))?;
    let mut reader = csv::Reader::from_reader(file);
    let header = reader.headers().map_err(csv_err(path))?.iter().collect::<Vec<_>>().join(",");
    if header != AGGREGATES_HEADER {
        return Err(malformed(path, format!("unexpected header '{header}'")));
    }
    let mut rows = Vec::new();
    for row in reader.deserialize::<AggregateCsvRow>() {
        let row = row.map_err(csv_err(path))?;
        let algorithm: Algorithm = row
            .algorithm
            .parse()
            .map_err(|e| malformed(path, format!("algorithm '{}': {e}", row.algorithm)))?;
        rows.push(AggregateRow {
            algorithm,
            ratio: row.ratio,
            mean_mse: row.mean_mse,
            mean_psnr: row.mean_psnr,
            mean_ssim: row.mean_ssim,
            mean_elapsed_s: row.mean_elapsed_s,
            image_count: row.image_count,
        });
    }
    if rows.is_empty() {
        return Err(malformed(path, "no rows".into()));
    }
    Ok(rows)
}

/// Finite floats as numbers, infinities as the string `"inf"`.
fn num(v: f64) -> Value {
    if v.is_finite() {
        json!(v)
    } else if v > 0.0 {
        json!("inf")
    } else if v < 0.0 {
        json!("-inf")
    } else {
        json!("nan")
    }
}

pub fn json_summary(config: &BenchConfig, report: &BenchReport) -> Value {
    let images: std::collections::BTreeSet<&str> = report.records.iter().map(|r| r.image_id.as_str()).collect();
    json!({
        "corpus_dir": config.corpus_dir.display().to_string(),
        "intensity_domain": config.intensity_domain.as_str(),
        "downsampler": config.low_res.as_str(),
        "ratios": config.ratios,
        "algorithms": config.algorithms.iter().map(|a| a.tag()).collect::<Vec<_>>(),
        "repetitions": config.repetitions,
        "image_count": images.len(),
        "record_count": report.records.len(),
        "aggregates": report.aggregates.iter().map(|r| json!({
            "algorithm": r.algorithm.tag(),
            "ratio": r.ratio,
            "mean_mse": num(r.mean_mse),
            "mean_psnr": num(r.mean_psnr),
            "mean_ssim": num(r.mean_ssim),
            "mean_elapsed_s": num(r.mean_elapsed_s),
            "image_count": r.image_count,
        })).collect::<Vec<_>>(),
    })
}

fn ratios(rows: &[AggregateRow]) -> Vec<u32> {
    let mut r: Vec<u32> = rows.iter().map(|r| r.ratio).collect();
    r.sort_unstable();
    r.dedup();
    r
}

fn fmt_value(v: f64) -> String {
    if v.is_infinite() {
        "inf".into()
    } else {
        format!("{v:.6}")
    }
}

/// Plain-text table of the aggregates, one row per (ratio, algorithm).
pub fn aggregate_table(rows: &[AggregateRow]) -> String {
    let mut s = format!(
        "{:<5} {:>5} {:>12} {:>10} {:>9} {:>12} {:>6}\n",
        "alg", "ratio", "mse", "psnr", "ssim", "time_s", "images"
    );
    let mut sorted: Vec<&AggregateRow> = rows.iter().collect();
    sorted.sort_by_key(|r| (r.ratio, r.algorithm));
    for r in sorted {
        let _ = writeln!(
            s,
            "{:<5} {:>5} {:>12.4} {:>10} {:>9.5} {:>12.6} {:>6}",
            r.algorithm.tag(),
            r.ratio,
            r.mean_mse,
            if r.mean_psnr.is_infinite() { "inf".to_string() } else { format!("{:.4}", r.mean_psnr) },
            r.mean_ssim,
            r.mean_elapsed_s,
            r.image_count
        );
    }
    s
}

fn checks_markdown(out: &mut String, checks: &[OrderingCheck]) {
    for c in checks {
        let _ = writeln!(out, "- `{}` {}: **{}**", c.id, c.claim, c.outcome);
    }
}

/// Markdown summary: best algorithm per metric and ratio, then the
/// ordering checks.
pub fn summary_markdown(rows: &[AggregateRow]) -> String {
    let mut out = String::from("# Benchmark summary\n\n");
    for ratio in ratios(rows) {
        let _ = writeln!(out, "## Ratio {ratio}\n");
        let _ = writeln!(out, "| metric | best | value |\n|---|---|---|");
        for m in Metric::ALL {
            if let Some(b) = best(rows, ratio, m) {
                let _ = writeln!(out, "| {} | {} | {} |", m.key(), b.algorithm, fmt_value(m.value(b)));
            }
        }
        let _ = writeln!(out, "\n### Ordering checks\n");
        checks_markdown(&mut out, &ordering_checks(rows, ratio));
        out.push('\n');
    }
    out
}

/// Side-by-side ordering checks for the two intensity domains. A domain
/// "matches" at a ratio when all of its applicable checks pass.
pub fn domain_comparison_markdown(raw: &[AggregateRow], unit: &[AggregateRow]) -> String {
    let mut out = String::from("# Intensity domain comparison\n\n");
    let mut all = ratios(raw);
    all.extend(ratios(unit));
    all.sort_unstable();
    all.dedup();
    for ratio in all {
        let _ = writeln!(out, "## Ratio {ratio}\n\n| check | raw | unit |\n|---|---|---|");
        let a = ordering_checks(raw, ratio);
        let b = ordering_checks(unit, ratio);
        for (x, y) in a.iter().zip(&b) {
            let _ = writeln!(out, "| {} | {} | {} |", x.claim, x.outcome, y.outcome);
        }
        let passed = |cs: &[OrderingCheck]| cs.iter().filter(|c| c.outcome.passed()).count();
        let (pa, pb) = (passed(&a), passed(&b));
        let verdict = match (pa == a.len(), pb == b.len()) {
            (true, true) => "both domains match",
            (true, false) => "raw matches",
            (false, true) => "unit matches",
            (false, false) => "neither domain matches every check",
        };
        let _ = writeln!(out, "\nVerdict: {verdict} (raw {pa}/{}, unit {pb}/{})\n", a.len(), b.len());
    }
    out
}

/// Writes the four charts and `summary.md` for a set of aggregates.
pub fn write_figures(dir: &Path, rows: &[AggregateRow]) -> Result<Vec<PathBuf>> {
    fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))?;
    let mut written = Vec::new();
    for m in Metric::ALL {
        let path = dir.join(format!("{}.svg", m.key()));
        fs::write(&path, chart::grouped_bars(rows, m)).map_err(|e| Error::io(&path, e))?;
        written.push(path);
    }
    let path = dir.join("summary.md");
    fs::write(&path, summary_markdown(rows)).map_err(|e| Error::io(&path, e))?;
    written.push(path);
    Ok(written)
}

/// Records, aggregates, JSON summary and figures under `dir`.
pub fn write_bundle(dir: &Path, config: &BenchConfig, report: &BenchReport) -> Result<()> {
    fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))?;
    write_records_csv(&dir.join("records.csv"), &report.records)?;
    write_aggregates_csv(&dir.join("aggregates.csv"), &report.aggregates)?;
    let path = dir.join("summary.json");
    let text = serde_json::to_string_pretty(&json_summary(config, report)).expect("JSON values serialize");
    fs::write(&path, text + "\n").map_err(|e| Error::io(&path, e))?;
    write_figures(dir, &report.aggregates)?;
    Ok(())
}

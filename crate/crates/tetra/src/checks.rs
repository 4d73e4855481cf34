//! Ordering checks over aggregate rows.
//!
//! Absolute scores depend on the corpus, the downsampler and the machine,
//! so comparisons are made on rankings: which algorithm is best for a
//! metric and whether bilinear beats the four normalized schemes.

use std::fmt;

use tetra_core::Algorithm;

use crate::bench::AggregateRow;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Metric {
    Time,
    Mse,
    Ssim,
    Psnr,
}

impl Metric {
    pub const ALL: [Metric; 4] = [Metric::Time, Metric::Mse, Metric::Ssim, Metric::Psnr];

    pub fn value(self, row: &AggregateRow) -> f64 {
        match self {
            Metric::Time => row.mean_elapsed_s,
            Metric::Mse => row.mean_mse,
            Metric::Ssim => row.mean_ssim,
            Metric::Psnr => row.mean_psnr,
        }
    }

    pub fn lower_is_better(self) -> bool {
        matches!(self, Metric::Time | Metric::Mse)
    }

    pub fn title(self) -> &'static str {
        match self {
            Metric::Time => "Average time in seconds",
            Metric::Mse => "Average MSE",
            Metric::Ssim => "Average SSIM",
            Metric::Psnr => "Average PSNR (dB)",
        }
    }

    pub fn key(self) -> &'static str {
        match self {
            Metric::Time => "time",
            Metric::Mse => "mse",
            Metric::Ssim => "ssim",
            Metric::Psnr => "psnr",
        }
    }

    /// True when `a` is strictly better than `b`.
    pub fn better(self, a: f64, b: f64) -> bool {
        if self.lower_is_better() {
            a < b
        } else {
            a > b
        }
    }
}

/// The four normalized weighting schemes.
pub const NORMALIZED: [Algorithm; 4] = [
    Algorithm::MinSideCircle,
    Algorithm::HypotenuseCircle,
    Algorithm::IntensityTriangle,
    Algorithm::IntensityCircle,
];

/// Rows for one ratio.
pub fn at_ratio(rows: &[AggregateRow], ratio: u32) -> Vec<&AggregateRow> {
    rows.iter().filter(|r| r.ratio == ratio).collect()
}

/// Best row for a metric at one ratio; the first row wins ties.
pub fn best(rows: &[AggregateRow], ratio: u32, metric: Metric) -> Option<&AggregateRow> {
    at_ratio(rows, ratio)
        .into_iter()
        .reduce(|acc, r| if metric.better(metric.value(r), metric.value(acc)) { r } else { acc })
}

#[derive(Debug, Clone, PartialEq)]
pub enum Outcome {
    Pass,
    Fail(String),
    /// Required algorithms are absent from the aggregates.
    Missing,
}

impl Outcome {
    pub fn passed(&self) -> bool {
        matches!(self, Outcome::Pass)
    }
}

impl fmt::Display for Outcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Outcome::Pass => f.write_str("PASS"),
            Outcome::Fail(why) => write!(f, "FAIL ({why})"),
            Outcome::Missing => f.write_str("N/A"),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct OrderingCheck {
    pub id: &'static str,
    pub ratio: u32,
    pub claim: String,
    pub outcome: Outcome,
}

fn row<'a>(rows: &[&'a AggregateRow], a: Algorithm) -> Option<&'a AggregateRow> {
    rows.iter().copied().find(|r| r.algorithm == a)
}

/// `subject` is strictly better than every other present algorithm.
fn best_overall(rows: &[&AggregateRow], subject: Algorithm, metric: Metric) -> Outcome {
    let rivals: Vec<Algorithm> = Algorithm::ALL.into_iter().filter(|&a| a != subject).collect();
    better_than(rows, subject, &rivals, metric)
}

/// `subject` is strictly better than each of `rivals` that is present.
fn better_than(rows: &[&AggregateRow], subject: Algorithm, rivals: &[Algorithm], metric: Metric) -> Outcome {
    let Some(s) = row(rows, subject) else {
        return Outcome::Missing;
    };
    let present: Vec<_> = rivals.iter().filter_map(|&a| row(rows, a)).collect();
    if present.is_empty() {
        return Outcome::Missing;
    }
    let losers: Vec<String> = present
        .iter()
        .filter(|r| !metric.better(metric.value(s), metric.value(r)))
        .map(|r| r.algorithm.to_string())
        .collect();
    if losers.is_empty() {
        Outcome::Pass
    } else {
        Outcome::Fail(format!("not better than {}", losers.join(", ")))
    }
}

/// The six orderings reported for the bicubic, nearest and bilinear
/// baselines at one ratio.
pub fn ordering_checks(rows: &[AggregateRow], ratio: u32) -> Vec<OrderingCheck> {
    let rs = at_ratio(rows, ratio);
    let check = |id, claim: &str, outcome| OrderingCheck {
        id,
        ratio,
        claim: claim.to_string(),
        outcome,
    };
    vec![
        check("tc-best-ssim", "TC has the largest mean SSIM", best_overall(&rs, Algorithm::Bicubic, Metric::Ssim)),
        check("tc-best-psnr", "TC has the largest mean PSNR", best_overall(&rs, Algorithm::Bicubic, Metric::Psnr)),
        check("tc-best-mse", "TC has the smallest mean MSE", best_overall(&rs, Algorithm::Bicubic, Metric::Mse)),
        check("tn-fastest", "TN has the smallest mean time", best_overall(&rs, Algorithm::Nearest, Metric::Time)),
        check(
            "tb-faster",
            "TB is faster than MD, HR, AT and AC",
            better_than(&rs, Algorithm::Bilinear, &NORMALIZED, Metric::Time),
        ),
        check(
            "tb-ssim",
            "TB has a larger mean SSIM than MD, HR, AT and AC",
            better_than(&rs, Algorithm::Bilinear, &NORMALIZED, Metric::Ssim),
        ),
    ]
}

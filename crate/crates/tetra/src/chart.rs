//! Static grouped bar charts as standalone SVG.

use std::fmt::Write as _;

use tetra_core::Algorithm;

use crate::bench::AggregateRow;
use crate::checks::Metric;

const WIDTH: f64 = 760.0;
const HEIGHT: f64 = 440.0;
const LEFT: f64 = 80.0;
const RIGHT: f64 = 20.0;
const TOP: f64 = 50.0;
const BOTTOM: f64 = 90.0;

fn color(a: Algorithm) -> &'static str {
    match a {
        Algorithm::Nearest => "#4e79a7",
        Algorithm::Bilinear => "#f28e2b",
        Algorithm::Bicubic => "#e15759",
        Algorithm::MinSideCircle => "#76b7b2",
        Algorithm::HypotenuseCircle => "#59a14f",
        Algorithm::IntensityTriangle => "#edc948",
        Algorithm::IntensityCircle => "#b07aa1",
    }
}

fn tick_label(v: f64) -> String {
    let a = v.abs();
    if a == 0.0 {
        "0".into()
    } else if !(1e-2..1e5).contains(&a) {
        format!("{v:.2e}")
    } else if a >= 100.0 {
        format!("{v:.0}")
    } else {
        format!("{v:.3}")
    }
}

/// One chart for `metric`: a group per ratio, a bar per algorithm present
/// at that ratio. Infinite values are drawn at full height and labelled.
pub fn grouped_bars(rows: &[AggregateRow], metric: Metric) -> String {
    let mut ratios: Vec<u32> = rows.iter().map(|r| r.ratio).collect();
    ratios.sort_unstable();
    ratios.dedup();

    let finite: Vec<f64> = rows.iter().map(|r| metric.value(r)).filter(|v| v.is_finite()).collect();
    let hi = finite.iter().copied().fold(0.0f64, f64::max);
    let lo = finite.iter().copied().fold(0.0f64, f64::min);
    let (lo, hi) = if hi - lo <= 0.0 { (lo, lo + 1.0) } else { (lo, hi + 0.1 * (hi - lo)) };

    let plot_w = WIDTH - LEFT - RIGHT;
    let plot_h = HEIGHT - TOP - BOTTOM;
    let y_of = |v: f64| TOP + plot_h * (1.0 - (v - lo) / (hi - lo));
    let base = y_of(0.0);

    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}" font-family="sans-serif" font-size="12">"#
    );
    let _ = writeln!(s, r#"<rect width="100%" height="100%" fill="white"/>"#);
    let _ = writeln!(
        s,
        r#"<text x="{}" y="28" text-anchor="middle" font-size="16">{}</text>"#,
        WIDTH / 2.0,
        metric.title()
    );

    for i in 0..=5 {
        let v = lo + (hi - lo) * i as f64 / 5.0;
        let y = y_of(v);
        let _ = writeln!(
            s,
            r##"<line x1="{LEFT}" y1="{y:.2}" x2="{:.2}" y2="{y:.2}" stroke="#dddddd"/><text x="{:.2}" y="{:.2}" text-anchor="end">{}</text>"##,
            WIDTH - RIGHT,
            LEFT - 6.0,
            y + 4.0,
            tick_label(v)
        );
    }
    let _ = writeln!(
        s,
        r#"<line x1="{LEFT}" y1="{base:.2}" x2="{:.2}" y2="{base:.2}" stroke="black"/>"#,
        WIDTH - RIGHT
    );

    let group_w = plot_w / ratios.len().max(1) as f64;
    for (g, &ratio) in ratios.iter().enumerate() {
        let mut bars: Vec<&AggregateRow> = rows.iter().filter(|r| r.ratio == ratio).collect();
        bars.sort_by_key(|r| r.algorithm);
        let inner = group_w * 0.8;
        let bar_w = inner / bars.len() as f64;
        let x0 = LEFT + g as f64 * group_w + (group_w - inner) / 2.0;
        for (i, r) in bars.iter().enumerate() {
            let v = metric.value(r);
            let top = if v.is_finite() { y_of(v) } else { TOP };
            let (y, h) = if top <= base { (top, base - top) } else { (base, top - base) };
            let x = x0 + i as f64 * bar_w;
            let label = if v.is_finite() { format!("{v}") } else { "inf".to_string() };
            let _ = writeln!(
                s,
                r#"<rect class="bar" data-algorithm="{tag}" data-ratio="{ratio}" data-value="{label}" x="{x:.2}" y="{y:.2}" width="{w:.2}" height="{h:.2}" fill="{fill}"><title>{tag} x{ratio}: {label}</title></rect>"#,
                tag = r.algorithm.tag(),
                w = bar_w * 0.9,
                fill = color(r.algorithm),
            );
            if !v.is_finite() {
                let _ = writeln!(
                    s,
                    r#"<text x="{:.2}" y="{:.2}" text-anchor="middle" font-size="10">inf</text>"#,
                    x + bar_w * 0.45,
                    TOP - 4.0
                );
            }
        }
        let _ = writeln!(
            s,
            r#"<text x="{:.2}" y="{:.2}" text-anchor="middle">ratio = {ratio}</text>"#,
            LEFT + (g as f64 + 0.5) * group_w,
            HEIGHT - BOTTOM + 20.0
        );
    }

    let mut present: Vec<Algorithm> = rows.iter().map(|r| r.algorithm).collect();
    present.sort();
    present.dedup();
    let step = plot_w / present.len().max(1) as f64;
    for (i, a) in present.iter().enumerate() {
        let x = LEFT + i as f64 * step;
        let y = HEIGHT - 35.0;
        let _ = writeln!(
            s,
            r#"<rect x="{x:.2}" y="{:.2}" width="12" height="12" fill="{}"/><text x="{:.2}" y="{y:.2}">{}</text>"#,
            y - 10.0,
            color(*a),
            x + 16.0,
            a.tag()
        );
    }
    s.push_str("</svg>\n");
    s
}

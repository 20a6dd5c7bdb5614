//! Standalone SVG line chart of a bound sweep.
//!
//! The root `<svg>` element records the data-to-pixel transform in
//! `data-*` attributes (`data-x-min`, `data-x-max`, `data-y-min`,
//! `data-y-max`, `data-left`, `data-top`, `data-plot-width`,
//! `data-plot-height`) so that plotted coordinates can be mapped back to
//! values. Each series is one `<polyline data-series="NAME">`, or one
//! `<circle>` per point when there is a single row.

use std::fmt::Write as _;
use std::path::Path;

use anyhow::{bail, Result};

use crate::output::write_atomic;
use crate::sweep::SweepRow;

#[derive(Debug, Clone, PartialEq)]
pub struct Series {
    pub name: String,
    pub values: Vec<f64>,
    pub color: String,
    pub dashed: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ChartSpec {
    pub width: u32,
    pub height: u32,
    pub title: String,
    pub x_label: String,
    pub y_label: String,
    pub series: Vec<Series>,
}

impl ChartSpec {
    /// Refined and intermediate bounds solid, the two weak bounds dashed.
    pub fn for_sweep(rows: &[SweepRow], dim: usize, unit: &str) -> Self {
        let series = |name: &str, color: &str, dashed, f: fn(&SweepRow) -> f64| Series {
            name: name.to_owned(),
            values: rows.iter().map(f).collect(),
            color: color.to_owned(),
            dashed,
        };
        Self {
            width: 800,
            height: 500,
            title: format!("Entropic lower bounds vs. number of bases, N = {dim}"),
            x_label: "M (number of mutually unbiased bases)".to_owned(),
            y_label: format!("lower bound on sum of entropies ({unit})"),
            series: vec![
                series("refined", "#1f3a93", false, |r| r.refined),
                series("intermediate", "#7f8c8d", false, |r| r.intermediate),
                series("weak_pairwise", "#c0392b", true, |r| r.weak_pairwise),
                series("weak_subtraction", "#27ae60", true, |r| r.weak_subtraction),
            ],
        }
    }
}

const LEFT: f64 = 80.0;
const RIGHT: f64 = 20.0;
const TOP: f64 = 40.0;
const BOTTOM: f64 = 55.0;
const TICKS: usize = 5;

fn padded_range(lo: f64, hi: f64, pad: f64) -> (f64, f64) {
    if hi > lo {
        let p = (hi - lo) * pad;
        (lo - p, hi + p)
    } else {
        (lo - 1.0, hi + 1.0)
    }
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
}

pub fn render_svg(rows: &[SweepRow], spec: &ChartSpec) -> Result<String> {
    if rows.is_empty() {
        bail!("no rows to plot");
    }
    if spec.series.is_empty() {
        bail!("no series to plot");
    }
    if let Some(s) = spec.series.iter().find(|s| s.values.len() != rows.len()) {
        bail!(
            "series {} has {} values for {} rows",
            s.name,
            s.values.len(),
            rows.len()
        );
    }
    let (w, h) = (spec.width as f64, spec.height as f64);
    let plot_w = w - LEFT - RIGHT;
    let plot_h = h - TOP - BOTTOM;
    if plot_w <= 0.0 || plot_h <= 0.0 {
        bail!("chart is too small");
    }

    let xs: Vec<f64> = rows.iter().map(|r| r.m as f64).collect();
    let (x0, x1) = {
        let lo = xs.iter().copied().fold(f64::INFINITY, f64::min);
        let hi = xs.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        if hi > lo {
            (lo, hi)
        } else {
            (lo - 0.5, hi + 0.5)
        }
    };
    let all = spec.series.iter().flat_map(|s| s.values.iter().copied());
    let (lo, hi) = all.fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), v| {
        (a.min(v), b.max(v))
    });
    if !lo.is_finite() || !hi.is_finite() {
        bail!("non-finite value in chart data");
    }
    let (y0, y1) = padded_range(lo, hi, 0.05);
    let px = |x: f64| LEFT + (x - x0) / (x1 - x0) * plot_w;
    let py = |y: f64| TOP + (1.0 - (y - y0) / (y1 - y0)) * plot_h;

    let mut svg = String::new();
    let _ = writeln!(
        svg,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{w}" height="{h}" viewBox="0 0 {w} {h}" data-x-min="{x0}" data-x-max="{x1}" data-y-min="{y0}" data-y-max="{y1}" data-left="{LEFT}" data-top="{TOP}" data-plot-width="{plot_w}" data-plot-height="{plot_h}">"#
    );
    let _ = writeln!(svg, r#"<rect width="{w}" height="{h}" fill="white"/>"#);
    let _ = writeln!(
        svg,
        r#"<text x="{}" y="24" text-anchor="middle" font-family="sans-serif" font-size="16">{}</text>"#,
        w / 2.0,
        escape(&spec.title)
    );

    // axes and ticks
    let _ = writeln!(
        svg,
        r#"<g stroke="black" stroke-width="1"><line x1="{LEFT}" y1="{b}" x2="{r}" y2="{b}"/><line x1="{LEFT}" y1="{TOP}" x2="{LEFT}" y2="{b}"/></g>"#,
        b = TOP + plot_h,
        r = LEFT + plot_w
    );
    let _ = writeln!(svg, r#"<g font-family="sans-serif" font-size="11">"#);
    for i in 0..=TICKS {
        let t = i as f64 / TICKS as f64;
        let xv = x0 + t * (x1 - x0);
        let yv = y0 + t * (y1 - y0);
        let _ = writeln!(
            svg,
            r#"<text x="{:.3}" y="{:.3}" text-anchor="middle">{}</text>"#,
            px(xv),
            TOP + plot_h + 16.0,
            crate::sweep::format_significant(xv, 4)
        );
        let _ = writeln!(
            svg,
            r#"<text x="{:.3}" y="{:.3}" text-anchor="end">{}</text>"#,
            LEFT - 6.0,
            py(yv) + 4.0,
            crate::sweep::format_significant(yv, 4)
        );
    }
    let _ = writeln!(svg, "</g>");
    let _ = writeln!(
        svg,
        r#"<text x="{:.3}" y="{:.3}" text-anchor="middle" font-family="sans-serif" font-size="13">{}</text>"#,
        LEFT + plot_w / 2.0,
        h - 12.0,
        escape(&spec.x_label)
    );
    let _ = writeln!(
        svg,
        r#"<text x="16" y="{y:.3}" text-anchor="middle" font-family="sans-serif" font-size="13" transform="rotate(-90 16 {y:.3})">{}</text>"#,
        escape(&spec.y_label),
        y = TOP + plot_h / 2.0
    );
    if y0 < 0.0 && y1 > 0.0 {
        let _ = writeln!(
            svg,
            r##"<line x1="{LEFT}" y1="{z:.3}" x2="{r}" y2="{z:.3}" stroke="#bbbbbb" stroke-width="1"/>"##,
            z = py(0.0),
            r = LEFT + plot_w
        );
    }

    for s in &spec.series {
        let dash = if s.dashed {
            r#" stroke-dasharray="6,4""#
        } else {
            ""
        };
        if rows.len() == 1 {
            let _ = writeln!(
                svg,
                r#"<circle data-series="{}" cx="{:.3}" cy="{:.3}" r="3" fill="{}"/>"#,
                escape(&s.name),
                px(xs[0]),
                py(s.values[0]),
                s.color
            );
            continue;
        }
        let points: Vec<String> = xs
            .iter()
            .zip(&s.values)
            .map(|(&x, &y)| format!("{:.3},{:.3}", px(x), py(y)))
            .collect();
        let _ = writeln!(
            svg,
            r#"<polyline data-series="{}" fill="none" stroke="{}" stroke-width="1.5"{dash} points="{}"/>"#,
            escape(&s.name),
            s.color,
            points.join(" ")
        );
    }

    // legend
    let _ = writeln!(svg, r#"<g font-family="sans-serif" font-size="12">"#);
    for (i, s) in spec.series.iter().enumerate() {
        let y = TOP + 14.0 + 18.0 * i as f64;
        let x = LEFT + 14.0;
        let dash = if s.dashed {
            r#" stroke-dasharray="6,4""#
        } else {
            ""
        };
        let _ = writeln!(
            svg,
            r#"<line x1="{x}" y1="{y}" x2="{}" y2="{y}" stroke="{}" stroke-width="2"{dash}/><text x="{}" y="{}">{}</text>"#,
            x + 30.0,
            s.color,
            x + 36.0,
            y + 4.0,
            escape(&s.name)
        );
    }
    let _ = writeln!(svg, "</g>");
    svg.push_str("</svg>\n");
    Ok(svg)
}

/// Renders and writes the chart; nothing is created on error.
pub fn emit_svg_chart(rows: &[SweepRow], spec: &ChartSpec, destination: &Path) -> Result<()> {
    let svg = render_svg(rows, spec)?;
    write_atomic(destination, svg.as_bytes())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sweep::run_sweep;
    use mub_entropy::LogBase;

    #[test]
    fn mismatched_series_rejected() {
        let rows = run_sweep(3, LogBase::two()).unwrap();
        let mut spec = ChartSpec::for_sweep(&rows, 3, "bits");
        spec.series[0].values.pop();
        assert!(render_svg(&rows, &spec).is_err());
        assert!(render_svg(&[], &spec).is_err());
    }

    #[test]
    fn single_row_uses_points() {
        let rows = run_sweep(3, LogBase::two()).unwrap()[..1].to_vec();
        let spec = ChartSpec::for_sweep(&rows, 3, "bits");
        let svg = render_svg(&rows, &spec).unwrap();
        assert!(!svg.contains("<polyline"));
        assert_eq!(svg.matches("<circle").count(), 4);
    }
}

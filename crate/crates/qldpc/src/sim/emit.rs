//! Result emission: CSV tables, JSON run manifests, and a static SVG
//! chart of BLER against the swept value.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use serde::Serialize;

use super::runs::{DeltaCostResult, SweepResult};
use super::SimError;

pub const CSV_HEADER: &str =
    "grid_value,trials,block_errors,bler,bler_lo,bler_hi,qber,mean_iters,curve,logical_failures,fd_value";

/// Render a sweep as CSV, one row per grid point per curve.
pub fn write_csv(result: &SweepResult) -> String {
    let mut out = String::new();
    out.push_str(CSV_HEADER);
    out.push('\n');
    for curve in &result.curves {
        for p in &curve.points {
            let fd = p.fd_value.map(|v| v.to_string()).unwrap_or_default();
            writeln!(
                out,
                "{},{},{},{},{},{},{},{},{},{},{}",
                p.grid_value,
                p.trials,
                p.block_errors,
                p.bler,
                p.bler_lo,
                p.bler_hi,
                p.qber,
                p.mean_iters,
                curve.label,
                p.logical_failures,
                fd
            )
            .expect("writing to a String cannot fail");
        }
    }
    out
}

#[derive(Serialize)]
struct Manifest<'a> {
    config: &'a super::config::ExperimentConfig,
    master_seed: u64,
    grid_label: &'a str,
    block_length: usize,
    code_hash: &'a str,
    annotations: &'a BTreeMap<String, f64>,
    /// Convention note: the estimator variance is 1/(n_probes * J(f_true)),
    /// with n_probes defaulting to the code block length.
    variance_convention: &'static str,
    wall_time_ms: u128,
}

/// Render the JSON run manifest for a sweep.
pub fn write_manifest(result: &SweepResult) -> String {
    let manifest = Manifest {
        config: &result.config,
        master_seed: result.master_seed,
        grid_label: &result.grid_label,
        block_length: result.block_length,
        code_hash: &result.code_hash,
        annotations: &result.annotations,
        variance_convention:
            "estimator variance = 1/(n_probes * J(f_true)); n_probes defaults to the block length",
        wall_time_ms: result.wall_time_ms,
    };
    serde_json::to_string_pretty(&manifest).expect("manifest serialization cannot fail")
}

/// Write CSV + manifest (+ optional SVG); returns the created paths.
pub fn emit_results(
    result: &SweepResult,
    out_dir: &Path,
    stem: &str,
    svg: bool,
) -> Result<Vec<PathBuf>, SimError> {
    std::fs::create_dir_all(out_dir)?;
    let mut written = Vec::new();

    let csv_path = out_dir.join(format!("{stem}.csv"));
    std::fs::write(&csv_path, write_csv(result))?;
    written.push(csv_path);

    let json_path = out_dir.join(format!("{stem}.json"));
    std::fs::write(&json_path, write_manifest(result))?;
    written.push(json_path);

    if svg {
        let svg_path = out_dir.join(format!("{stem}.svg"));
        std::fs::write(&svg_path, write_svg(result))?;
        written.push(svg_path);
    }
    Ok(written)
}

/// Write the delta cost scan: a CSV of (delta, bler) plus a JSON record of
/// the fit.
pub fn emit_delta_cost(
    result: &DeltaCostResult,
    out_dir: &Path,
    stem: &str,
) -> Result<Vec<PathBuf>, SimError> {
    std::fs::create_dir_all(out_dir)?;
    let mut csv = String::from("delta_ratio,trials,block_errors,bler,bler_lo,bler_hi\n");
    for p in &result.cost_points {
        writeln!(
            csv,
            "{},{},{},{},{},{}",
            p.grid_value, p.trials, p.block_errors, p.bler, p.bler_lo, p.bler_hi
        )
        .expect("writing to a String cannot fail");
    }
    let csv_path = out_dir.join(format!("{stem}.csv"));
    std::fs::write(&csv_path, csv)?;
    let json_path = out_dir.join(format!("{stem}.json"));
    std::fs::write(&json_path, serde_json::to_string_pretty(result)?)?;
    Ok(vec![csv_path, json_path])
}

const SVG_COLORS: [&str; 4] = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd"];

/// Static log-scale chart of BLER vs the swept value.
pub fn write_svg(result: &SweepResult) -> String {
    let (width, height) = (640.0, 440.0);
    let (left, right, top, bottom) = (70.0, 20.0, 20.0, 50.0);
    let plot_w = width - left - right;
    let plot_h = height - top - bottom;

    let xs: Vec<f64> = result
        .curves
        .iter()
        .flat_map(|c| c.points.iter().map(|p| p.grid_value))
        .collect();
    let positive_blers: Vec<f64> = result
        .curves
        .iter()
        .flat_map(|c| c.points.iter().map(|p| p.bler))
        .filter(|b| *b > 0.0)
        .collect();
    let mut svg = String::new();
    writeln!(
        svg,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{width}\" height=\"{height}\" \
         viewBox=\"0 0 {width} {height}\" font-family=\"sans-serif\" font-size=\"11\">"
    )
    .unwrap();
    svg.push_str("<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n");

    if xs.is_empty() || positive_blers.is_empty() {
        svg.push_str("<text x=\"50%\" y=\"50%\" text-anchor=\"middle\">no data</text>\n</svg>\n");
        return svg;
    }

    let x_min = xs.iter().copied().fold(f64::INFINITY, f64::min);
    let x_max = xs.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let x_span = (x_max - x_min).max(1e-12);
    let y_min_log = positive_blers
        .iter()
        .copied()
        .fold(f64::INFINITY, f64::min)
        .log10()
        .floor();
    let y_max_log = 0.0f64; // BLER <= 1
    let y_span = (y_max_log - y_min_log).max(1.0);

    let x_of = |v: f64| left + (v - x_min) / x_span * plot_w;
    let y_of = |bler: f64| {
        let clamped = bler.max(10f64.powf(y_min_log));
        top + (y_max_log - clamped.log10()) / y_span * plot_h
    };

    // Axes and log ticks.
    writeln!(
        svg,
        "<rect x=\"{left}\" y=\"{top}\" width=\"{plot_w}\" height=\"{plot_h}\" fill=\"none\" stroke=\"black\"/>"
    )
    .unwrap();
    let mut decade = y_min_log;
    while decade <= y_max_log + 1e-9 {
        let y = y_of(10f64.powf(decade));
        write!(
            svg,
            "<line x1=\"{left}\" y1=\"{y:.2}\" x2=\"{:.2}\" y2=\"{y:.2}\" stroke=\"#ddd\"/>\n\
             <text x=\"{:.2}\" y=\"{:.2}\" text-anchor=\"end\">1e{decade:.0}</text>\n",
            left + plot_w,
            left - 6.0,
            y + 4.0
        )
        .unwrap();
        decade += 1.0;
    }
    for k in 0..=4 {
        let v = x_min + x_span * k as f64 / 4.0;
        let x = x_of(v);
        writeln!(
            svg,
            "<text x=\"{x:.2}\" y=\"{:.2}\" text-anchor=\"middle\">{v:.4}</text>",
            top + plot_h + 18.0
        )
        .unwrap();
    }
    writeln!(
        svg,
        "<text x=\"{:.2}\" y=\"{:.2}\" text-anchor=\"middle\">{}</text>",
        left + plot_w / 2.0,
        height - 12.0,
        result.grid_label
    )
    .unwrap();

    for (ci, curve) in result.curves.iter().enumerate() {
        let color = SVG_COLORS[ci % SVG_COLORS.len()];
        let path: Vec<String> = curve
            .points
            .iter()
            .map(|p| format!("{:.2},{:.2}", x_of(p.grid_value), y_of(p.bler)))
            .collect();
        if path.len() > 1 {
            writeln!(
                svg,
                "<polyline points=\"{}\" fill=\"none\" stroke=\"{color}\" stroke-width=\"1.5\"/>",
                path.join(" ")
            )
            .unwrap();
        }
        for p in &curve.points {
            writeln!(
                svg,
                "<circle cx=\"{:.2}\" cy=\"{:.2}\" r=\"2.5\" fill=\"{color}\"/>",
                x_of(p.grid_value),
                y_of(p.bler)
            )
            .unwrap();
        }
        writeln!(
            svg,
            "<text x=\"{:.2}\" y=\"{:.2}\" fill=\"{color}\">{}</text>",
            left + plot_w - 90.0,
            top + 16.0 + 14.0 * ci as f64,
            curve.label
        )
        .unwrap();
    }
    svg.push_str("</svg>\n");
    svg
}

//! CSV, TOML and SVG artifacts.
//!
//! Floats are written with Rust's shortest round-trip formatting, so equal
//! inputs always produce byte-identical files.

use std::fmt::Write as _;
use std::path::Path;

use crate::error::{Error, Result};
use crate::heterodyne::{DispersionTrace, ScanSpec, LOCKIN_GAIN, LOCKIN_OFFSET};
use crate::medium::CouplingProfile;
use crate::metrics::PulseMetrics;
use crate::signal::TimeTrace;
use crate::sweep::SweepRow;

pub const SWEEP_HEADER: &str =
    "separation_hz,peak_shift_s,fwhm_in_s,fwhm_out_s,compression,beat_hz,energy_gain";

fn write_file(path: &Path, contents: &str) -> Result<()> {
    std::fs::write(path, contents).map_err(|e| Error::io(path, e))
}

pub fn sweep_csv(rows: &[SweepRow]) -> String {
    let mut out = String::from(SWEEP_HEADER);
    out.push('\n');
    for r in rows {
        let beat = r.beat.map(|b| b.to_string()).unwrap_or_default();
        let _ = writeln!(
            out,
            "{},{},{},{},{},{},{}",
            r.separation, r.peak_shift, r.fwhm_in, r.fwhm_out, r.fwhm_ratio, beat, r.energy_gain
        );
    }
    out
}

pub fn write_sweep_csv(rows: &[SweepRow], path: &Path) -> Result<()> {
    write_file(path, &sweep_csv(rows))
}

/// Two columns: time and peak-normalized intensity.
pub fn trace_csv(trace: &TimeTrace) -> String {
    let mut out = String::from("time_s,normalized_intensity\n");
    for (k, v) in trace.normalized_intensity().iter().enumerate() {
        let _ = writeln!(out, "{},{}", trace.grid.time(k), v);
    }
    out
}

pub fn write_trace_csv(trace: &TimeTrace, path: &Path) -> Result<()> {
    write_file(path, &trace_csv(trace))
}

pub fn profile_csv(profile: &CouplingProfile) -> String {
    let mut out = String::from("detuning_hz,gamma_in,gamma_ph_rad\n");
    for ((d, gi), gp) in profile.detunings.iter().zip(&profile.gamma_in).zip(&profile.gamma_ph) {
        let _ = writeln!(out, "{d},{gi},{gp}");
    }
    out
}

pub fn write_profile_csv(profile: &CouplingProfile, path: &Path) -> Result<()> {
    write_file(path, &profile_csv(profile))
}

pub fn dispersion_csv(trace: &DispersionTrace) -> String {
    let mut out = String::from("detuning_hz,absolute_detuning_hz,phase_rad\n");
    for ((d, a), p) in trace
        .detunings
        .iter()
        .zip(trace.absolute_detunings())
        .zip(&trace.phase)
    {
        let _ = writeln!(out, "{d},{a},{p}");
    }
    out
}

pub fn write_dispersion_csv(trace: &DispersionTrace, path: &Path) -> Result<()> {
    write_file(path, &dispersion_csv(trace))
}

/// Scan settings plus the lock-in calibration assumed by the model.
pub fn scan_metadata(scan: &ScanSpec, traces: &[&DispersionTrace]) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "ramp_min = {:?}", scan.ramp_min);
    let _ = writeln!(out, "ramp_max = {:?}", scan.ramp_max);
    let _ = writeln!(out, "n_points = {}", scan.n_points);
    let _ = writeln!(out, "modulation_frequency = {:?}", scan.modulation_frequency);
    let offsets: Vec<String> = traces.iter().map(|t| format!("{:?}", t.pump_offset)).collect();
    let _ = writeln!(out, "pump_offsets = [{}]", offsets.join(", "));
    let _ = writeln!(out, "# demodulated output = gain * medium phase + offset; neither is calibrated");
    let _ = writeln!(out, "lockin_gain = {LOCKIN_GAIN:?}");
    let _ = writeln!(out, "lockin_offset = {LOCKIN_OFFSET:?}");
    let _ = writeln!(out, "lockin_calibrated = false");
    out
}

pub fn metrics_toml(metrics: &PulseMetrics) -> Result<String> {
    toml::to_string(metrics).map_err(|e| Error::Parse(e.to_string()))
}

pub fn write_metrics(metrics: &PulseMetrics, path: &Path) -> Result<()> {
    write_file(path, &metrics_toml(metrics)?)
}

/// One curve of a line plot.
pub struct Series<'a> {
    pub label: &'a str,
    pub x: &'a [f64],
    pub y: &'a [f64],
    pub dashed: bool,
}

/// Minimal static SVG line plot.
pub fn line_plot_svg(title: &str, x_label: &str, series: &[Series<'_>]) -> String {
    const W: f64 = 640.0;
    const H: f64 = 400.0;
    const M: f64 = 50.0;
    let finite = |v: &&f64| v.is_finite();
    let xs = series.iter().flat_map(|s| s.x.iter()).filter(finite);
    let ys = series.iter().flat_map(|s| s.y.iter()).filter(finite);
    let (x0, x1) = xs.fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), &v| (a.min(v), b.max(v)));
    let (mut y0, mut y1) = ys.fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), &v| (a.min(v), b.max(v)));
    if !(y1 > y0) {
        y0 -= 1.0;
        y1 += 1.0;
    }
    let sx = |x: f64| M + (x - x0) / (x1 - x0).max(f64::MIN_POSITIVE) * (W - 2.0 * M);
    let sy = |y: f64| H - M - (y - y0) / (y1 - y0) * (H - 2.0 * M);
    let colors = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd"];

    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{W}" height="{H}" font-family="sans-serif" font-size="12">"#
    );
    let _ = writeln!(out, r#"<rect width="{W}" height="{H}" fill="white"/>"#);
    let _ = writeln!(
        out,
        r#"<rect x="{M}" y="{M}" width="{}" height="{}" fill="none" stroke="black"/>"#,
        W - 2.0 * M,
        H - 2.0 * M
    );
    let _ = writeln!(out, r#"<text x="{}" y="25" text-anchor="middle">{title}</text>"#, W / 2.0);
    let _ = writeln!(out, r#"<text x="{}" y="{}" text-anchor="middle">{x_label}</text>"#, W / 2.0, H - 12.0);
    let _ = writeln!(out, r#"<text x="{M}" y="{}">{x0:.3}</text>"#, H - M + 15.0);
    let _ = writeln!(out, r#"<text x="{}" y="{}" text-anchor="end">{x1:.3}</text>"#, W - M, H - M + 15.0);
    for (i, s) in series.iter().enumerate() {
        let color = colors[i % colors.len()];
        let points: Vec<String> = s
            .x
            .iter()
            .zip(s.y)
            .filter(|(x, y)| x.is_finite() && y.is_finite())
            .map(|(&x, &y)| format!("{:.2},{:.2}", sx(x), sy(y)))
            .collect();
        let dash = if s.dashed { r#" stroke-dasharray="6,4""# } else { "" };
        let _ = writeln!(
            out,
            r#"<polyline fill="none" stroke="{color}" stroke-width="1.5"{dash} points="{}"/>"#,
            points.join(" ")
        );
        let _ = writeln!(
            out,
            r#"<text x="{}" y="{}" fill="{color}">{}</text>"#,
            W - M - 120.0,
            M + 15.0 + 15.0 * i as f64,
            s.label
        );
    }
    out.push_str("</svg>\n");
    out
}

pub fn write_svg(svg: &str, path: &Path) -> Result<()> {
    write_file(path, svg)
}

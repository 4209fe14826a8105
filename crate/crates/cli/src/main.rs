//! `doublet`: command-line front end for the gain-doublet simulator.
//!
//! Exit status is 0 on success, 1 on a usage error (bad flags, unreadable
//! or invalid config, bad override) and 2 when the computation itself fails.

use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use doublet::config::read_config;
use doublet::heterodyne::{dual_trace, simulate_scan, ScanSpec};
use doublet::medium::{dispersion_profile, symmetric_grid};
use doublet::output::{
    line_plot_svg, scan_metadata, write_dispersion_csv, write_metrics,
    write_profile_csv, write_svg, write_sweep_csv, write_trace_csv, Series,
};
use doublet::sweep::{run_config, run_sweep, Preset};
use doublet::{write_config, OutputKind, ScenarioConfig};

#[derive(Parser, Debug)]
#[command(name = "doublet", version, about = "Pulse propagation through a bi-frequency pumped photorefractive gain doublet")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Write the coupling profile (gamma_in, gamma_ph) of the medium.
    Coeffs {
        #[command(flatten)]
        sel: Selection,
        /// Half width of the detuning grid (Hz); overrides profile.span.
        #[arg(long)]
        span: Option<f64>,
        /// Number of detuning points; overrides profile.n_points.
        #[arg(long)]
        points: Option<usize>,
        /// Also write an SVG plot.
        #[arg(long)]
        svg: bool,
    },
    /// Propagate the configured pulse and write traces and metrics.
    Propagate {
        #[command(flatten)]
        sel: Selection,
        #[arg(long)]
        svg: bool,
    },
    /// Propagate the base pulse through doublets at several separations.
    Sweep {
        #[command(flatten)]
        sel: Selection,
        /// Comma-separated full separations (Hz). Defaults to the preset's
        /// series, or to the config's own separation.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        separations: Option<Vec<f64>>,
    },
    /// Simulate the lock-in dispersion scan around a pump.
    Heterodyne {
        #[command(flatten)]
        sel: Selection,
        /// Ramp start relative to the selected pump (Hz).
        #[arg(long, default_value_t = -0.5, allow_hyphen_values = true)]
        ramp_min: f64,
        #[arg(long, default_value_t = 0.5, allow_hyphen_values = true)]
        ramp_max: f64,
        #[arg(long, default_value_t = 201)]
        points: usize,
        /// Index of the gain line the ramp is centered on.
        #[arg(long, default_value_t = 0)]
        pump: usize,
        /// Scan around both pumps of a doublet.
        #[arg(long)]
        dual: bool,
        #[arg(long)]
        svg: bool,
    },
    /// List the built-in presets.
    Presets,
}

#[derive(Args, Debug)]
struct Selection {
    /// Built-in preset name (see `doublet presets`).
    #[arg(long, conflicts_with = "config", required_unless_present = "config")]
    preset: Option<String>,
    /// Scenario index within the preset.
    #[arg(long, default_value_t = 0)]
    index: usize,
    /// Scenario config file (TOML).
    #[arg(long, value_name = "PATH")]
    config: Option<PathBuf>,
    /// Override a config value, e.g. `medium.lines.0.strength=0`. Repeatable;
    /// applied left to right.
    #[arg(long = "set", value_name = "KEY=VALUE")]
    overrides: Vec<String>,
    /// Directory for output files.
    #[arg(short, long = "output-dir", default_value = ".")]
    output_dir: PathBuf,
}

enum Failure {
    Usage(String),
    Compute(String),
}

impl Failure {
    fn compute(e: impl std::fmt::Display) -> Self {
        Failure::Compute(e.to_string())
    }
}

struct Resolved {
    cfg: ScenarioConfig,
    preset: Option<Preset>,
    stem: String,
    dir: PathBuf,
}

impl Resolved {
    fn path(&self, suffix: &str) -> PathBuf {
        self.dir.join(format!("{}_{suffix}", self.stem))
    }
}

fn resolve(cmd: &str, sel: &Selection) -> Result<Resolved, Failure> {
    let (base, preset, source) = match (&sel.preset, &sel.config) {
        (Some(name), _) => {
            let p = Preset::from_name(name).map_err(|e| Failure::Usage(e.to_string()))?;
            let cfgs = p.configs();
            let cfg = cfgs.get(sel.index).cloned().ok_or_else(|| {
                Failure::Usage(format!(
                    "index {} out of range for preset '{name}' ({} scenarios)",
                    sel.index,
                    cfgs.len()
                ))
            })?;
            (cfg, Some(p), p.name().to_string())
        }
        (None, Some(path)) => {
            let cfg = read_config(path).map_err(|e| Failure::Usage(e.to_string()))?;
            let stem = path
                .file_stem()
                .map(|s| s.to_string_lossy().into_owned())
                .unwrap_or_else(|| "config".into());
            (cfg, None, stem)
        }
        (None, None) => return Err(Failure::Usage("one of --preset or --config is required".into())),
    };
    let cfg = base
        .with_overrides(&sel.overrides)
        .map_err(|e| Failure::Usage(e.to_string()))?;
    Ok(Resolved {
        cfg,
        preset,
        stem: format!("{cmd}_{source}_{}", sel.index),
        dir: sel.output_dir.clone(),
    })
}

fn prepare(r: &Resolved) -> Result<(), Failure> {
    fs::create_dir_all(&r.dir)
        .map_err(|e| Failure::Compute(format!("cannot create {}: {e}", r.dir.display())))?;
    write_config(&r.cfg, &r.path("resolved_config.toml")).map_err(Failure::compute)
}

// A closed stdout (e.g. piped into `head`) is not an error for a writer of files.
macro_rules! say {
    ($($t:tt)*) => {{
        let _ = writeln!(io::stdout(), $($t)*);
    }};
}

fn note(path: &Path) {
    say!("wrote {}", path.display());
}

fn coeffs(sel: &Selection, span: Option<f64>, points: Option<usize>, svg: bool) -> Result<(), Failure> {
    let mut r = resolve("coeffs", sel)?;
    if let Some(s) = span {
        r.cfg.profile.span = s;
    }
    if let Some(n) = points {
        r.cfg.profile.n_points = n;
    }
    let grid = symmetric_grid(r.cfg.profile.span, r.cfg.profile.n_points)
        .map_err(|e| Failure::Usage(e.to_string()))?;
    prepare(&r)?;
    let profile = dispersion_profile(&r.cfg.medium, &grid).map_err(Failure::compute)?;
    let path = r.path("profile.csv");
    write_profile_csv(&profile, &path).map_err(Failure::compute)?;
    note(&path);
    if svg {
        let plot = line_plot_svg(
            &r.cfg.name,
            "detuning (Hz)",
            &[
                Series { label: "gamma_in", x: &profile.detunings, y: &profile.gamma_in, dashed: false },
                Series { label: "gamma_ph", x: &profile.detunings, y: &profile.gamma_ph, dashed: true },
            ],
        );
        let path = r.path("profile.svg");
        write_svg(&plot, &path).map_err(Failure::compute)?;
        note(&path);
    }
    Ok(())
}

fn propagate(sel: &Selection, svg: bool) -> Result<(), Failure> {
    let r = resolve("propagate", sel)?;
    prepare(&r)?;
    let cfg = &r.cfg;
    let res = run_config(cfg).map_err(Failure::compute)?;
    if cfg.wants(OutputKind::Traces) {
        for trace in [&res.reference, &res.output] {
            let path = r.path(&format!("{}.csv", trace.label));
            write_trace_csv(trace, &path).map_err(Failure::compute)?;
            note(&path);
        }
    }
    if cfg.wants(OutputKind::Metrics) {
        let path = r.path("metrics.toml");
        write_metrics(&res.metrics, &path).map_err(Failure::compute)?;
        note(&path);
    }
    if cfg.wants(OutputKind::Profile) {
        let grid = cfg.profile_grid().map_err(Failure::compute)?;
        let profile = dispersion_profile(&cfg.medium, &grid).map_err(Failure::compute)?;
        let path = r.path("profile.csv");
        write_profile_csv(&profile, &path).map_err(Failure::compute)?;
        note(&path);
    }
    if svg {
        let t = res.reference.grid.times();
        let (a, b) = (res.reference.normalized_intensity(), res.output.normalized_intensity());
        let plot = line_plot_svg(
            &cfg.name,
            "time (s)",
            &[
                Series { label: "reference", x: &t, y: &a, dashed: true },
                Series { label: "output", x: &t, y: &b, dashed: false },
            ],
        );
        let path = r.path("traces.svg");
        write_svg(&plot, &path).map_err(Failure::compute)?;
        note(&path);
    }
    let m = &res.metrics;
    say!("peak_shift_s = {:.6}", m.peak_shift);
    say!("compression = {:.6}", m.compression_ratio);
    match m.beat_frequency {
        Some(b) => say!("beat_hz = {b:.6}"),
        None => say!("beat_hz = none"),
    }
    say!("energy_gain = {:.6e}", m.energy_gain);
    Ok(())
}

fn sweep(sel: &Selection, separations: &Option<Vec<f64>>) -> Result<(), Failure> {
    let r = resolve("sweep", sel)?;
    let seps = match (separations, r.preset) {
        (Some(s), _) => s.clone(),
        (None, Some(p)) => p.separations(),
        (None, None) => vec![r.cfg.medium.separation().ok_or_else(|| {
            Failure::Usage("config medium is not a two-line doublet; pass --separations".into())
        })?],
    };
    if let Some(bad) = seps.iter().find(|s| !(s.is_finite() && **s >= 0.0)) {
        return Err(Failure::Usage(format!("separations must be finite and >= 0, got {bad}")));
    }
    prepare(&r)?;
    let rows = run_sweep(&r.cfg, &seps).map_err(Failure::compute)?;
    let path = r.path("rows.csv");
    write_sweep_csv(&rows, &path).map_err(Failure::compute)?;
    note(&path);
    Ok(())
}

fn heterodyne(sel: &Selection, scan: ScanSpec, dual: bool, svg: bool) -> Result<(), Failure> {
    let r = resolve("heterodyne", sel)?;
    scan.validate().map_err(|e| Failure::Usage(e.to_string()))?;
    if dual && r.cfg.medium.lines.len() != 2 {
        return Err(Failure::Usage(format!(
            "--dual needs exactly two gain lines, medium has {}",
            r.cfg.medium.lines.len()
        )));
    }
    if !dual && scan.pump_selector >= r.cfg.medium.lines.len() {
        return Err(Failure::Usage(format!(
            "--pump {} out of range, medium has {} lines",
            scan.pump_selector,
            r.cfg.medium.lines.len()
        )));
    }
    prepare(&r)?;
    let traces = if dual {
        let (lo, hi) = dual_trace(&r.cfg.medium, &scan).map_err(Failure::compute)?;
        vec![("lower", lo), ("upper", hi)]
    } else {
        vec![("scan", simulate_scan(&r.cfg.medium, &scan).map_err(Failure::compute)?)]
    };
    for (tag, tr) in &traces {
        let path = r.path(&format!("{tag}.csv"));
        write_dispersion_csv(tr, &path).map_err(Failure::compute)?;
        note(&path);
    }
    let refs: Vec<_> = traces.iter().map(|(_, t)| t).collect();
    let path = r.path("meta.toml");
    fs::write(&path, scan_metadata(&scan, &refs))
        .map_err(|e| Failure::Compute(format!("cannot write {}: {e}", path.display())))?;
    note(&path);
    if svg {
        let xs: Vec<Vec<f64>> = traces.iter().map(|(_, t)| t.absolute_detunings()).collect();
        let series: Vec<Series> = traces
            .iter()
            .zip(&xs)
            .map(|((tag, t), x)| Series { label: tag, x, y: &t.phase, dashed: false })
            .collect();
        let plot = line_plot_svg(&r.cfg.name, "detuning (Hz)", &series);
        let path = r.path("scan.svg");
        write_svg(&plot, &path).map_err(Failure::compute)?;
        note(&path);
    }
    Ok(())
}

fn presets() {
    for p in Preset::ALL {
        say!("{:<6} {} ({} scenarios)", p.name(), p.description(), p.configs().len());
    }
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Coeffs { sel, span, points, svg } => coeffs(&sel, span, points, svg),
        Command::Propagate { sel, svg } => propagate(&sel, svg),
        Command::Sweep { sel, separations } => sweep(&sel, &separations),
        Command::Heterodyne { sel, ramp_min, ramp_max, points, pump, dual, svg } => {
            let scan = ScanSpec {
                ramp_min,
                ramp_max,
                n_points: points,
                pump_selector: pump,
                ..ScanSpec::default()
            };
            heterodyne(&sel, scan, dual, svg)
        }
        Command::Presets => {
            presets();
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Compute(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

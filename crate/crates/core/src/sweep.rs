//! Built-in scenarios and gain-separation sweeps.

use rayon::prelude::*;

use crate::config::{GridSpec, OutputKind, ProfileSpec, PulseSpec, ScenarioConfig};
use crate::error::{Error, Result};
use crate::medium::{Convention, MediumSpec};
use crate::propagator::{run_scenario, PropagationResult};

/// Gain separations (Hz) of the four-panel series.
pub const PAPER_SEPARATIONS: [f64; 4] = [0.0, 1.0, 2.0, 4.0];

/// Per-line coupling-length product of the reference crystal.
pub const PAPER_STRENGTH: f64 = 6.0;
/// Space-charge rise time of the reference crystal (s).
pub const PAPER_RESPONSE_TIME: f64 = 1.1;
/// Gaussian `t0` of the probe (s).
pub const PAPER_T0: f64 = 0.6;
/// Interaction length (m).
pub const PAPER_LENGTH: f64 = 0.005;
/// Rise time assumed for the fast (millisecond) crystal (s).
pub const FAST_RESPONSE_TIME: f64 = 1e-3;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Preset {
    /// Coupling profiles for the four separations.
    Fig1,
    /// Simulated pulse outputs for the four separations.
    Fig2,
    /// Same series, matching the measured-pulse panels.
    Fig4,
    /// Fig2 rescaled to a crystal with a 1 ms response time.
    Sps,
}

impl Preset {
    pub const ALL: [Preset; 4] = [Preset::Fig1, Preset::Fig2, Preset::Fig4, Preset::Sps];

    pub fn name(self) -> &'static str {
        match self {
            Preset::Fig1 => "fig1",
            Preset::Fig2 => "fig2",
            Preset::Fig4 => "fig4",
            Preset::Sps => "sps",
        }
    }

    pub fn description(self) -> &'static str {
        match self {
            Preset::Fig1 => {
                "coupling profiles, separations 0/1/2/4 Hz, strength 6 per line, tau 1.1 s, t0 0.6 s"
            }
            Preset::Fig2 => {
                "pulse propagation, separations 0/1/2/4 Hz: delay, 1 Hz beat, advance, reduced advance"
            }
            Preset::Fig4 => "measured-pulse series, separations 0/1/2/4 Hz, same crystal model as fig2",
            Preset::Sps => {
                "fig2 rescaled to tau = 1 ms: identical strength, separation*tau and t0/tau"
            }
        }
    }

    pub fn from_name(name: &str) -> Result<Preset> {
        Preset::ALL
            .into_iter()
            .find(|p| p.name() == name)
            .ok_or_else(|| {
                let known: Vec<&str> = Preset::ALL.iter().map(|p| p.name()).collect();
                Error::Config(format!(
                    "unknown preset '{name}'; available presets: {}",
                    known.join(", ")
                ))
            })
    }

    /// Separations (Hz) of the preset's configs, in order.
    pub fn separations(self) -> Vec<f64> {
        let scale = 1.0 / self.time_scale();
        PAPER_SEPARATIONS.iter().map(|s| s * scale).collect()
    }

    /// Factor applied to every time quantity of the reference crystal.
    pub fn time_scale(self) -> f64 {
        match self {
            Preset::Sps => FAST_RESPONSE_TIME / PAPER_RESPONSE_TIME,
            _ => 1.0,
        }
    }

    pub fn configs(self) -> Vec<ScenarioConfig> {
        let k = self.time_scale();
        let tau = match self {
            Preset::Sps => FAST_RESPONSE_TIME,
            _ => PAPER_RESPONSE_TIME,
        };
        let outputs = match self {
            Preset::Fig1 => vec![OutputKind::Profile],
            Preset::Fig2 | Preset::Sps => vec![OutputKind::Traces, OutputKind::Metrics],
            Preset::Fig4 => vec![OutputKind::Traces, OutputKind::Metrics, OutputKind::Profile],
        };
        let grid = GridSpec::default();
        let profile = ProfileSpec::default();
        self.separations()
            .into_iter()
            .enumerate()
            .map(|(i, sep)| {
                let medium = MediumSpec::doublet(
                    0.5 * sep,
                    PAPER_STRENGTH,
                    tau,
                    PAPER_LENGTH,
                    Convention::AngularFrequency,
                )
                .expect("preset medium is valid");
                ScenarioConfig {
                    name: format!("{}-{}", self.name(), i),
                    outputs: outputs.clone(),
                    medium,
                    pulse: PulseSpec {
                        t0: PAPER_T0 * k,
                        peak_time: 0.0,
                    },
                    grid: GridSpec {
                        n_samples: grid.n_samples,
                        dt: grid.dt * k,
                    },
                    profile: ProfileSpec {
                        span: profile.span / k,
                        n_points: profile.n_points,
                    },
                }
            })
            .collect()
    }
}

pub fn preset(name: &str) -> Result<Vec<ScenarioConfig>> {
    Ok(Preset::from_name(name)?.configs())
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepRow {
    /// Full gain separation 2Δ (Hz).
    pub separation: f64,
    pub peak_shift: f64,
    pub fwhm_in: f64,
    pub fwhm_out: f64,
    pub fwhm_ratio: f64,
    pub beat: Option<f64>,
    pub energy_gain: f64,
}

impl SweepRow {
    fn from_result(separation: f64, r: &PropagationResult) -> Self {
        let m = &r.metrics;
        SweepRow {
            separation,
            peak_shift: m.peak_shift,
            fwhm_in: m.fwhm_in,
            fwhm_out: m.fwhm_out,
            fwhm_ratio: m.compression_ratio,
            beat: m.beat_frequency,
            energy_gain: m.energy_gain,
        }
    }
}

/// Run one scenario from a config.
pub fn run_config(cfg: &ScenarioConfig) -> Result<PropagationResult> {
    cfg.validate()?;
    run_scenario(&cfg.pulse()?, &cfg.medium)
}

/// Base medium rebuilt as a symmetric doublet at the given full separation.
///
/// Strength and response time come from the first line of `base`.
pub fn doublet_at(base: &MediumSpec, separation: f64) -> Result<MediumSpec> {
    if !(separation >= 0.0 && separation.is_finite()) {
        return Err(Error::Config(format!(
            "sweep separations must be finite and >= 0, got {separation}"
        )));
    }
    let line = base
        .lines
        .first()
        .ok_or_else(|| Error::Config("base medium has no gain lines".into()))?;
    let mut medium = MediumSpec::doublet(
        0.5 * separation,
        line.strength,
        line.response_time,
        base.length,
        base.convention,
    )?;
    medium.mean_index = base.mean_index;
    medium.validate()?;
    Ok(medium)
}

/// Propagate the base pulse through a doublet at each separation.
///
/// Points run in parallel; rows come back in input order.
pub fn run_sweep(base: &ScenarioConfig, separations: &[f64]) -> Result<Vec<SweepRow>> {
    base.validate()?;
    let media = separations
        .iter()
        .map(|&s| doublet_at(&base.medium, s))
        .collect::<Result<Vec<_>>>()?;
    let pulse = base.pulse()?;
    separations
        .par_iter()
        .zip(media.par_iter())
        .map(|(&sep, medium)| Ok(SweepRow::from_result(sep, &run_scenario(&pulse, medium)?)))
        .collect()
}

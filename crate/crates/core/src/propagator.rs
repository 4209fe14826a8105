//! Linear propagation through the pumped crystal.
//!
//! With undepleted pumps the crystal acts as a fixed spectral filter: every
//! probe component at detuning `f` leaves multiplied by
//! `exp(gamma_in(f)) · exp(i·gamma_ph(f))`.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::medium::MediumSpec;
use crate::metrics::{compute_metrics_with, PulseMetrics, DEFAULT_BEAT_THRESHOLD};
use crate::signal::{forward_transform, inverse_transform, Spectrum, TimeTrace};

/// Largest intensity coupling accepted before the filter would overflow.
pub const DEFAULT_GAIN_CAP: f64 = 50.0;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PropagationOptions {
    pub gain_cap: f64,
    pub beat_threshold: f64,
}

impl Default for PropagationOptions {
    fn default() -> Self {
        PropagationOptions {
            gain_cap: DEFAULT_GAIN_CAP,
            beat_threshold: DEFAULT_BEAT_THRESHOLD,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct PropagationResult {
    pub input: TimeTrace,
    /// Free-space copy of the input; the crystal's geometric transit time is
    /// far below one sample.
    pub reference: TimeTrace,
    pub output: TimeTrace,
    pub medium: MediumSpec,
    pub metrics: PulseMetrics,
}

pub fn apply_medium(spec: &Spectrum, medium: &MediumSpec) -> Result<Spectrum> {
    apply_medium_with_cap(spec, medium, DEFAULT_GAIN_CAP)
}

pub fn apply_medium_with_cap(spec: &Spectrum, medium: &MediumSpec, gain_cap: f64) -> Result<Spectrum> {
    spec.validate()?;
    medium.validate()?;
    let grid = spec.grid;
    let mut peak = f64::NEG_INFINITY;
    let samples = spec
        .samples
        .iter()
        .enumerate()
        .map(|(j, s)| {
            let f = grid.detuning(j);
            let gain = medium.gamma_in_at(f);
            peak = peak.max(gain);
            s * Complex64::from_polar(gain.exp(), medium.gamma_ph_at(f))
        })
        .collect();
    if peak > gain_cap {
        return Err(Error::GainOverflow { peak, cap: gain_cap });
    }
    Ok(Spectrum { grid, samples })
}

pub fn run_scenario(pulse: &TimeTrace, medium: &MediumSpec) -> Result<PropagationResult> {
    run_scenario_with(pulse, medium, PropagationOptions::default())
}

pub fn run_scenario_with(
    pulse: &TimeTrace,
    medium: &MediumSpec,
    options: PropagationOptions,
) -> Result<PropagationResult> {
    pulse.validate()?;
    let filtered = apply_medium_with_cap(&forward_transform(pulse)?, medium, options.gain_cap)?;
    let output = inverse_transform(&filtered)?.with_label("output");
    let reference = pulse.clone().with_label("reference");
    let metrics = compute_metrics_with(&reference, &output, options.beat_threshold)?;
    Ok(PropagationResult {
        input: pulse.clone().with_label("input"),
        reference,
        output,
        medium: medium.clone(),
        metrics,
    })
}

//! Pulse propagation through a photorefractive crystal pumped at two
//! frequencies.
//!
//! Two pumps detuned by `±Δ` from the probe carrier each write a two-wave
//! mixing gain line. Between the lines the phase coupling falls with
//! frequency, so a probe pulse sitting there is advanced instead of delayed.
//! The crate evaluates the coupling coefficients, propagates Gaussian probes
//! through the resulting spectral filter, extracts pulse metrics, models the
//! lock-in dispersion scan and runs parameter sweeps.

pub mod config;
pub mod error;
pub mod heterodyne;
pub mod medium;
pub mod metrics;
pub mod output;
pub mod propagator;
pub mod signal;
pub mod sweep;

pub use config::{read_config, write_config, OutputKind, ScenarioConfig};
pub use error::{Error, Result};
pub use heterodyne::{dual_trace, simulate_scan, DispersionTrace, ScanSpec};
pub use medium::{
    classify_dispersion, dispersion_profile, gamma_ph_slope, group_delay, line_gamma_in,
    line_gamma_ph, separation_for_target_slope, total_coupling, Convention, CouplingProfile,
    DispersionClass, GainLine, MediumSpec,
};
pub use metrics::{beat_frequency, energy_gain, fwhm, peak_shift, PulseMetrics};
pub use propagator::{apply_medium, run_scenario, PropagationResult};
pub use signal::{forward_transform, gaussian_pulse, inverse_transform, make_grid, SampleGrid, Spectrum, TimeTrace};
pub use sweep::{preset, run_config, run_sweep, Preset, SweepRow};

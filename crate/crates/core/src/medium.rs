//! Coupling coefficients of a photorefractive gain doublet.
//!
//! Each pump writes a grating that gives the probe a Lorentzian intensity
//! coupling and a dispersive phase coupling:
//!
//! ```text
//! gamma_in = (s/2) / (1 + x^2)        gamma_ph = (s/2) x / (1 + x^2)
//! x = u (delta - center) tau
//! ```
//!
//! where `s` is the product of the coupling constant and interaction length,
//! `tau` the space-charge rise time, and `u` the detuning convention factor
//! (1 when detunings are read as ordinary frequency, 2π when read as angular).
//! All detunings are carried in Hz. Slopes are taken with respect to angular
//! frequency so that they read directly as group delay in seconds.

use std::f64::consts::TAU;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Dead band (seconds) below which a center slope is reported as flat.
pub const DEFAULT_FLAT_DEAD_BAND: f64 = 1e-12;

/// Mean refractive index used when a config does not give one.
pub const DEFAULT_MEAN_INDEX: f64 = 2.4;

/// How the product `detuning * response_time` is formed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "kebab-case")]
pub enum Convention {
    /// `x = f * tau` with `f` in Hz.
    OrdinaryFrequency,
    /// `x = 2π f * tau`, i.e. the detuning enters as angular frequency.
    #[default]
    AngularFrequency,
}

impl Convention {
    /// Factor converting a detuning in Hz into the measure used inside `x`.
    pub fn factor(self) -> f64 {
        match self {
            Convention::OrdinaryFrequency => 1.0,
            Convention::AngularFrequency => TAU,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Convention::OrdinaryFrequency => "ordinary-frequency",
            Convention::AngularFrequency => "angular-frequency",
        }
    }
}

/// One pump-induced gain resonance.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GainLine {
    /// Pump detuning from the probe carrier (Hz, signed).
    pub center_offset: f64,
    /// Dimensionless coupling-length product. Negative values model loss.
    pub strength: f64,
    /// Space-charge field rise time (s).
    pub response_time: f64,
}

impl GainLine {
    pub fn new(center_offset: f64, strength: f64, response_time: f64) -> Result<Self> {
        let line = GainLine {
            center_offset,
            strength,
            response_time,
        };
        line.validate()?;
        Ok(line)
    }

    pub fn validate(&self) -> Result<()> {
        if !self.center_offset.is_finite() {
            return Err(Error::Config(format!(
                "gain line center_offset must be finite, got {}",
                self.center_offset
            )));
        }
        if !self.strength.is_finite() {
            return Err(Error::Config(format!(
                "gain line strength must be finite, got {}",
                self.strength
            )));
        }
        if !(self.response_time > 0.0 && self.response_time.is_finite()) {
            return Err(Error::Config(format!(
                "gain line response_time must be positive and finite, got {}",
                self.response_time
            )));
        }
        Ok(())
    }

    #[inline]
    fn reduced(&self, delta: f64, convention: Convention) -> f64 {
        convention.factor() * (delta - self.center_offset) * self.response_time
    }

    #[inline]
    fn gamma_in_unchecked(&self, delta: f64, convention: Convention) -> f64 {
        let x = self.reduced(delta, convention);
        0.5 * self.strength / (1.0 + x * x)
    }

    #[inline]
    fn gamma_ph_unchecked(&self, delta: f64, convention: Convention) -> f64 {
        let x = self.reduced(delta, convention);
        0.5 * self.strength * x / (1.0 + x * x)
    }

    #[inline]
    fn slope_unchecked(&self, delta: f64, convention: Convention) -> f64 {
        let x = self.reduced(delta, convention);
        let d = 1.0 + x * x;
        0.5 * self.strength * effective_time(self.response_time, convention) * (1.0 - x * x)
            / (d * d)
    }

    /// Half width at half maximum of the intensity coupling, in Hz.
    pub fn half_width(&self, convention: Convention) -> f64 {
        1.0 / (convention.factor() * self.response_time)
    }
}

/// Response time expressed per unit angular frequency: `d x / d omega`.
pub fn effective_time(response_time: f64, convention: Convention) -> f64 {
    convention.factor() * response_time / TAU
}

/// A complete medium: the gain lines plus bulk parameters.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MediumSpec {
    pub lines: Vec<GainLine>,
    #[serde(default = "default_mean_index")]
    pub mean_index: f64,
    /// Interaction length (m).
    pub length: f64,
    #[serde(default)]
    pub convention: Convention,
}

fn default_mean_index() -> f64 {
    DEFAULT_MEAN_INDEX
}

impl MediumSpec {
    pub fn new(
        lines: Vec<GainLine>,
        mean_index: f64,
        length: f64,
        convention: Convention,
    ) -> Result<Self> {
        let medium = MediumSpec {
            lines,
            mean_index,
            length,
            convention,
        };
        medium.validate()?;
        Ok(medium)
    }

    /// Symmetric doublet: lines at `+half_separation` and `-half_separation`
    /// with equal strength and response time. The upper line comes first.
    pub fn doublet(
        half_separation: f64,
        strength: f64,
        response_time: f64,
        length: f64,
        convention: Convention,
    ) -> Result<Self> {
        if !(half_separation >= 0.0 && half_separation.is_finite()) {
            return Err(Error::Config(format!(
                "doublet half separation must be finite and >= 0, got {half_separation}"
            )));
        }
        let upper = GainLine::new(half_separation, strength, response_time)?;
        let lower = GainLine::new(-half_separation, strength, response_time)?;
        MediumSpec::new(
            vec![upper, lower],
            DEFAULT_MEAN_INDEX,
            length,
            convention,
        )
    }

    pub fn validate(&self) -> Result<()> {
        if self.lines.is_empty() {
            return Err(Error::Config("medium has no gain lines".into()));
        }
        for (i, line) in self.lines.iter().enumerate() {
            line.validate()
                .map_err(|e| Error::Config(format!("medium.lines.{i}: {e}")))?;
        }
        if !(self.mean_index >= 1.0 && self.mean_index.is_finite()) {
            return Err(Error::Config(format!(
                "mean_index must be >= 1, got {}",
                self.mean_index
            )));
        }
        if !(self.length > 0.0 && self.length.is_finite()) {
            return Err(Error::Config(format!(
                "length must be positive, got {}",
                self.length
            )));
        }
        Ok(())
    }

    /// True for two lines mirrored about the carrier with identical parameters.
    pub fn is_symmetric_doublet(&self) -> bool {
        match self.lines.as_slice() {
            [a, b] => {
                a.center_offset == -b.center_offset
                    && a.strength == b.strength
                    && a.response_time == b.response_time
            }
            _ => false,
        }
    }

    /// Full separation between the two lines of a doublet, in Hz.
    pub fn separation(&self) -> Option<f64> {
        match self.lines.as_slice() {
            [a, b] => Some((a.center_offset - b.center_offset).abs()),
            _ => None,
        }
    }

    /// Largest total intensity coupling, located by sampling each line center.
    pub fn peak_gamma_in(&self) -> f64 {
        self.lines
            .iter()
            .map(|l| self.gamma_in_at(l.center_offset))
            .fold(f64::NEG_INFINITY, f64::max)
    }

    #[inline]
    pub(crate) fn gamma_in_at(&self, delta: f64) -> f64 {
        self.lines
            .iter()
            .map(|l| l.gamma_in_unchecked(delta, self.convention))
            .sum()
    }

    #[inline]
    pub(crate) fn gamma_ph_at(&self, delta: f64) -> f64 {
        self.lines
            .iter()
            .map(|l| l.gamma_ph_unchecked(delta, self.convention))
            .sum()
    }

    #[inline]
    pub(crate) fn slope_at(&self, delta: f64) -> f64 {
        self.lines
            .iter()
            .map(|l| l.slope_unchecked(delta, self.convention))
            .sum()
    }
}

/// Regime of the phase coupling around the carrier.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum DispersionClass {
    Normal,
    Anomalous,
    Flat,
}

/// Sampled coupling coefficients over a detuning grid.
#[derive(Debug, Clone, PartialEq)]
pub struct CouplingProfile {
    pub detunings: Vec<f64>,
    pub gamma_in: Vec<f64>,
    pub gamma_ph: Vec<f64>,
}

fn check_finite(name: &str, value: f64) -> Result<()> {
    if value.is_finite() {
        Ok(())
    } else {
        Err(Error::Domain(format!("{name} must be finite, got {value}")))
    }
}

/// Intensity coupling of a single line at `delta` Hz.
pub fn line_gamma_in(delta: f64, line: &GainLine, convention: Convention) -> Result<f64> {
    check_finite("detuning", delta)?;
    line.validate().map_err(|e| Error::Domain(e.to_string()))?;
    Ok(line.gamma_in_unchecked(delta, convention))
}

/// Phase coupling (rad) of a single line at `delta` Hz.
pub fn line_gamma_ph(delta: f64, line: &GainLine, convention: Convention) -> Result<f64> {
    check_finite("detuning", delta)?;
    line.validate().map_err(|e| Error::Domain(e.to_string()))?;
    Ok(line.gamma_ph_unchecked(delta, convention))
}

/// Summed `(gamma_in, gamma_ph)` over every line of the medium.
pub fn total_coupling(delta: f64, medium: &MediumSpec) -> Result<(f64, f64)> {
    check_finite("detuning", delta)?;
    medium.validate()?;
    Ok((medium.gamma_in_at(delta), medium.gamma_ph_at(delta)))
}

/// Analytic `d gamma_ph / d omega` (s) of the summed phase coupling.
pub fn gamma_ph_slope(delta: f64, medium: &MediumSpec) -> Result<f64> {
    check_finite("detuning", delta)?;
    medium.validate()?;
    Ok(medium.slope_at(delta))
}

/// Peak delay (positive) or advance (negative) relative to free space for a
/// narrowband pulse centered at `delta`.
///
/// The geometric `(n - 1) d / c` transit term is left out; it is below a
/// nanosecond for millimetre crystals.
pub fn group_delay(medium: &MediumSpec, delta: f64) -> Result<f64> {
    gamma_ph_slope(delta, medium)
}

pub fn dispersion_profile(medium: &MediumSpec, grid: &[f64]) -> Result<CouplingProfile> {
    if grid.is_empty() {
        return Err(Error::Config("dispersion profile grid is empty".into()));
    }
    medium.validate()?;
    for &d in grid {
        check_finite("grid detuning", d)?;
    }
    if grid.windows(2).any(|w| w[1] < w[0]) {
        return Err(Error::Config("dispersion profile grid must be sorted".into()));
    }
    Ok(CouplingProfile {
        detunings: grid.to_vec(),
        gamma_in: grid.iter().map(|&d| medium.gamma_in_at(d)).collect(),
        gamma_ph: grid.iter().map(|&d| medium.gamma_ph_at(d)).collect(),
    })
}

/// Evenly spaced, exactly symmetric detuning grid on `[-span, span]`.
pub fn symmetric_grid(span: f64, n_points: usize) -> Result<Vec<f64>> {
    if n_points < 2 || !(span > 0.0 && span.is_finite()) {
        return Err(Error::Config(format!(
            "symmetric grid needs span > 0 and at least 2 points (span={span}, points={n_points})"
        )));
    }
    let last = (n_points - 1) as f64;
    Ok((0..n_points)
        .map(|i| {
            // Built from both ends so that grid[i] == -grid[n-1-i] exactly.
            let j = (n_points - 1 - i) as f64;
            span * (i as f64 - j) / last
        })
        .collect())
}

pub fn classify_dispersion(medium: &MediumSpec) -> Result<DispersionClass> {
    classify_dispersion_with(medium, DEFAULT_FLAT_DEAD_BAND)
}

pub fn classify_dispersion_with(medium: &MediumSpec, dead_band: f64) -> Result<DispersionClass> {
    let slope = gamma_ph_slope(0.0, medium)?;
    Ok(if slope.abs() <= dead_band {
        DispersionClass::Flat
    } else if slope > 0.0 {
        DispersionClass::Normal
    } else {
        DispersionClass::Anomalous
    })
}

/// Center slope of a symmetric doublet with per-line `strength` at half
/// separation `half_separation`.
fn doublet_center_slope(half_separation: f64, tau: f64, strength: f64, u: Convention) -> f64 {
    let x = u.factor() * half_separation * tau;
    let d = 1.0 + x * x;
    strength * effective_time(tau, u) * (1.0 - x * x) / (d * d)
}

/// Smallest half separation `Δ >= 0` at which a symmetric doublet has the
/// requested center slope.
///
/// The center slope is `s·τ_eff·(1 − x²)/(1 + x²)²` with `x = uΔτ`. It falls
/// monotonically from `s·τ_eff` at `x = 0` to its minimum `−s·τ_eff/8` at
/// `x = √3`, so the root is bracketed on that interval.
pub fn separation_for_target_slope(
    tau: f64,
    strength: f64,
    target_slope: f64,
    convention: Convention,
) -> Result<f64> {
    if !(tau > 0.0 && tau.is_finite()) || !(strength > 0.0 && strength.is_finite()) {
        return Err(Error::Domain(format!(
            "tau and strength must be positive (tau={tau}, strength={strength})"
        )));
    }
    check_finite("target slope", target_slope)?;
    let max = strength * effective_time(tau, convention);
    let min = -max / 8.0;
    if target_slope > max || target_slope < min {
        return Err(Error::Range {
            target: target_slope,
            min,
            max,
        });
    }
    if target_slope == max {
        return Ok(0.0);
    }
    let mut lo = 0.0;
    let mut hi = 3f64.sqrt() / (convention.factor() * tau);
    if target_slope == min {
        return Ok(hi);
    }
    // Bisect to machine precision; the stated tolerance is 1e-10 relative but
    // the flat classification needs the root much tighter than that.
    loop {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if doublet_center_slope(mid, tau, strength, convention) > target_slope {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let f_lo = (doublet_center_slope(lo, tau, strength, convention) - target_slope).abs();
    let f_hi = (doublet_center_slope(hi, tau, strength, convention) - target_slope).abs();
    Ok(if f_lo <= f_hi { lo } else { hi })
}

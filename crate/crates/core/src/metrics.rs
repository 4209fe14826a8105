//! Pulse metrics: peak shift, width, compression, beat note and gain.

use num_complex::Complex64;
use rustfft::FftPlanner;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::signal::TimeTrace;

/// A beat is reported when its spectral line exceeds this fraction of DC.
pub const DEFAULT_BEAT_THRESHOLD: f64 = 0.1;

/// Relative tolerance under which two separate maxima count as co-equal.
pub const PEAK_AMBIGUITY_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PulseMetrics {
    /// Output minus reference peak time (s). Positive is a delay.
    pub peak_shift: f64,
    /// Output minus reference intensity centroid (s).
    pub centroid_shift: f64,
    pub fwhm_in: f64,
    pub fwhm_out: f64,
    /// `fwhm_out / fwhm_in`.
    pub compression_ratio: f64,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub beat_frequency: Option<f64>,
    pub energy_gain: f64,
}

fn same_grid(a: &TimeTrace, b: &TimeTrace) -> Result<()> {
    if a.grid != b.grid {
        return Err(Error::GridMismatch(format!(
            "traces '{}' and '{}' are on different grids",
            a.label, b.label
        )));
    }
    Ok(())
}

fn argmax(values: &[f64]) -> usize {
    let mut best = 0;
    for (i, &v) in values.iter().enumerate() {
        if v > values[best] {
            best = i;
        }
    }
    best
}

/// Sub-sample time of the intensity maximum, refined by a three-point
/// parabola through the discrete argmax.
pub fn peak_time(trace: &TimeTrace) -> Result<f64> {
    trace.validate()?;
    let intensity = trace.intensity();
    let n = intensity.len();
    let k = argmax(&intensity);
    if k == 0 || k == n - 1 {
        return Err(Error::Windowing(format!(
            "intensity maximum of '{}' sits on the window edge",
            trace.label
        )));
    }
    let peak = intensity[k];
    let floor = peak * (1.0 - PEAK_AMBIGUITY_TOLERANCE);
    let rival = (1..n - 1).find(|&i| {
        i.abs_diff(k) > 1
            && intensity[i] >= floor
            && intensity[i] > intensity[i - 1]
            && intensity[i] >= intensity[i + 1]
    });
    if let Some(i) = rival {
        return Err(Error::Ambiguous(format!(
            "'{}' has co-equal maxima at t = {} s and t = {} s",
            trace.label,
            trace.grid.time(k),
            trace.grid.time(i)
        )));
    }
    let (y0, y1, y2) = (intensity[k - 1], intensity[k], intensity[k + 1]);
    let curvature = y0 - 2.0 * y1 + y2;
    let offset = if curvature != 0.0 {
        0.5 * (y0 - y2) / curvature
    } else {
        0.0
    };
    Ok(trace.grid.time(k) + offset * trace.grid.dt())
}

pub fn peak_shift(reference: &TimeTrace, output: &TimeTrace) -> Result<f64> {
    same_grid(reference, output)?;
    Ok(peak_time(output)? - peak_time(reference)?)
}

/// Intensity-weighted mean time.
pub fn centroid(trace: &TimeTrace) -> Result<f64> {
    let intensity = trace.intensity();
    let total: f64 = intensity.iter().sum();
    if !(total > 0.0) {
        return Err(Error::Domain(format!("trace '{}' carries no energy", trace.label)));
    }
    let weighted: f64 = intensity
        .iter()
        .enumerate()
        .map(|(k, v)| trace.grid.time(k) * v)
        .sum();
    Ok(weighted / total)
}

pub fn centroid_shift(reference: &TimeTrace, output: &TimeTrace) -> Result<f64> {
    same_grid(reference, output)?;
    Ok(centroid(output)? - centroid(reference)?)
}

/// Full width at half maximum of the main intensity lobe.
///
/// Only the lobe holding the global maximum is measured; for beat-modulated
/// traces this is the dominant lobe, not the overall envelope.
pub fn fwhm(trace: &TimeTrace) -> Result<f64> {
    trace.validate()?;
    let intensity = trace.intensity();
    let n = intensity.len();
    let k = argmax(&intensity);
    let half = 0.5 * intensity[k];
    if !(half > 0.0) {
        return Err(Error::Windowing(format!("trace '{}' is empty", trace.label)));
    }
    let mut left = k;
    while intensity[left] > half {
        if left == 0 {
            return Err(Error::Windowing(format!(
                "no leading half-maximum crossing for '{}' inside the window",
                trace.label
            )));
        }
        left -= 1;
    }
    let mut right = k;
    while intensity[right] > half {
        if right == n - 1 {
            return Err(Error::Windowing(format!(
                "no trailing half-maximum crossing for '{}' inside the window",
                trace.label
            )));
        }
        right += 1;
    }
    let dt = trace.grid.dt();
    // Linear interpolation between the samples bracketing each crossing.
    let (a, b) = (intensity[left], intensity[left + 1]);
    let t_left = trace.grid.time(left) + dt * (half - a) / (b - a);
    let (a, b) = (intensity[right - 1], intensity[right]);
    let t_right = trace.grid.time(right - 1) + dt * (a - half) / (a - b);
    Ok(t_right - t_left)
}

pub fn beat_frequency(trace: &TimeTrace) -> Result<Option<f64>> {
    beat_frequency_with(trace, DEFAULT_BEAT_THRESHOLD)
}

/// Dominant nonzero line in the spectrum of the intensity envelope.
///
/// Candidates are local maxima of the magnitude spectrum above DC. The
/// strongest is reported, as a multiple of the grid `df`, when its magnitude
/// exceeds `threshold` times the DC component.
pub fn beat_frequency_with(trace: &TimeTrace, threshold: f64) -> Result<Option<f64>> {
    trace.validate()?;
    let n = trace.grid.n_samples();
    let mut buf: Vec<Complex64> = trace
        .intensity()
        .into_iter()
        .map(|v| Complex64::new(v, 0.0))
        .collect();
    FftPlanner::<f64>::new().plan_fft_forward(n).process(&mut buf);
    let mag: Vec<f64> = buf[..=n / 2].iter().map(|z| z.norm()).collect();
    let dc = mag[0];
    if !(dc > 0.0) {
        return Ok(None);
    }
    let last = mag.len() - 1;
    let best = (1..=last)
        .filter(|&k| mag[k] > mag[k - 1] && (k == last || mag[k] >= mag[k + 1]))
        .max_by(|&a, &b| mag[a].total_cmp(&mag[b]));
    Ok(best
        .filter(|&k| mag[k] > threshold * dc)
        .map(|k| k as f64 * trace.grid.df()))
}

/// Ratio of summed output intensity to summed reference intensity.
pub fn energy_gain(reference: &TimeTrace, output: &TimeTrace) -> Result<f64> {
    same_grid(reference, output)?;
    let e_ref: f64 = reference.intensity().iter().sum();
    if !(e_ref > 0.0) {
        return Err(Error::Domain("reference trace has zero energy".into()));
    }
    let e_out: f64 = output.intensity().iter().sum();
    Ok(e_out / e_ref)
}

pub fn compute_metrics(reference: &TimeTrace, output: &TimeTrace) -> Result<PulseMetrics> {
    compute_metrics_with(reference, output, DEFAULT_BEAT_THRESHOLD)
}

pub fn compute_metrics_with(
    reference: &TimeTrace,
    output: &TimeTrace,
    beat_threshold: f64,
) -> Result<PulseMetrics> {
    let fwhm_in = fwhm(reference)?;
    let fwhm_out = fwhm(output)?;
    Ok(PulseMetrics {
        peak_shift: peak_shift(reference, output)?,
        centroid_shift: centroid_shift(reference, output)?,
        fwhm_in,
        fwhm_out,
        compression_ratio: fwhm_out / fwhm_in,
        beat_frequency: beat_frequency_with(output, beat_threshold)?,
        energy_gain: energy_gain(reference, output)?,
    })
}

//! Sample grids, Gaussian probe synthesis and the discrete Fourier pair.
//!
//! Envelopes are baseband: the optical carrier is the detuning origin and is
//! never sampled. Time dependence follows the optical `exp(-iωt)` convention,
//! so the forward transform uses the `exp(+i2πft)` kernel and a spectral
//! phase with positive slope delays the envelope.
//!
//! Spectra are stored in centered order: bin `j` is the detuning
//! `(j - n/2)·df`.

use num_complex::Complex64;
use rustfft::{FftDirection, FftPlanner};

use crate::error::{Error, Result};

pub const MIN_SAMPLES: usize = 64;

/// Required window span in units of the Gaussian `t0`.
pub const GAUSSIAN_SPAN_FACTOR: f64 = 16.0;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SampleGrid {
    n_samples: usize,
    dt: f64,
    t0_index: usize,
}

impl SampleGrid {
    pub fn n_samples(&self) -> usize {
        self.n_samples
    }

    pub fn dt(&self) -> f64 {
        self.dt
    }

    /// Index of `t = 0`, the window center.
    pub fn t0_index(&self) -> usize {
        self.t0_index
    }

    pub fn df(&self) -> f64 {
        1.0 / (self.n_samples as f64 * self.dt)
    }

    pub fn nyquist(&self) -> f64 {
        0.5 / self.dt
    }

    pub fn window(&self) -> f64 {
        self.n_samples as f64 * self.dt
    }

    pub fn time(&self, k: usize) -> f64 {
        (k as f64 - self.t0_index as f64) * self.dt
    }

    pub fn times(&self) -> Vec<f64> {
        (0..self.n_samples).map(|k| self.time(k)).collect()
    }

    /// Signed bin number of centered spectrum index `j`.
    pub fn bin(&self, j: usize) -> i64 {
        j as i64 - (self.n_samples / 2) as i64
    }

    pub fn detuning(&self, j: usize) -> f64 {
        self.bin(j) as f64 * self.df()
    }

    pub fn detunings(&self) -> Vec<f64> {
        (0..self.n_samples).map(|j| self.detuning(j)).collect()
    }

    /// First and last sampled times.
    pub fn span(&self) -> (f64, f64) {
        (self.time(0), self.time(self.n_samples - 1))
    }
}

pub fn make_grid(n_samples: usize, dt: f64) -> Result<SampleGrid> {
    if n_samples < MIN_SAMPLES || !n_samples.is_power_of_two() {
        return Err(Error::Config(format!(
            "n_samples must be a power of two >= {MIN_SAMPLES}, got {n_samples}"
        )));
    }
    if !(dt > 0.0 && dt.is_finite()) {
        return Err(Error::Config(format!("dt must be positive, got {dt}")));
    }
    Ok(SampleGrid {
        n_samples,
        dt,
        t0_index: n_samples / 2,
    })
}

/// Complex field envelope on a time grid.
#[derive(Debug, Clone, PartialEq)]
pub struct TimeTrace {
    pub grid: SampleGrid,
    pub samples: Vec<Complex64>,
    pub label: String,
}

impl TimeTrace {
    pub fn new(grid: SampleGrid, samples: Vec<Complex64>, label: impl Into<String>) -> Result<Self> {
        let trace = TimeTrace {
            grid,
            samples,
            label: label.into(),
        };
        trace.validate()?;
        Ok(trace)
    }

    pub fn validate(&self) -> Result<()> {
        if self.samples.len() != self.grid.n_samples {
            return Err(Error::GridMismatch(format!(
                "trace '{}' has {} samples, grid has {}",
                self.label,
                self.samples.len(),
                self.grid.n_samples
            )));
        }
        if self.samples.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::Domain(format!("trace '{}' has non-finite samples", self.label)));
        }
        Ok(())
    }

    pub fn intensity(&self) -> Vec<f64> {
        self.samples.iter().map(|z| z.norm_sqr()).collect()
    }

    /// Intensity scaled to unit peak. An all-zero trace stays zero.
    pub fn normalized_intensity(&self) -> Vec<f64> {
        let i = self.intensity();
        let peak = i.iter().cloned().fold(0.0, f64::max);
        if peak > 0.0 {
            i.iter().map(|v| v / peak).collect()
        } else {
            i
        }
    }

    /// `∫|E|² dt` as a rectangle sum.
    pub fn energy(&self) -> f64 {
        self.grid.dt * self.samples.iter().map(|z| z.norm_sqr()).sum::<f64>()
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = label.into();
        self
    }
}

/// Complex spectrum on centered detuning bins.
#[derive(Debug, Clone, PartialEq)]
pub struct Spectrum {
    pub grid: SampleGrid,
    pub samples: Vec<Complex64>,
}

impl Spectrum {
    /// Energy under the transform normalization, comparable to
    /// [`TimeTrace::energy`].
    pub fn energy(&self) -> f64 {
        self.grid.n_samples as f64
            * self.grid.dt
            * self.samples.iter().map(|z| z.norm_sqr()).sum::<f64>()
    }

    pub fn detunings(&self) -> Vec<f64> {
        self.grid.detunings()
    }

    pub fn validate(&self) -> Result<()> {
        if self.samples.len() != self.grid.n_samples {
            return Err(Error::GridMismatch(format!(
                "spectrum has {} bins, grid has {}",
                self.samples.len(),
                self.grid.n_samples
            )));
        }
        Ok(())
    }
}

/// Probe envelope `exp(-(t - peak_time)²/t0²)`.
pub fn gaussian_pulse(t0: f64, peak_time: f64, grid: SampleGrid) -> Result<TimeTrace> {
    if !(t0 > 0.0 && t0.is_finite()) {
        return Err(Error::Config(format!("pulse t0 must be positive, got {t0}")));
    }
    let required = GAUSSIAN_SPAN_FACTOR * t0;
    if grid.window() < required {
        return Err(Error::Config(format!(
            "window of {:.6} s is too small for t0 = {t0} s; need at least {required:.6} s \
             (n_samples * dt >= {GAUSSIAN_SPAN_FACTOR} * t0)",
            grid.window()
        )));
    }
    let (first, last) = grid.span();
    if !(peak_time >= first && peak_time <= last) {
        return Err(Error::Config(format!(
            "peak_time {peak_time} s lies outside the window [{first}, {last}] s"
        )));
    }
    let samples = (0..grid.n_samples)
        .map(|k| {
            let u = (grid.time(k) - peak_time) / t0;
            Complex64::new((-u * u).exp(), 0.0)
        })
        .collect();
    TimeTrace::new(grid, samples, "input")
}

fn fft_in_place(buf: &mut [Complex64], direction: FftDirection) {
    let mut planner = FftPlanner::<f64>::new();
    let fft = planner.plan_fft(buf.len(), direction);
    fft.process(buf);
}

/// `S(f_j) = (1/N) Σ_k x_k exp(+i2π f_j t_k)` with `t_k` measured from the
/// window center.
pub fn forward_transform(trace: &TimeTrace) -> Result<Spectrum> {
    trace.validate()?;
    let n = trace.grid.n_samples;
    let half = n / 2;
    // Rotate so that t = 0 sits at index 0, transform, then center the bins.
    let mut buf: Vec<Complex64> = (0..n).map(|k| trace.samples[(k + half) % n]).collect();
    fft_in_place(&mut buf, FftDirection::Inverse);
    let scale = 1.0 / n as f64;
    let samples = (0..n).map(|j| buf[(j + half) % n] * scale).collect();
    Ok(Spectrum {
        grid: trace.grid,
        samples,
    })
}

pub fn inverse_transform(spec: &Spectrum) -> Result<TimeTrace> {
    spec.validate()?;
    let n = spec.grid.n_samples;
    let half = n / 2;
    let mut buf: Vec<Complex64> = (0..n).map(|k| spec.samples[(k + half) % n]).collect();
    fft_in_place(&mut buf, FftDirection::Forward);
    let samples = (0..n).map(|j| buf[(j + half) % n]).collect();
    TimeTrace::new(spec.grid, samples, "output")
}

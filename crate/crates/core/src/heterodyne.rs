//! Signal-level model of the lock-in dispersion scan.
//!
//! The signal beam is ramped linearly in frequency around one pump and the
//! demodulated beat phase is taken as the medium phase shift with unit gain
//! and zero offset. The sideband and PZT mechanics are not simulated.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::medium::MediumSpec;

/// Lock-in output per radian of probe phase.
pub const LOCKIN_GAIN: f64 = 1.0;
/// Lock-in phase offset (rad).
pub const LOCKIN_OFFSET: f64 = 0.0;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScanSpec {
    /// Ramp start, relative to the selected pump (Hz).
    pub ramp_min: f64,
    pub ramp_max: f64,
    pub n_points: usize,
    /// Index of the gain line the ramp is centered on.
    #[serde(default)]
    pub pump_selector: usize,
    /// Dither frequency, carried as metadata only.
    #[serde(default = "default_modulation")]
    pub modulation_frequency: f64,
}

fn default_modulation() -> f64 {
    1000.0
}

impl Default for ScanSpec {
    fn default() -> Self {
        ScanSpec {
            ramp_min: -0.5,
            ramp_max: 0.5,
            n_points: 201,
            pump_selector: 0,
            modulation_frequency: default_modulation(),
        }
    }
}

impl ScanSpec {
    pub fn validate(&self) -> Result<()> {
        if !(self.ramp_min.is_finite() && self.ramp_max.is_finite() && self.ramp_min < self.ramp_max) {
            return Err(Error::Config(format!(
                "scan ramp must satisfy ramp_min < ramp_max (got {} .. {})",
                self.ramp_min, self.ramp_max
            )));
        }
        if self.n_points < 2 {
            return Err(Error::Config(format!(
                "scan needs at least 2 points, got {}",
                self.n_points
            )));
        }
        Ok(())
    }

    /// Ramp detunings relative to the pump; both endpoints included.
    pub fn detunings(&self) -> Vec<f64> {
        let last = (self.n_points - 1) as f64;
        let span = self.ramp_max - self.ramp_min;
        (0..self.n_points)
            .map(|i| {
                if i + 1 == self.n_points {
                    self.ramp_max
                } else {
                    self.ramp_min + span * i as f64 / last
                }
            })
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct DispersionTrace {
    /// Ramp detunings relative to the pump (Hz).
    pub detunings: Vec<f64>,
    /// Demodulated output (rad).
    pub phase: Vec<f64>,
    /// Position of the scanned pump relative to the carrier (Hz).
    pub pump_offset: f64,
}

impl DispersionTrace {
    pub fn absolute_detunings(&self) -> Vec<f64> {
        self.detunings.iter().map(|d| self.pump_offset + d).collect()
    }
}

pub fn simulate_scan(medium: &MediumSpec, scan: &ScanSpec) -> Result<DispersionTrace> {
    medium.validate()?;
    scan.validate()?;
    let line = medium.lines.get(scan.pump_selector).ok_or_else(|| {
        Error::Config(format!(
            "pump_selector {} is out of range; medium has {} line(s)",
            scan.pump_selector,
            medium.lines.len()
        ))
    })?;
    let pump_offset = line.center_offset;
    let detunings = scan.detunings();
    let phase = detunings
        .iter()
        .map(|d| LOCKIN_GAIN * medium.gamma_ph_at(pump_offset + d) + LOCKIN_OFFSET)
        .collect();
    Ok(DispersionTrace {
        detunings,
        phase,
        pump_offset,
    })
}

/// One scan per pump of a two-line medium, lower-frequency pump first.
pub fn dual_trace(medium: &MediumSpec, scan: &ScanSpec) -> Result<(DispersionTrace, DispersionTrace)> {
    if medium.lines.len() != 2 {
        return Err(Error::Config(format!(
            "dual trace needs exactly 2 gain lines, medium has {}",
            medium.lines.len()
        )));
    }
    let (lower, upper) = if medium.lines[0].center_offset <= medium.lines[1].center_offset {
        (0, 1)
    } else {
        (1, 0)
    };
    let first = simulate_scan(
        medium,
        &ScanSpec {
            pump_selector: lower,
            ..scan.clone()
        },
    )?;
    let second = simulate_scan(
        medium,
        &ScanSpec {
            pump_selector: upper,
            ..scan.clone()
        },
    )?;
    Ok((first, second))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::medium::{line_gamma_ph, Convention, GainLine};

    const ANG: Convention = Convention::AngularFrequency;

    fn single(strength: f64) -> MediumSpec {
        MediumSpec::new(vec![GainLine::new(0.0, strength, 1.1).unwrap()], 2.4, 0.005, ANG).unwrap()
    }

    #[test]
    fn single_line_s_shape() {
        let m = single(6.0);
        let scan = ScanSpec::default();
        let tr = simulate_scan(&m, &scan).unwrap();
        let n = tr.phase.len();
        assert_eq!(n, 201);
        assert_eq!(tr.phase[n / 2], 0.0);
        // Normal (rising) through the center, anomalous (falling) in the wings.
        assert!(tr.phase[n / 2 + 1] > tr.phase[n / 2 - 1]);
        assert!(tr.phase[1] < tr.phase[0]);
        assert!(tr.phase[n - 1] < tr.phase[n - 2]);
    }

    #[test]
    fn zero_strength_scan_is_zero() {
        let tr = simulate_scan(&single(0.0), &ScanSpec::default()).unwrap();
        assert!(tr.phase.iter().all(|&p| p == 0.0));
    }

    #[test]
    fn bad_selector_and_ramp() {
        let m = single(1.0);
        let scan = ScanSpec {
            pump_selector: 3,
            ..ScanSpec::default()
        };
        assert!(matches!(simulate_scan(&m, &scan), Err(Error::Config(_))));
        let scan = ScanSpec {
            ramp_min: 1.0,
            ramp_max: -1.0,
            ..ScanSpec::default()
        };
        assert!(simulate_scan(&m, &scan).is_err());
        let scan = ScanSpec {
            n_points: 1,
            ..ScanSpec::default()
        };
        assert!(simulate_scan(&m, &scan).is_err());
        assert!(dual_trace(&m, &ScanSpec::default()).is_err());
    }

    #[test]
    fn dual_trace_mirror_and_order() {
        let m = MediumSpec::doublet(0.4, 6.0, 1.1, 0.005, ANG).unwrap();
        let (lo, hi) = dual_trace(&m, &ScanSpec::default()).unwrap();
        assert_eq!(lo.pump_offset, -0.4);
        assert_eq!(hi.pump_offset, 0.4);
        let n = lo.phase.len();
        for i in 0..n {
            assert!((lo.phase[i] + hi.phase[n - 1 - i]).abs() < 1e-12);
        }
    }

    #[test]
    fn widely_separated_pumps_look_isolated() {
        let m = MediumSpec::doublet(4.0e7 / 2.0, 6.0, 1.1, 0.005, ANG).unwrap();
        let (lo, hi) = dual_trace(&m, &ScanSpec::default()).unwrap();
        let isolated = GainLine::new(0.0, 6.0, 1.1).unwrap();
        for tr in [lo, hi] {
            let want: Vec<f64> = tr
                .detunings
                .iter()
                .map(|d| line_gamma_ph(*d, &isolated, ANG).unwrap())
                .collect();
            let scale = want.iter().fold(0.0f64, |a, w| a.max(w.abs()));
            for (p, w) in tr.phase.iter().zip(&want) {
                assert!((p - w).abs() <= 0.01 * scale);
            }
            // Zero at the trace's own pump, up to the far line's tail.
            assert!(tr.phase[tr.phase.len() / 2].abs() < 1e-6 * scale);
        }
    }

    #[test]
    fn endpoints_exact() {
        let d = ScanSpec::default().detunings();
        assert_eq!(d[0], -0.5);
        assert_eq!(*d.last().unwrap(), 0.5);
    }
}

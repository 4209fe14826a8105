//! Scenario configuration files.
//!
//! Configs are TOML. Unknown keys are rejected at every level so that a
//! misspelled unit-bearing field cannot silently fall back to a default.
//!
//! ```toml
//! name = "fig2-sep2"
//! outputs = ["traces", "metrics", "profile"]
//!
//! [medium]
//! mean_index = 2.4
//! length = 0.005
//! convention = "angular-frequency"
//!
//! [[medium.lines]]
//! center_offset = 1.0
//! strength = 6.0
//! response_time = 1.1
//!
//! [[medium.lines]]
//! center_offset = -1.0
//! strength = 6.0
//! response_time = 1.1
//!
//! [pulse]
//! t0 = 0.6
//! peak_time = 0.0
//!
//! [grid]
//! n_samples = 8192
//! dt = 0.005
//!
//! [profile]
//! span = 5.0
//! n_points = 1001
//! ```

use std::path::Path;

use serde::{Deserialize, Serialize};
use toml::Value;

use crate::error::{Error, Result};
use crate::medium::{symmetric_grid, MediumSpec};
use crate::signal::{gaussian_pulse, make_grid, SampleGrid, TimeTrace};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PulseSpec {
    /// Gaussian `1/e` field half width (s).
    pub t0: f64,
    #[serde(default)]
    pub peak_time: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GridSpec {
    pub n_samples: usize,
    pub dt: f64,
}

impl Default for GridSpec {
    fn default() -> Self {
        GridSpec {
            n_samples: 8192,
            dt: 0.005,
        }
    }
}

/// Detuning grid used for coupling-profile artifacts.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProfileSpec {
    /// Half range of the symmetric detuning grid (Hz).
    pub span: f64,
    pub n_points: usize,
}

impl Default for ProfileSpec {
    fn default() -> Self {
        ProfileSpec {
            span: 5.0,
            n_points: 1001,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OutputKind {
    Traces,
    Metrics,
    Profile,
}

fn all_outputs() -> Vec<OutputKind> {
    vec![OutputKind::Traces, OutputKind::Metrics, OutputKind::Profile]
}

fn default_name() -> String {
    "scenario".into()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioConfig {
    #[serde(default = "default_name")]
    pub name: String,
    #[serde(default = "all_outputs")]
    pub outputs: Vec<OutputKind>,
    pub medium: MediumSpec,
    pub pulse: PulseSpec,
    #[serde(default)]
    pub grid: GridSpec,
    #[serde(default)]
    pub profile: ProfileSpec,
}

impl ScenarioConfig {
    pub fn validate(&self) -> Result<()> {
        self.medium.validate()?;
        self.sample_grid()?;
        self.pulse()?;
        symmetric_grid(self.profile.span, self.profile.n_points)?;
        Ok(())
    }

    pub fn sample_grid(&self) -> Result<SampleGrid> {
        make_grid(self.grid.n_samples, self.grid.dt)
    }

    pub fn pulse(&self) -> Result<TimeTrace> {
        gaussian_pulse(self.pulse.t0, self.pulse.peak_time, self.sample_grid()?)
    }

    pub fn profile_grid(&self) -> Result<Vec<f64>> {
        symmetric_grid(self.profile.span, self.profile.n_points)
    }

    pub fn wants(&self, kind: OutputKind) -> bool {
        self.outputs.contains(&kind)
    }

    pub fn to_toml_string(&self) -> Result<String> {
        toml::to_string(self).map_err(|e| Error::Parse(e.to_string()))
    }

    /// Apply `key=value` overrides in order; later ones win.
    ///
    /// Keys are dotted paths into the schema, with integers indexing arrays
    /// (`medium.lines.0.strength`). Values are parsed as TOML literals and
    /// fall back to bare strings.
    pub fn with_overrides<S: AsRef<str>>(&self, overrides: &[S]) -> Result<Self> {
        let mut root = Value::try_from(self).map_err(|e| Error::Parse(e.to_string()))?;
        for raw in overrides {
            let raw = raw.as_ref();
            let (key, value) = raw.split_once('=').ok_or_else(|| {
                Error::Parse(format!("override '{raw}' is not of the form key=value"))
            })?;
            set_path(&mut root, key.trim(), parse_literal(value.trim()))?;
        }
        let cfg: ScenarioConfig = root
            .try_into()
            .map_err(|e: toml::de::Error| Error::Parse(format!("after overrides: {}", e.message())))?;
        cfg.validate()?;
        Ok(cfg)
    }
}

fn parse_literal(text: &str) -> Value {
    #[derive(Deserialize)]
    struct Probe {
        v: Value,
    }
    match toml::from_str::<Probe>(&format!("v = {text}")) {
        Ok(p) => p.v,
        Err(_) => Value::String(text.to_string()),
    }
}

fn set_path(root: &mut Value, key: &str, value: Value) -> Result<()> {
    let unknown = || Error::Parse(format!("unknown config key '{key}'"));
    let mut node = root;
    let parts: Vec<&str> = key.split('.').collect();
    if parts.iter().any(|p| p.is_empty()) {
        return Err(unknown());
    }
    for part in &parts[..parts.len() - 1] {
        node = match node {
            Value::Table(t) => t.get_mut(*part).ok_or_else(unknown)?,
            Value::Array(a) => {
                let i: usize = part.parse().map_err(|_| unknown())?;
                a.get_mut(i).ok_or_else(unknown)?
            }
            _ => return Err(unknown()),
        };
    }
    let last = parts[parts.len() - 1];
    let slot = match node {
        Value::Table(t) => t.get_mut(last).ok_or_else(unknown)?,
        Value::Array(a) => {
            let i: usize = last.parse().map_err(|_| unknown())?;
            a.get_mut(i).ok_or_else(unknown)?
        }
        _ => return Err(unknown()),
    };
    // Integer literals are accepted where the schema holds a float.
    *slot = match (&*slot, value) {
        (Value::Float(_), Value::Integer(i)) => Value::Float(i as f64),
        (_, v) => v,
    };
    Ok(())
}

pub fn parse_config(text: &str) -> Result<ScenarioConfig> {
    let cfg: ScenarioConfig = toml::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    cfg.validate()?;
    Ok(cfg)
}

pub fn read_config(path: &Path) -> Result<ScenarioConfig> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    parse_config(&text).map_err(|e| match e {
        Error::Parse(msg) => Error::Parse(format!("{}: {msg}", path.display())),
        other => other,
    })
}

pub fn write_config(cfg: &ScenarioConfig, path: &Path) -> Result<()> {
    std::fs::write(path, cfg.to_toml_string()?).map_err(|e| Error::io(path, e))
}

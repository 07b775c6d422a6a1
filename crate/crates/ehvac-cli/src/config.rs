//! Flat TOML scenario configuration with command-line overrides.

use crate::error::{CliError, CliResult};
use serde::{Deserialize, Serialize};
use std::path::Path;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Scenario {
    PlaneWave,
    Cylindrical,
    Static,
    Gedanken,
}

impl Scenario {
    pub fn name(self) -> &'static str {
        match self {
            Scenario::PlaneWave => "plane_wave",
            Scenario::Cylindrical => "cylindrical",
            Scenario::Static => "static",
            Scenario::Gedanken => "gedanken",
        }
    }
}

/// Every key a config file may set. Unknown keys are rejected at parse time.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioParams {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub scenario: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub alpha: Option<f64>,
    #[serde(default, rename = "A", skip_serializing_if = "Option::is_none")]
    pub a: Option<f64>,
    #[serde(default, rename = "B", skip_serializing_if = "Option::is_none")]
    pub b: Option<f64>,
    #[serde(default, rename = "U", skip_serializing_if = "Option::is_none")]
    pub u: Option<f64>,
    #[serde(default, rename = "V", skip_serializing_if = "Option::is_none")]
    pub v: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub omega: Option<f64>,
    /// Target horizon estimate 88α²A²/(45πω); sets A when A is absent.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rc_estimate: Option<f64>,
    #[serde(default, rename = "E", skip_serializing_if = "Option::is_none")]
    pub e: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub k: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mode: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub model: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub branch: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub r0: Option<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub t0: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub t_max: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub r_min: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub r_max: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub samples: Option<usize>,
}

impl ScenarioParams {
    pub fn from_toml(text: &str) -> CliResult<Self> {
        toml::from_str(text).map_err(|e| CliError::config(e.to_string()))
    }

    pub fn load(path: &Path) -> CliResult<Self> {
        let text = std::fs::read_to_string(path).map_err(|source| CliError::Io { path: path.display().to_string(), source })?;
        Self::from_toml(&text).map_err(|e| match e {
            CliError::Config(m) => CliError::Config(format!("{}: {m}", path.display())),
            other => other,
        })
    }

    /// Rejects a file written for another scenario.
    pub fn check_scenario(&self, scenario: Scenario) -> CliResult<()> {
        match &self.scenario {
            Some(s) if s.replace('-', "_") != scenario.name() => {
                Err(CliError::config(format!("config is for scenario '{s}', but '{}' was requested", scenario.name())))
            }
            _ => Ok(()),
        }
    }
}

pub fn positive(name: &str, v: f64) -> CliResult<f64> {
    if v > 0.0 && v.is_finite() {
        Ok(v)
    } else {
        Err(CliError::config(format!("{name} must be > 0, got {v}")))
    }
}

pub fn non_negative(name: &str, v: f64) -> CliResult<f64> {
    if v >= 0.0 && v.is_finite() {
        Ok(v)
    } else {
        Err(CliError::config(format!("{name} must be >= 0, got {v}")))
    }
}

pub fn finite(name: &str, v: f64) -> CliResult<f64> {
    if v.is_finite() {
        Ok(v)
    } else {
        Err(CliError::config(format!("{name} must be finite, got {v}")))
    }
}

pub fn samples(v: Option<usize>, default: usize) -> CliResult<usize> {
    let n = v.unwrap_or(default);
    if n < 2 {
        return Err(CliError::config(format!("samples must be >= 2, got {n}")));
    }
    Ok(n)
}

/// Validated radial window.
pub fn radial_window(r_min: f64, r_max: f64) -> CliResult<(f64, f64)> {
    positive("r_min", r_min)?;
    positive("r_max", r_max)?;
    if r_max <= r_min {
        return Err(CliError::config(format!("r_max ({r_max}) must exceed r_min ({r_min})")));
    }
    Ok((r_min, r_max))
}

/// `n` log-spaced points on [lo, hi].
pub fn log_grid(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    let span = (hi / lo).ln();
    (0..n)
        .map(|i| match i {
            0 => lo,
            _ if i == n - 1 => hi,
            _ => lo * (span * i as f64 / (n - 1) as f64).exp(),
        })
        .collect()
}

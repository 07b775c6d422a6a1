//! Scenario runners. Each returns its datasets in a fixed order.

mod cylindrical;
mod gedanken;
mod plane_wave;
mod static_field;

pub use cylindrical::run_cylindrical;
pub use gedanken::run_gedanken;
pub use plane_wave::run_plane_wave;
pub use static_field::run_static;

use crate::config::{Scenario, ScenarioParams};
use crate::dataset::Dataset;
use crate::error::{CliError, CliResult};
use ehvac::cylindrical::ModeChoice;

pub fn run(scenario: Scenario, params: &ScenarioParams) -> CliResult<Vec<Dataset>> {
    params.check_scenario(scenario)?;
    match scenario {
        Scenario::PlaneWave => run_plane_wave(params),
        Scenario::Cylindrical => run_cylindrical(params),
        Scenario::Static => run_static(params),
        Scenario::Gedanken => run_gedanken(params),
    }
}

pub(crate) fn parse_mode(s: &str) -> CliResult<ModeChoice> {
    match s {
        "plus" => Ok(ModeChoice::Plus),
        "minus" => Ok(ModeChoice::Minus),
        "averaged" => Ok(ModeChoice::Averaged),
        other => Err(CliError::config(format!("mode must be plus, minus or averaged, got '{other}'"))),
    }
}

/// Scenarios that always emit both polarizations refuse a mode selection.
pub(crate) fn reject_key<T>(key: &str, v: &Option<T>, scenario: &str) -> CliResult<()> {
    if v.is_some() {
        return Err(CliError::config(format!("key '{key}' does not apply to the {scenario} scenario")));
    }
    Ok(())
}

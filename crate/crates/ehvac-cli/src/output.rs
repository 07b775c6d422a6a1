//! Writing datasets to files or stdout.

use crate::config::{Scenario, ScenarioParams};
use crate::dataset::Dataset;
use crate::error::{CliError, CliResult};
use serde_json::{json, Value};
use std::path::{Path, PathBuf};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Csv,
    Json,
}

impl Format {
    pub fn extension(self) -> &'static str {
        match self {
            Format::Csv => "csv",
            Format::Json => "json",
        }
    }
}

pub const MODE_CONVENTION: &str = "plus: larger dispersion root (28 alpha^2/45 at null fields); \
minus: smaller root (16 alpha^2/45); averaged: mean second-order coefficient 11 alpha^2/45; \
static plus_state/minus_state: sign of |135 - 136 alpha^2 X| in 1/Lambda; signature (+,-,-,-)";

pub fn metadata(scenario: Scenario, params: &ScenarioParams) -> Value {
    json!({
        "scenario": scenario.name(),
        "version": env!("CARGO_PKG_VERSION"),
        "config": serde_json::to_value(params).unwrap_or(Value::Null),
        "mode_convention": MODE_CONVENTION,
    })
}

fn encode(d: &Dataset, format: Format, meta: &Value) -> String {
    match format {
        Format::Csv => d.to_csv(),
        Format::Json => {
            let mut s = serde_json::to_string_pretty(&d.to_json(meta)).expect("dataset JSON is serializable");
            s.push('\n');
            s
        }
    }
}

fn write_file(path: &Path, body: &str) -> CliResult<()> {
    std::fs::write(path, body).map_err(|source| CliError::Io { path: path.display().to_string(), source })
}

/// Writes one file per dataset under `dir`, named `<scenario>_<dataset>.<ext>`.
pub fn write_datasets(
    dir: &Path,
    scenario: Scenario,
    params: &ScenarioParams,
    datasets: &[Dataset],
    format: Format,
) -> CliResult<Vec<PathBuf>> {
    std::fs::create_dir_all(dir).map_err(|source| CliError::Io { path: dir.display().to_string(), source })?;
    let meta = metadata(scenario, params);
    let mut paths = Vec::with_capacity(datasets.len());
    for d in datasets {
        let path = dir.join(format!("{}_{}.{}", scenario.name(), d.name, format.extension()));
        write_file(&path, &encode(d, format, &meta))?;
        paths.push(path);
    }
    Ok(paths)
}

/// All datasets as one stream: CSV blocks headed by `# dataset:` lines, or a
/// single JSON document.
pub fn render_stdout(scenario: Scenario, params: &ScenarioParams, datasets: &[Dataset], format: Format) -> String {
    let meta = metadata(scenario, params);
    match format {
        Format::Csv => {
            datasets.iter().map(|d| format!("# dataset: {}_{}\n{}", scenario.name(), d.name, d.to_csv())).collect::<Vec<_>>().join("\n")
        }
        Format::Json => {
            let docs: Vec<Value> = datasets.iter().map(|d| d.to_json(&meta)).collect();
            let mut s = serde_json::to_string_pretty(&json!({ "datasets": docs })).expect("dataset JSON is serializable");
            s.push('\n');
            s
        }
    }
}

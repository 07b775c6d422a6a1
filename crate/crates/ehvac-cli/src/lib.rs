//! Scenario runner, dataset emitter and verification suite for the `ehvac`
//! effective-geometry library.

pub mod config;
pub mod dataset;
pub mod error;
pub mod output;
pub mod scenarios;
pub mod verify;

pub use error::{CliError, CliResult};

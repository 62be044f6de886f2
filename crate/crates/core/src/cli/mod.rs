//! Config-driven runs that write CSV tables.
//!
//! A run is described by a [`RunConfig`] (parsed from flat `key=value` text),
//! evaluated by [`compute`] and persisted by [`run`], which also appends one
//! JSON line per run to a log file.

pub mod config;
pub mod presets;
pub mod run;

pub use config::{parse_config, GridSpec, Mode, RunConfig};
pub use presets::Preset;
pub use run::{compute, format_value, run, Artifact, RunOutcome, Table};

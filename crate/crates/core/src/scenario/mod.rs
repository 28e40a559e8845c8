//! Declarative scenarios: TOML configuration, built-ins, execution and output.
//!
//! A scenario file describes the system, the initial level, the target
//! observable, the controller and its index iteration, the sampling period and
//! horizon, noise, validity checks and output. See [`config::ScenarioConfig`]
//! and the built-ins (`qfpd show-scenario <name>`) for the full key set.

pub mod builtins;
pub mod config;
pub mod csv;
pub mod plot;
pub mod run;

pub use self::csv::{export_csv, import_csv, CsvTable};
pub use builtins::{builtin, builtin_names, builtin_source};
pub use config::{load_scenario, parse_scenario, ScenarioConfig};
pub use plot::emit_plots;
pub use run::{run, steps_to_band, CheckResult, RunOptions, RunOutcome, RunSummary, BAND, OUTPUT_DIR_ENV};

//! Running a scenario and writing its artefacts.

use std::path::{Path, PathBuf};
use std::time::Instant;

use serde::Serialize;

use super::config::ScenarioConfig;
use super::csv::export_csv;
use super::plot::emit_plots;
use crate::error::{Error, Result};
use crate::simulate::{run_closed_loop, Trajectory};

/// Environment variable naming the output directory.
pub const OUTPUT_DIR_ENV: &str = "QFPD_OUTPUT_DIR";

/// Half-width of the band around the target used by [`steps_to_band`].
pub const BAND: f64 = 0.05;

const DEFAULT_OUTPUT_DIR: &str = "qfpd-output";

#[derive(Clone, Debug, Default)]
pub struct RunOptions {
    /// Takes precedence over the environment and the scenario file.
    pub output_dir: Option<PathBuf>,
    /// File name stem; defaults to the scenario name.
    pub file_stem: Option<String>,
    /// Write CSV, plots and summary to disk.
    pub write: bool,
}

impl RunOptions {
    pub fn in_memory() -> Self {
        RunOptions::default()
    }

    pub fn writing_to(dir: impl Into<PathBuf>) -> Self {
        RunOptions {
            output_dir: Some(dir.into()),
            file_stem: None,
            write: true,
        }
    }

    pub fn resolve_dir(&self, cfg: &ScenarioConfig) -> PathBuf {
        if let Some(dir) = &self.output_dir {
            return dir.clone();
        }
        if let Some(dir) = std::env::var_os(OUTPUT_DIR_ENV).filter(|d| !d.is_empty()) {
            return dir.into();
        }
        cfg.output.directory.as_deref().unwrap_or(DEFAULT_OUTPUT_DIR).into()
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CheckResult {
    pub name: String,
    pub value: f64,
    pub tolerance: f64,
    pub passed: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RunSummary {
    pub scenario: String,
    pub seed: u64,
    pub steps: usize,
    pub final_output: f64,
    pub o_d: f64,
    /// First step from which the output stays within [`BAND`] of the target.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub steps_to_band: Option<usize>,
    pub max_trace_defect: f64,
    pub max_hermiticity_defect: f64,
    pub min_eigenvalue: f64,
    pub max_abs_control: f64,
    pub nonconverged_steps: usize,
    pub flagged_steps: usize,
    pub wall_seconds: f64,
    pub checks: Vec<CheckResult>,
}

impl RunSummary {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

#[derive(Clone, Debug)]
pub struct RunOutcome {
    pub trajectory: Trajectory,
    pub summary: RunSummary,
    pub files: Vec<PathBuf>,
}

/// First 1-based step after which every output lies within `band` of `o_d`.
pub fn steps_to_band(outputs: &[f64], o_d: f64, band: f64) -> Option<usize> {
    match outputs.iter().rposition(|o| (o - o_d).abs() > band) {
        Some(k) if k + 1 == outputs.len() => None,
        Some(k) => Some(k + 2),
        None if outputs.is_empty() => None,
        None => Some(1),
    }
}

fn summarize(cfg: &ScenarioConfig, trajectory: &Trajectory, wall_seconds: f64) -> RunSummary {
    let outputs = trajectory.outputs();
    let max_trace_defect = trajectory.max_trace_defect();
    let max_hermiticity_defect = trajectory.max_hermiticity_defect();
    let min_eigenvalue = trajectory.min_eigenvalue();
    let mut checks = vec![
        CheckResult {
            name: "trace".into(),
            value: max_trace_defect,
            tolerance: cfg.checks.trace_tolerance,
            passed: max_trace_defect <= cfg.checks.trace_tolerance,
        },
        CheckResult {
            name: "hermiticity".into(),
            value: max_hermiticity_defect,
            tolerance: cfg.checks.hermiticity_tolerance,
            passed: max_hermiticity_defect <= cfg.checks.hermiticity_tolerance,
        },
    ];
    if cfg.checks.positivity {
        let floor = crate::state::EIGENVALUE_FLOOR;
        checks.push(CheckResult {
            name: "positivity".into(),
            value: min_eigenvalue,
            tolerance: floor,
            passed: min_eigenvalue >= floor,
        });
    }
    RunSummary {
        scenario: cfg.name.clone(),
        seed: cfg.seed,
        steps: trajectory.len(),
        final_output: outputs.last().copied().unwrap_or(trajectory.initial_output),
        o_d: trajectory.o_d,
        steps_to_band: steps_to_band(&outputs, trajectory.o_d, BAND),
        max_trace_defect,
        max_hermiticity_defect,
        min_eigenvalue,
        max_abs_control: trajectory.max_abs_control(),
        nonconverged_steps: trajectory
            .steps
            .iter()
            .filter(|s| !s.diagnostics.riccati_converged)
            .count(),
        flagged_steps: trajectory.steps.iter().filter(|s| s.diagnostics.flagged).count(),
        wall_seconds,
        checks,
    }
}

fn write_artifacts(
    cfg: &ScenarioConfig,
    dir: &Path,
    stem: &str,
    trajectory: &Trajectory,
    summary: &RunSummary,
) -> Result<Vec<PathBuf>> {
    std::fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))?;
    let mut files = Vec::new();
    if cfg.output.csv {
        let path = dir.join(format!("{stem}.csv"));
        export_csv(trajectory, &path)?;
        files.push(path);
    }
    if cfg.output.plots {
        files.extend(emit_plots(trajectory, dir, stem)?);
    }
    let path = dir.join(format!("{stem}-summary.toml"));
    let text = toml::to_string(summary).map_err(|e| Error::Parse(e.to_string()))?;
    std::fs::write(&path, text).map_err(|e| Error::io(&path, e))?;
    files.push(path);
    Ok(files)
}

/// Simulates a scenario and, if requested, writes CSV, plots and a summary.
pub fn run(cfg: &ScenarioConfig, options: &RunOptions) -> Result<RunOutcome> {
    let setup = cfg.closed_loop()?;
    let start = Instant::now();
    let trajectory = run_closed_loop(&setup)?;
    let summary = summarize(cfg, &trajectory, start.elapsed().as_secs_f64());
    let files = if options.write {
        let stem = options.file_stem.clone().unwrap_or_else(|| cfg.name.clone());
        write_artifacts(cfg, &options.resolve_dir(cfg), &stem, &trajectory, &summary)?
    } else {
        Vec::new()
    };
    Ok(RunOutcome {
        trajectory,
        summary,
        files,
    })
}

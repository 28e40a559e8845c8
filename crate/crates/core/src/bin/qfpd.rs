//! `qfpd`: run, inspect and check fully probabilistic quantum control scenarios.
//!
//! Exit codes:
//! - 0: success, and every enabled validity check passed
//! - 1: numerical or runtime failure
//! - 2: invalid command line
//! - 3: unknown scenario, oracle, or invalid scenario file
//! - 4: the run completed but a validity check or oracle failed
//! - 5: file system error

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use rayon::prelude::*;

use quantum_fpd::oracles::{run_oracle, ORACLE_NAMES};
use quantum_fpd::scenario::{builtin, builtin_names, builtin_source, load_scenario, run, RunOptions, RunSummary};
use quantum_fpd::Error;

const EXIT_RUNTIME: u8 = 1;
const EXIT_CONFIG: u8 = 3;
const EXIT_CHECKS: u8 = 4;
const EXIT_IO: u8 = 5;

#[derive(Parser)]
#[command(name = "qfpd", version, about = "Fully probabilistic control of quantum systems")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a builtin scenario or a scenario file.
    Run {
        /// Builtin name or path to a TOML scenario.
        scenario: String,
        /// Override the scenario seed.
        #[arg(long)]
        seed: Option<u64>,
        /// Override the number of steps.
        #[arg(long)]
        horizon: Option<usize>,
        /// Disable process and measurement noise.
        #[arg(long)]
        noise_off: bool,
        /// Run this many consecutive seeds in parallel.
        #[arg(long, value_name = "N", value_parser = clap::value_parser!(u64).range(1..))]
        seeds: Option<u64>,
        /// Output directory (otherwise QFPD_OUTPUT_DIR, then the scenario's setting).
        #[arg(long, value_name = "DIR")]
        output: Option<PathBuf>,
    },
    /// List builtin scenarios.
    List,
    /// Print the TOML of a builtin scenario.
    ShowScenario { name: String },
    /// Check a scenario file without running it.
    Validate { path: PathBuf },
    /// Run a named numerical cross-check, or `all`.
    Oracle {
        #[arg(value_name = "CHECK-NAME")]
        name: String,
    },
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Io { .. } => EXIT_IO,
        Error::Csv(inner) if matches!(inner.kind(), csv::ErrorKind::Io(_)) => EXIT_IO,
        Error::UnknownScenario(_) | Error::UnknownOracle(_) | Error::Parse(_) | Error::Config { .. } => EXIT_CONFIG,
        _ => EXIT_RUNTIME,
    }
}

fn fail(e: Error) -> ExitCode {
    eprintln!("error: {e}");
    let mut source = std::error::Error::source(&e);
    while let Some(s) = source {
        eprintln!("  caused by: {s}");
        source = s.source();
    }
    ExitCode::from(exit_code(&e))
}

fn resolve(scenario: &str) -> Result<quantum_fpd::scenario::ScenarioConfig, Error> {
    if builtin_names().contains(&scenario) {
        return builtin(scenario);
    }
    let path = Path::new(scenario);
    if path.exists() {
        return load_scenario(path);
    }
    Err(Error::UnknownScenario(scenario.to_string()))
}

fn print_summary(s: &RunSummary, files: &[PathBuf]) {
    let band = s
        .steps_to_band
        .map_or_else(|| "not reached".to_string(), |k| format!("step {k}"));
    println!(
        "{} seed {}: {} steps, final output {:.6} (target {}), in band from {}, max |u| {:.4e}, \
         trace defect {:.2e}, hermiticity defect {:.2e}, min eigenvalue {:.4}, {} nonconverged, {:.2} s",
        s.scenario,
        s.seed,
        s.steps,
        s.final_output,
        s.o_d,
        band,
        s.max_abs_control,
        s.max_trace_defect,
        s.max_hermiticity_defect,
        s.min_eigenvalue,
        s.nonconverged_steps,
        s.wall_seconds
    );
    for c in &s.checks {
        println!(
            "  check {}: {} ({:.3e} vs {:.1e})",
            c.name,
            if c.passed { "pass" } else { "FAIL" },
            c.value,
            c.tolerance
        );
    }
    for f in files {
        println!("  wrote {}", f.display());
    }
}

fn cmd_run(
    scenario: &str,
    seed: Option<u64>,
    horizon: Option<usize>,
    noise_off: bool,
    seeds: Option<u64>,
    output: Option<PathBuf>,
) -> Result<bool, Error> {
    let mut cfg = resolve(scenario)?;
    if let Some(seed) = seed {
        cfg.seed = seed;
    }
    if let Some(h) = horizon {
        cfg.discretization.horizon = h;
    }
    if noise_off {
        cfg.noise.enabled = false;
    }
    cfg.validate()?;
    let count = seeds.unwrap_or(1);
    let configs: Vec<_> = (0..count)
        .map(|k| {
            let mut c = cfg.clone();
            c.seed = cfg.seed + k;
            let stem = (count > 1).then(|| format!("{}-seed{}", c.name, c.seed));
            let opts = RunOptions {
                output_dir: output.clone(),
                file_stem: stem,
                write: true,
            };
            (c, opts)
        })
        .collect();
    let outcomes: Vec<_> = configs.par_iter().map(|(c, o)| run(c, o)).collect();
    let mut all_passed = true;
    for outcome in outcomes {
        let outcome = outcome?;
        print_summary(&outcome.summary, &outcome.files);
        all_passed &= outcome.summary.passed();
    }
    Ok(all_passed)
}

fn cmd_oracle(name: &str) -> Result<bool, Error> {
    let names: Vec<&str> = if name == "all" {
        ORACLE_NAMES.to_vec()
    } else {
        vec![name]
    };
    let mut all_passed = true;
    for n in names {
        let report = run_oracle(n)?;
        println!("{report}");
        all_passed &= report.passed;
    }
    Ok(all_passed)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Run {
            scenario,
            seed,
            horizon,
            noise_off,
            seeds,
            output,
        } => cmd_run(&scenario, seed, horizon, noise_off, seeds, output),
        Command::List => {
            for name in builtin_names() {
                let description = builtin(name).map(|c| c.description).unwrap_or_default();
                println!("{name:<12} {description}");
            }
            Ok(true)
        }
        Command::ShowScenario { name } => builtin_source(&name).map(|src| {
            print!("{src}");
            true
        }),
        Command::Validate { path } => load_scenario(&path).map(|cfg| {
            println!("{}: valid scenario `{}`", path.display(), cfg.name);
            true
        }),
        Command::Oracle { name } => cmd_oracle(&name),
    };
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(EXIT_CHECKS),
        Err(e) => fail(e),
    }
}

// A user-defined open two-level system described in TOML, written to disk and read back.

use quantum_fpd::scenario::{import_csv, parse_scenario, run, RunOptions};

const SCENARIO: &str = r#"
name = "open-qubit"
description = "Two-level system with spontaneous decay"
seed = 3

[system]
kind = "custom"
energies = [0.0, 1.0]
dipole = [[0.0, 0.5], [0.5, 0.0]]
rates = [[0.0, 0.0], [0.02, 0.0]]

[target]
kind = "matrix"
real = [[0.5, 0.5], [0.5, 0.5]]
o_d = 0.9

[controller]
g_r = 1e-4
omega = 1.0

[controller.riccati]
init = "random"
max_iterations = 500
on_nonconvergence = "last-iterate"
warm_start = true

[discretization]
dt = 0.05
horizon = 80
"#;

pub fn run_example() -> quantum_fpd::Result<Vec<f64>> {
    let cfg = parse_scenario(SCENARIO)?;
    let dir = std::env::temp_dir().join(format!("qfpd-custom-{}", std::process::id()));
    let outcome = run(&cfg, &RunOptions::writing_to(&dir))?;
    for f in &outcome.files {
        println!("wrote {}", f.display());
    }
    let table = import_csv(dir.join("open-qubit.csv"))?;
    let outputs = table.column("o_t").unwrap_or_default();
    println!(
        "{} rows, {} columns; output went from {:.4} to {:.4} (target {})",
        table.rows.len(),
        table.headers.len(),
        outcome.trajectory.initial_output,
        outputs.last().copied().unwrap_or(f64::NAN),
        cfg.target.o_d
    );
    let _ = std::fs::remove_dir_all(&dir);
    Ok(outputs)
}

#[allow(dead_code)]
fn main() -> quantum_fpd::Result<()> {
    run_example().map(|_| ())
}

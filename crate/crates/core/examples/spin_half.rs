// Transfer a spin-1/2 from its ground level to the excited level.

use quantum_fpd::scenario::{builtin, run, RunOptions, RunSummary};

pub fn run_example() -> quantum_fpd::Result<RunSummary> {
    let cfg = builtin("spin-half")?;
    let outcome = run(&cfg, &RunOptions::in_memory())?;
    for s in outcome.trajectory.steps.iter().take(8) {
        println!("t = {:.4}  u = {:>10.4}  rho11 = {:.6}", s.time, s.control, s.output);
    }
    let summary = outcome.summary;
    println!(
        "final rho11 {:.6} after {} steps; within 0.05 of the target from step {:?}",
        summary.final_output, summary.steps, summary.steps_to_band
    );
    Ok(summary)
}

#[allow(dead_code)]
fn main() -> quantum_fpd::Result<()> {
    run_example().map(|_| ())
}

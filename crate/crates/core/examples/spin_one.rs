// Steer a spin-1 into each of its two upper levels.

use quantum_fpd::scenario::{builtin, run, RunOptions, RunSummary};

pub fn run_example() -> quantum_fpd::Result<Vec<RunSummary>> {
    let mut summaries = Vec::new();
    for name in ["spin-one-a", "spin-one-b"] {
        let mut cfg = builtin(name)?;
        cfg.discretization.horizon = 120;
        let summary = run(&cfg, &RunOptions::in_memory())?.summary;
        println!(
            "{name}: population {:.6} after {} steps, in band from step {:?}, largest |u| {:.3e}",
            summary.final_output, summary.steps, summary.steps_to_band, summary.max_abs_control
        );
        summaries.push(summary);
    }
    Ok(summaries)
}

#[allow(dead_code)]
fn main() -> quantum_fpd::Result<()> {
    run_example().map(|_| ())
}

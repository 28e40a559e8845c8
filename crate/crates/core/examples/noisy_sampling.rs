// Process and measurement noise with a sampled (randomised) controller, over several seeds.

use rayon::prelude::*;

use quantum_fpd::scenario::{builtin, config::ControlModeConfig, run, RunOptions, RunSummary};

pub fn run_example() -> quantum_fpd::Result<Vec<RunSummary>> {
    let mut cfg = builtin("spin-half")?;
    cfg.discretization.horizon = 60;
    cfg.noise.process_std = 1e-4;
    cfg.noise.measure_std = 1e-3;
    cfg.controller.mode = ControlModeConfig::Sample;

    let summaries = (0..4u64)
        .into_par_iter()
        .map(|seed| {
            let mut c = cfg.clone();
            c.seed = seed;
            run(&c, &RunOptions::in_memory()).map(|o| o.summary)
        })
        .collect::<quantum_fpd::Result<Vec<_>>>()?;
    for s in &summaries {
        println!(
            "seed {}: final output {:.4}, largest trace defect {:.1e}, smallest eigenvalue {:.3}",
            s.seed, s.final_output, s.max_trace_defect, s.min_eigenvalue
        );
    }
    Ok(summaries)
}

#[allow(dead_code)]
fn main() -> quantum_fpd::Result<()> {
    run_example().map(|_| ())
}

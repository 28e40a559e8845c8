// LiH as a Morse oscillator: levels, dipole couplings, and wavepacket localisation.

use quantum_fpd::models::{
    atomic_units, dipole_matrix, gaussian_target, morse_energies, MorseParameters, TargetGaussian,
};
use quantum_fpd::scenario::{builtin, run, RunOptions, RunSummary};

pub fn run_example() -> quantum_fpd::Result<RunSummary> {
    let p = MorseParameters::lih();
    let au = atomic_units(&p);
    println!("D0 = {:.6} Eh, r_eq = {:.4} bohr, nu = {:.4}", au.d0, au.r_eq, au.nu);
    println!("bound levels (hartree): {:?}", morse_energies(&p)?);
    println!("dipole matrix (au): {:.5}", dipole_matrix(&p)?);
    let target = gaussian_target(&p, &TargetGaussian::lih())?;
    println!("Gaussian target matrix: {:.5}", target.matrix().map(|z| z.re));

    let mut cfg = builtin("morse-lih")?;
    cfg.discretization.horizon = 60;
    let summary = run(&cfg, &RunOptions::in_memory())?.summary;
    println!(
        "localisation output {:.6} after {} steps (target {}), in band from step {:?}",
        summary.final_output, summary.steps, summary.o_d, summary.steps_to_band
    );
    Ok(summary)
}

#[allow(dead_code)]
fn main() -> quantum_fpd::Result<()> {
    run_example().map(|_| ())
}

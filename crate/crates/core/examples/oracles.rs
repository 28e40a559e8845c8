// Cross-check the closed forms against quadrature, RK4 and published matrices.

use quantum_fpd::models::{MorseParameters, TargetGaussian};
use quantum_fpd::oracles::{
    control_argmin, dynamics_step, free_evolution, gamma_quadrature, morse_orthonormality, morse_refinement,
    reference_generators, OracleReport,
};

pub fn run_example() -> quantum_fpd::Result<Vec<OracleReport>> {
    let p = MorseParameters::lih();
    let reports = vec![
        reference_generators(),
        free_evolution()?,
        dynamics_step(5, 0)?,
        gamma_quadrature(20, 0)?,
        control_argmin(20, 0)?,
        morse_orthonormality(&p)?,
        morse_refinement(&p, &TargetGaussian::lih())?,
    ];
    for r in &reports {
        println!("{r}");
    }
    Ok(reports)
}

#[allow(dead_code)]
fn main() -> quantum_fpd::Result<()> {
    run_example().map(|_| ())
}

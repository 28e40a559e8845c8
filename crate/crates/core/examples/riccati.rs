// The controller by hand: generators, discretisation, index recursion and control law.

use quantum_fpd::control::{
    control_law, gamma_closed_form, steady_index, ControlLaw, ControllerConfig, Objective, OnNonConvergence,
    RiccatiInit, RiccatiOptions,
};
use quantum_fpd::dynamics::{build_generators, control_matrix, discretize};
use quantum_fpd::models::spin_half_system;
use quantum_fpd::simulate::{stream_rng, Stream};
use quantum_fpd::state::{vectorize, DensityMatrix, Observable};

pub fn run_example() -> quantum_fpd::Result<ControlLaw> {
    let gen = build_generators(&spin_half_system())?;
    let model = discretize(&gen, 0.0505)?;
    let cfg = ControllerConfig::new(1e-5, 1.0, 1.0, 200)?;
    let row = Observable::projector(2, 1)?.measurement_row();
    let objective = Objective::shifted(&row, gen.x_equilibrium(), cfg.o_d);

    let x = vectorize(&DensityMatrix::pure_level(2, 0)?).into_values() - gen.x_equilibrium();
    let b = control_matrix(&model, &gen, &x)?;
    let opts = RiccatiOptions {
        init: RiccatiInit::Random,
        max_iterations: 1000,
        on_nonconvergence: OnNonConvergence::LastIterate,
        ..Default::default()
    };
    let mut rng = stream_rng(0, Stream::RiccatiInit);
    let index = steady_index(&model, &b, &cfg, &objective, &opts, None, &mut rng)?;
    println!(
        "index after {} iterations (converged: {}), last relative change {:.2e}",
        index.iterations,
        index.converged,
        index.residuals.last().copied().unwrap_or(f64::NAN)
    );

    let law = control_law(&x, &index.state, &model, &b, &cfg, &objective)?;
    println!("control mean {:.6}, variance {:.6}", law.v, law.r);
    let excited = vectorize(&DensityMatrix::pure_level(2, 1)?).into_values() - gen.x_equilibrium();
    println!(
        "-ln gamma without omega: {:.6e} at the start, {:.6e} at the target",
        gamma_closed_form(&x, &index.state)?,
        gamma_closed_form(&excited, &index.state)?
    );
    Ok(law)
}

#[allow(dead_code)]
fn main() -> quantum_fpd::Result<()> {
    run_example().map(|_| ())
}

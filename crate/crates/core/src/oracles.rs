//! Named cross-checks of the library against independent computations.
//!
//! Each check returns an [`OracleReport`]; `qfpd oracle <name>` runs one from
//! the command line.

use nalgebra::DMatrix;
use rand::Rng;
use rand_distr::StandardNormal;

use crate::control::{
    control_argmin_oracle, control_law, gamma_closed_form, gamma_quadrature_oracle, omega_step, riccati_step,
    steady_index, ControllerConfig, Objective, OnNonConvergence, RiccatiInit, RiccatiOptions, RiccatiState,
};
use crate::dynamics::{
    build_generators, control_matrix, discretize, BilinearGenerators, DiscreteModel, PhysicalSystem,
};
use crate::error::{Error, Result};
use crate::linalg::max_abs;
use crate::models::morse::{dipole_matrix_with_tol, gaussian_target_matrix, overlap_matrix};
use crate::models::{spin_half_system, spin_one_system, MorseParameters, TargetGaussian};
use crate::simulate::{stream_rng, Stream, Trajectory};
use crate::state::{vectorize, CMatrix, CVector, DensityMatrix, Observable, SlotLayout, VectorizedState, C64};

#[derive(Clone, Debug, PartialEq)]
pub struct OracleReport {
    pub name: &'static str,
    pub max_error: f64,
    pub tolerance: f64,
    pub passed: bool,
    pub detail: String,
}

impl OracleReport {
    fn new(name: &'static str, max_error: f64, tolerance: f64, detail: String) -> Self {
        OracleReport {
            name,
            max_error,
            tolerance,
            passed: max_error <= tolerance,
            detail,
        }
    }
}

impl std::fmt::Display for OracleReport {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "{} {}: max error {:.3e} (tolerance {:.1e}); {}",
            if self.passed { "PASS" } else { "FAIL" },
            self.name,
            self.max_error,
            self.tolerance,
            self.detail
        )
    }
}

/// Checks available through [`run_oracle`].
pub const ORACLE_NAMES: [&str; 8] = [
    "reference-generators",
    "free-evolution",
    "dynamics-step",
    "dynamics-horizon",
    "gamma-quadrature",
    "control-argmin",
    "morse-orthonormality",
    "morse-refinement",
];

/// Runs a check by name with its default sample sizes.
pub fn run_oracle(name: &str) -> Result<OracleReport> {
    match name {
        "reference-generators" => Ok(reference_generators()),
        "free-evolution" => free_evolution(),
        "dynamics-step" => dynamics_step(20, 0),
        "dynamics-horizon" => {
            let cfg = crate::scenario::builtin("spin-half")?;
            let setup = cfg.closed_loop()?;
            let trajectory = crate::simulate::run_closed_loop(&setup)?;
            dynamics_horizon(&spin_half_system(), &trajectory, 1000)
        }
        "gamma-quadrature" => gamma_quadrature(100, 0),
        "control-argmin" => control_argmin(100, 0),
        "morse-orthonormality" => morse_orthonormality(&MorseParameters::lih()),
        "morse-refinement" => morse_refinement(&MorseParameters::lih(), &TargetGaussian::lih()),
        other => Err(Error::UnknownOracle(other.to_string())),
    }
}

/// Density matrix `sum_k w_k |psi_k><psi_k|` from Gaussian kets and weights.
pub fn random_density_matrix<R: Rng>(dim: usize, rng: &mut R) -> DensityMatrix {
    let mut rho = CMatrix::zeros(dim, dim);
    let mut total = 0.0;
    for _ in 0..dim {
        let w: f64 = rng.random::<f64>() + 1e-3;
        let ket = CVector::from_fn(dim, |_, _| {
            C64::new(rng.sample(StandardNormal), rng.sample(StandardNormal))
        });
        let ket = &ket / C64::new(ket.norm(), 0.0);
        rho += (&ket * ket.adjoint()) * C64::new(w, 0.0);
        total += w;
    }
    rho /= C64::new(total, 0.0);
    let rho = (&rho + rho.adjoint()) * C64::new(0.5, 0.0);
    DensityMatrix::new(rho).expect("convex mixture of pure states is a density matrix")
}

/// Right-hand side of the master equation written element by element:
/// `-(i w_nm + g_nm) r_nm + d_nm sum_k G_{k->n} r_kk + (i u / hbar) [mu, c]_nm`,
/// where the commutator acts on `c`.
fn master_rhs(sys: &PhysicalSystem, rho: &CMatrix, u: f64, c: &CMatrix) -> CMatrix {
    let l = sys.dim();
    let e = sys.energies();
    let rates = sys.rates();
    let out = |k: usize| (0..l).map(|j| rates[(k, j)]).sum::<f64>();
    let mu = sys.dipole();
    let i = C64::new(0.0, 1.0);
    CMatrix::from_fn(l, l, |n, m| {
        let omega = (e[n] - e[m]) / sys.hbar();
        let gamma = 0.5 * (out(n) + out(m));
        let mut d = -(i * omega + gamma) * rho[(n, m)];
        if n == m {
            d += (0..l)
                .filter(|&k| k != n)
                .map(|k| rho[(k, k)] * rates[(k, n)])
                .sum::<C64>();
        }
        let comm: C64 = (0..l).map(|k| mu[(n, k)] * c[(k, m)] - c[(n, k)] * mu[(k, m)]).sum();
        d + i * u / sys.hbar() * comm
    })
}

/// Classical RK4 on the density matrix over `dt` in `substeps` steps. With
/// `frozen`, the control commutator acts on that fixed matrix instead of `rho`.
pub fn rk4_density(
    sys: &PhysicalSystem,
    rho: &CMatrix,
    u: f64,
    frozen: Option<&CMatrix>,
    dt: f64,
    substeps: usize,
) -> CMatrix {
    let h = dt / substeps as f64;
    let f = |r: &CMatrix| master_rhs(sys, r, u, frozen.unwrap_or(r));
    let mut r = rho.clone();
    for _ in 0..substeps {
        let k1 = f(&r);
        let k2 = f(&(&r + &k1 * C64::new(h / 2.0, 0.0)));
        let k3 = f(&(&r + &k2 * C64::new(h / 2.0, 0.0)));
        let k4 = f(&(&r + &k3 * C64::new(h, 0.0)));
        r += (k1 + k2 * C64::new(2.0, 0.0) + k3 * C64::new(2.0, 0.0) + k4) * C64::new(h / 6.0, 0.0);
    }
    r
}

fn matrix_of(x: &CVector, dim: usize) -> CMatrix {
    let layout = SlotLayout::new(dim);
    let mut m = CMatrix::zeros(dim, dim);
    for (k, &(n, c)) in layout.slots().iter().enumerate() {
        m[(n, c)] = x[k];
    }
    m
}

fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

/// Published generator matrices of the closed spin-1/2 and spin-1 systems.
pub fn reference_matrices() -> [(CMatrix, CMatrix); 2] {
    let i = c(0.0, 1.0);
    let half_a = CMatrix::from_diagonal(&CVector::from_vec(vec![c(0.0, 0.0), c(0.0, 0.0), -i, i]));
    let p = c(0.5, 0.5);
    let q = c(0.5, -0.5);
    let z = c(0.0, 0.0);
    let half_n = CMatrix::from_row_slice(4, 4, &[z, z, p, -q, z, z, -p, q, q, -q, z, z, -p, p, z, z]);
    let one_a = CMatrix::from_diagonal(&CVector::from_vec(vec![
        z,
        z,
        z,
        c(0.0, -0.5),
        c(0.0, -1.5),
        c(0.0, 0.5),
        c(0.0, 1.5),
        -i,
        i,
    ]));
    #[rustfmt::skip]
    let pattern: [f64; 81] = [
        0., 0., 0., 0., 1., 0., -1., 0., 0.,
        0., 0., 0., 0., 0., 0., 0., 1., -1.,
        0., 0., 0., 0., -1., 0., 1., -1., 1.,
        0., 0., 0., 0., 1., 0., 0., 0., -1.,
        1., 0., -1., 1., 0., 0., 0., 0., 0.,
        0., 0., 0., 0., 0., 0., -1., 1., 0.,
        -1., 0., 1., 0., 0., -1., 0., 0., 0.,
        0., 1., -1., 0., 0., 1., 0., 0., 0.,
        0., -1., 1., -1., 0., 0., 0., 0., 0.,
    ];
    let one_n = CMatrix::from_row_iterator(9, 9, pattern.iter().map(|&v| c(v, 0.0)));
    [(half_a, half_n), (one_a, one_n)]
}

/// Generated spin generators against the published matrices, entrywise.
pub fn reference_generators() -> OracleReport {
    let [(ha, hn), (oa, on)] = reference_matrices();
    let half = build_generators(&spin_half_system()).expect("spin-1/2 generators");
    let one = build_generators(&spin_one_system()).expect("spin-1 generators");
    let errors = [
        max_abs(&(half.a_tilde() - ha)),
        max_abs(&(half.n_tilde() - hn)),
        max_abs(&(one.a_tilde() - oa)),
        max_abs(&(one.n_tilde() - on)),
    ];
    let max_error = errors.iter().fold(0.0f64, |a, &b| a.max(b));
    OracleReport::new(
        "reference-generators",
        max_error,
        0.0,
        format!(
            "spin-1/2 A~ {:.1e}, N~ {:.1e}; spin-1 A~ {:.1e}, N~ {:.1e}",
            errors[0], errors[1], errors[2], errors[3]
        ),
    )
}

/// Free evolution of the closed spin-1/2 over one sampling period: populations
/// stay fixed and coherences rotate by `exp(-i w_nm dt)`.
pub fn free_evolution() -> Result<OracleReport> {
    let sys = spin_half_system();
    let gen = build_generators(&sys)?;
    let dt = 0.0505;
    let model = discretize(&gen, dt)?;
    let mut rng = stream_rng(7, Stream::RiccatiInit);
    let mut max_error = 0.0f64;
    for _ in 0..20 {
        let rho = random_density_matrix(2, &mut rng);
        let x = vectorize(&rho);
        let next = matrix_of(&(model.a() * x.values()), 2);
        let exact = CMatrix::from_fn(2, 2, |n, m| {
            let w = (sys.energies()[n] - sys.energies()[m]) / sys.hbar();
            rho.matrix()[(n, m)] * C64::new(0.0, -w * dt).exp()
        });
        max_error = max_error.max(max_abs(&(next - exact)));
    }
    Ok(OracleReport::new(
        "free-evolution",
        max_error,
        1e-12,
        "20 random spin-1/2 states, closed-form rotation".into(),
    ))
}

/// Open three-level system used by [`dynamics_step`].
pub fn open_spin_one() -> Result<PhysicalSystem> {
    let base = spin_one_system();
    let rates = DMatrix::from_row_slice(3, 3, &[0.0, 0.05, 0.02, 0.1, 0.0, 0.03, 0.04, 0.0, 0.0]);
    PhysicalSystem::new(base.energies().to_vec(), base.dipole().clone(), rates, base.hbar())
}

/// One discrete step `A x + B(x) u` against RK4 of the master equation with
/// the control term frozen at the step's initial state, on random states of
/// an open spin-1 system and the closed spin-1/2.
pub fn dynamics_step(samples: usize, seed: u64) -> Result<OracleReport> {
    let mut rng = stream_rng(seed, Stream::RiccatiInit);
    let mut max_error = 0.0f64;
    for sys in [spin_half_system(), open_spin_one()?] {
        let gen = build_generators(&sys)?;
        let dt = 0.05;
        let model = discretize(&gen, dt)?;
        for _ in 0..samples {
            let rho = random_density_matrix(sys.dim(), &mut rng);
            let u: f64 = rng.random_range(-3.0..3.0);
            let x_tilde = vectorize(&rho);
            let x = x_tilde.values() - gen.x_equilibrium();
            let b = control_matrix(&model, &gen, &x)?;
            let next = model.a() * &x + b * C64::new(u, 0.0) + gen.x_equilibrium();
            let reference = rk4_density(&sys, rho.matrix(), u, Some(rho.matrix()), dt, 1000);
            max_error = max_error.max(max_abs(&(matrix_of(&next, sys.dim()) - reference)));
        }
    }
    Ok(OracleReport::new(
        "dynamics-step",
        max_error,
        1e-9,
        format!("{samples} random states each on spin-1/2 and an open spin-1, dt/1000 RK4"),
    ))
}

/// Replays a trajectory's piecewise-constant controls through RK4 of the full
/// bilinear master equation from its initial state and reports the largest
/// deviation of the recorded states.
pub fn dynamics_horizon(sys: &PhysicalSystem, trajectory: &Trajectory, substeps: usize) -> Result<OracleReport> {
    let dim = sys.dim();
    let mut rho = matrix_of(trajectory.initial_state.values(), dim);
    let mut max_error = 0.0f64;
    let mut first_bad = None;
    for s in &trajectory.steps {
        rho = rk4_density(sys, &rho, s.control, None, trajectory.dt, substeps);
        let err = max_abs(&(matrix_of(s.state.values(), dim) - &rho));
        if err > 1e-6 && first_bad.is_none() {
            first_bad = Some(s.step);
        }
        max_error = max_error.max(err);
    }
    let detail = match first_bad {
        Some(step) => format!("{} steps; error first exceeds 1e-6 at step {step}", trajectory.len()),
        None => format!("{} steps", trajectory.len()),
    };
    Ok(OracleReport::new("dynamics-horizon", max_error, 1e-6, detail))
}

/// Spin-1/2 controller fixture: sampling period 0.0505, `G_r = 1e-5`,
/// `Omega = 1`, ground-state target on the excited level, and an index
/// obtained from a random start.
#[derive(Clone, Debug)]
pub struct SpinHalfFixture {
    pub generators: BilinearGenerators,
    pub model: DiscreteModel,
    pub config: ControllerConfig,
    pub objective: Objective,
    pub index: RiccatiState,
}

pub fn spin_half_fixture(seed: u64) -> Result<SpinHalfFixture> {
    let sys = spin_half_system();
    let gen = build_generators(&sys)?;
    let model = discretize(&gen, 0.0505)?;
    let row = Observable::projector(2, 1)?.measurement_row();
    let config = ControllerConfig::new(1e-5, 1.0, 1.0, 200)?;
    let objective = Objective::shifted(&row, gen.x_equilibrium(), config.o_d);
    let ground = vectorize(&DensityMatrix::pure_level(2, 0)?);
    let x0 = ground.values() - gen.x_equilibrium();
    let b = control_matrix(&model, &gen, &x0)?;
    let opts = RiccatiOptions {
        init: RiccatiInit::Random,
        max_iterations: 1000,
        on_nonconvergence: OnNonConvergence::LastIterate,
        ..Default::default()
    };
    let mut rng = stream_rng(seed, Stream::RiccatiInit);
    let mut index = steady_index(&model, &b, &config, &objective, &opts, None, &mut rng)?.state;
    index.omega = Some(0.0);
    Ok(SpinHalfFixture {
        generators: gen,
        model,
        config,
        objective,
        index,
    })
}

fn fixture_states(fx: &SpinHalfFixture, samples: usize, seed: u64) -> Vec<CVector> {
    let mut rng = stream_rng(seed, Stream::ProcessNoise);
    (0..samples)
        .map(|_| {
            let rho = random_density_matrix(2, &mut rng);
            VectorizedState::into_values(vectorize(&rho)) - fx.generators.x_equilibrium()
        })
        .collect()
}

/// Closed-form `-ln gamma` one step back against quadrature over the control.
pub fn gamma_quadrature(samples: usize, seed: u64) -> Result<OracleReport> {
    let fx = spin_half_fixture(seed)?;
    let mut max_error = 0.0f64;
    let mut largest = 0.0f64;
    for x in fixture_states(&fx, samples, seed) {
        let b = control_matrix(&fx.model, &fx.generators, &x)?;
        let mut prev = riccati_step(&fx.index, &fx.model, &b, &fx.config, &fx.objective)?;
        prev.omega = Some(omega_step(&fx.index, &fx.model, &b, &fx.config, &fx.objective, None)?.value);
        let closed = gamma_closed_form(&x, &prev)?;
        let quad = gamma_quadrature_oracle(&x, &fx.index, &fx.model, &b, &fx.config, &fx.objective, None)?;
        max_error = max_error.max((closed - quad).abs());
        largest = largest.max(closed.abs());
    }
    Ok(OracleReport::new(
        "gamma-quadrature",
        max_error,
        1e-6,
        format!("{samples} random spin-1/2 states; largest |value| {largest:.3e}"),
    ))
}

/// Control mean and variance against the mode and curvature of the integrand.
pub fn control_argmin(samples: usize, seed: u64) -> Result<OracleReport> {
    let fx = spin_half_fixture(seed)?;
    let mut mean_error = 0.0f64;
    let mut var_error = 0.0f64;
    for x in fixture_states(&fx, samples, seed) {
        let b = control_matrix(&fx.model, &fx.generators, &x)?;
        let law = control_law(&x, &fx.index, &fx.model, &b, &fx.config, &fx.objective)?;
        let oracle = control_argmin_oracle(&x, &fx.index, &fx.model, &b, &fx.config, &fx.objective)?;
        mean_error = mean_error.max((law.v - oracle.u_star).abs());
        var_error = var_error.max((law.r - oracle.variance).abs() / law.r);
    }
    Ok(OracleReport::new(
        "control-argmin",
        mean_error.max(var_error),
        1e-4,
        format!(
            "{samples} random spin-1/2 states; mean error {mean_error:.3e}, relative variance error {var_error:.3e}"
        ),
    ))
}

/// Largest deviation of the eigenfunction overlap matrix from the identity.
pub fn morse_orthonormality(p: &MorseParameters) -> Result<OracleReport> {
    let s = overlap_matrix(p, 1e-13)?;
    let err = (s.clone() - DMatrix::identity(s.nrows(), s.ncols())).amax();
    Ok(OracleReport::new(
        "morse-orthonormality",
        err,
        1e-7,
        format!("{} bound levels", s.nrows()),
    ))
}

/// Dipole and Gaussian-target matrices at two quadrature tolerances.
pub fn morse_refinement(p: &MorseParameters, t: &TargetGaussian) -> Result<OracleReport> {
    let dipole = (dipole_matrix_with_tol(p, 1e-10)? - dipole_matrix_with_tol(p, 1e-14)?).amax();
    let target = (gaussian_target_matrix(p, t, 1e-10)? - gaussian_target_matrix(p, t, 1e-14)?).amax();
    Ok(OracleReport::new(
        "morse-refinement",
        dipole.max(target),
        1e-8,
        format!("dipole {dipole:.3e}, target {target:.3e}"),
    ))
}

//! Closed-loop execution: noise, propagation, measurement and control.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal};

use crate::control::{control_law, steady_index, ControllerConfig, IndexMode, Objective, RiccatiOptions, RiccatiState};
use crate::dynamics::{control_matrix, BilinearGenerators, DiscreteModel, GENERATOR_TOL};
use crate::error::{Error, Result};
use crate::linalg::linear;
use crate::state::{min_eigenvalue, CMatrix, CRow, CVector, SlotLayout, VectorizedState, C64};

/// Validity drift beyond which a step is flagged in the diagnostics.
pub const DRIFT_FLAG: f64 = 1e-4;

/// Independent random streams derived from one seed.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Stream {
    RiccatiInit = 0,
    ProcessNoise = 1,
    MeasurementNoise = 2,
    ControlSampling = 3,
}

pub fn stream_rng(seed: u64, stream: Stream) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream as u64);
    rng
}

/// Process and measurement noise levels.
///
/// Process noise `zeta` draws each coherence pair as `z, conj z` with real and
/// imaginary parts of standard deviation `process_std / sqrt 2`, and populations
/// as independent `N(0, process_std^2)` draws with their mean removed, so every
/// sample is Hermitian and trace-free. Measurement noise is `N(0, measure_std^2)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct NoiseSpec {
    pub process_std: f64,
    pub measure_std: f64,
    pub process_enabled: bool,
    pub measure_enabled: bool,
}

impl NoiseSpec {
    pub fn off() -> Self {
        NoiseSpec {
            process_std: 0.0,
            measure_std: 0.0,
            process_enabled: false,
            measure_enabled: false,
        }
    }

    pub fn validate(&self) -> Result<()> {
        for (name, v) in [("process_std", self.process_std), ("measure_std", self.measure_std)] {
            if !(v.is_finite() && v >= 0.0) {
                return Err(Error::Parameter {
                    name,
                    detail: format!("must be nonnegative, found {v}"),
                });
            }
        }
        Ok(())
    }

    pub fn process_active(&self) -> bool {
        self.process_enabled && self.process_std > 0.0
    }

    pub fn measure_active(&self) -> bool {
        self.measure_enabled && self.measure_std > 0.0
    }
}

/// One structured draw of `zeta` (see [`NoiseSpec`]); zero when disabled.
pub fn sample_process_noise<R: Rng>(spec: &NoiseSpec, layout: &SlotLayout, rng: &mut R) -> CVector {
    let mut zeta = CVector::zeros(layout.len());
    if !spec.process_active() {
        return zeta;
    }
    let pop = Normal::new(0.0, spec.process_std).expect("validated std");
    let part = Normal::new(0.0, spec.process_std / 2f64.sqrt()).expect("validated std");
    let l = layout.dim();
    let draws: Vec<f64> = (0..l).map(|_| pop.sample(rng)).collect();
    let mean = draws.iter().sum::<f64>() / l as f64;
    for (k, d) in draws.iter().enumerate() {
        zeta[k] = C64::new(d - mean, 0.0);
    }
    for (p, q) in layout.pairs() {
        let z = C64::new(part.sample(rng), part.sample(rng));
        zeta[p] = z;
        zeta[q] = z.conj();
    }
    zeta
}

/// Measurement noise draw; zero when disabled.
pub fn sample_measurement_noise<R: Rng>(spec: &NoiseSpec, rng: &mut R) -> f64 {
    if !spec.measure_active() {
        return 0.0;
    }
    Normal::new(0.0, spec.measure_std).expect("validated std").sample(rng)
}

/// `x_t = A x + B(x) u + zeta` on the shifted state.
pub fn step(
    x: &CVector,
    u: f64,
    model: &DiscreteModel,
    gen: &BilinearGenerators,
    zeta: Option<&CVector>,
) -> Result<CVector> {
    let b = control_matrix(model, gen, x)?;
    let mut next = model.a() * x + b * C64::new(u, 0.0);
    if let Some(z) = zeta {
        if z.len() != next.len() {
            return Err(Error::DimensionMismatch {
                expected: next.len(),
                found: z.len(),
                context: "process noise",
            });
        }
        next += z;
    }
    Ok(next)
}

/// `o = D (x + x_e) + sigma`, the physical expectation plus noise.
pub fn measure(x: &CVector, row: &CRow, gen: &BilinearGenerators, sigma: f64) -> f64 {
    linear(row, &(x + gen.x_equilibrium())).re + sigma
}

/// How the applied control is obtained from the controller density.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ControlMode {
    /// `u = v`.
    Mean,
    /// `u ~ N(v, R)`.
    Sample,
    /// `u = 0`, the controller is not consulted.
    Off,
}

/// Everything needed to run one closed-loop trajectory.
#[derive(Clone, Debug)]
pub struct ClosedLoop {
    pub generators: BilinearGenerators,
    pub model: DiscreteModel,
    /// Measurement row `D` of the physical observable.
    pub row: CRow,
    pub initial: VectorizedState,
    pub controller: ControllerConfig,
    pub riccati: RiccatiOptions,
    pub noise: NoiseSpec,
    pub control_mode: ControlMode,
    pub renormalize_trace: bool,
    pub seed: u64,
}

impl ClosedLoop {
    /// Builds a setup, choosing `x_e` as the initial state when it is an
    /// equilibrium of the drift and keeping the generators' default otherwise.
    #[allow(clippy::too_many_arguments)]
    pub fn new(
        generators: BilinearGenerators,
        dt: f64,
        row: CRow,
        initial: VectorizedState,
        controller: ControllerConfig,
        riccati: RiccatiOptions,
        noise: NoiseSpec,
        seed: u64,
    ) -> Result<Self> {
        controller.validate()?;
        riccati.validate()?;
        noise.validate()?;
        let len = generators.a_tilde().nrows();
        if initial.len() != len || row.len() != len {
            return Err(Error::DimensionMismatch {
                expected: len,
                found: initial.len().max(row.len()),
                context: "closed-loop setup",
            });
        }
        let generators = if generators.equilibrium_residual(initial.values()) <= GENERATOR_TOL {
            generators.with_equilibrium(initial.values().clone())?
        } else {
            generators
        };
        let model = crate::dynamics::discretize(&generators, dt)?.with_measurement_row(row.clone())?;
        Ok(ClosedLoop {
            generators,
            model,
            row,
            initial,
            controller,
            riccati,
            noise,
            control_mode: ControlMode::Mean,
            renormalize_trace: false,
            seed,
        })
    }

    pub fn objective(&self) -> Objective {
        Objective::shifted(&self.row, self.generators.x_equilibrium(), self.controller.o_d)
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct StepDiagnostics {
    pub trace_defect: f64,
    pub hermiticity_defect: f64,
    pub min_eigenvalue: f64,
    pub riccati_iterations: usize,
    pub riccati_converged: bool,
    /// Trace or Hermiticity drift above [`DRIFT_FLAG`].
    pub flagged: bool,
}

/// State after one step together with what produced it.
#[derive(Clone, Debug, PartialEq)]
pub struct StepRecord {
    pub step: usize,
    pub time: f64,
    /// Unshifted vectorised state `x~_t`.
    pub state: VectorizedState,
    pub output: f64,
    /// Applied control `u_{t-1}`.
    pub control: f64,
    /// Controller mean `v_{t-1}`.
    pub control_mean: f64,
    /// Controller variance `R_t`.
    pub control_variance: f64,
    pub diagnostics: StepDiagnostics,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Trajectory {
    pub dt: f64,
    pub o_d: f64,
    pub initial_state: VectorizedState,
    pub initial_output: f64,
    pub steps: Vec<StepRecord>,
}

impl Trajectory {
    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    pub fn dim(&self) -> usize {
        self.initial_state.dim()
    }

    pub fn times(&self) -> Vec<f64> {
        self.steps.iter().map(|s| s.time).collect()
    }

    pub fn outputs(&self) -> Vec<f64> {
        self.steps.iter().map(|s| s.output).collect()
    }

    pub fn controls(&self) -> Vec<f64> {
        self.steps.iter().map(|s| s.control).collect()
    }

    pub fn control_variances(&self) -> Vec<f64> {
        self.steps.iter().map(|s| s.control_variance).collect()
    }

    pub fn max_trace_defect(&self) -> f64 {
        self.steps.iter().fold(0.0, |a, s| a.max(s.diagnostics.trace_defect))
    }

    pub fn max_hermiticity_defect(&self) -> f64 {
        self.steps
            .iter()
            .fold(0.0, |a, s| a.max(s.diagnostics.hermiticity_defect))
    }

    pub fn min_eigenvalue(&self) -> f64 {
        self.steps
            .iter()
            .fold(f64::INFINITY, |a, s| a.min(s.diagnostics.min_eigenvalue))
    }

    pub fn max_abs_control(&self) -> f64 {
        self.steps.iter().fold(0.0, |a, s| a.max(s.control.abs()))
    }
}

fn diagnose(state: &VectorizedState) -> (f64, f64, f64) {
    let layout = state.layout();
    let l = layout.dim();
    let mut m = CMatrix::zeros(l, l);
    for (k, &(n, c)) in layout.slots().iter().enumerate() {
        m[(n, c)] = state.values()[k];
    }
    (state.trace_defect(), state.hermiticity_defect(), min_eigenvalue(&m))
}

/// Runs the closed loop for `controller.horizon` steps.
///
/// Each step recomputes `B` at the current state, obtains the index (fixed
/// point or backward recursion, optionally warm-started from the previous
/// step), evaluates the controller, applies `u`, propagates and measures.
pub fn run_closed_loop(setup: &ClosedLoop) -> Result<Trajectory> {
    let gen = &setup.generators;
    let model = &setup.model;
    let cfg = &setup.controller;
    let obj = setup.objective();
    let layout = SlotLayout::new(setup.initial.dim());
    let horizon = cfg.horizon;

    let mut init_rng = stream_rng(setup.seed, Stream::RiccatiInit);
    let mut process_rng = stream_rng(setup.seed, Stream::ProcessNoise);
    let mut measure_rng = stream_rng(setup.seed, Stream::MeasurementNoise);
    let mut sample_rng = stream_rng(setup.seed, Stream::ControlSampling);

    let mut x = setup.initial.values() - gen.x_equilibrium();
    let initial_output = measure(&x, &setup.row, gen, 0.0);
    let mut index: Option<RiccatiState> = None;
    let mut steps = Vec::with_capacity(horizon);

    for t in 1..=horizon {
        let wrap = |e: Error| Error::Step {
            step: t,
            source: Box::new(e),
        };
        let b = control_matrix(model, gen, &x).map_err(wrap)?;
        let (v, r, iterations, converged) = if setup.control_mode == ControlMode::Off {
            (0.0, cfg.omega, 0, true)
        } else {
            let mut opts = setup.riccati;
            let start = match opts.mode {
                IndexMode::SteadyState if opts.warm_start => index.take(),
                IndexMode::SteadyState => None,
                IndexMode::Backward => {
                    opts.max_iterations = horizon - t + 1;
                    None
                }
            };
            let solved = steady_index(model, &b, cfg, &obj, &opts, start, &mut init_rng).map_err(wrap)?;
            let law = control_law(&x, &solved.state, model, &b, cfg, &obj).map_err(wrap)?;
            let out = (law.v, law.r, solved.iterations, solved.converged);
            index = Some(solved.state);
            out
        };
        let u = match setup.control_mode {
            ControlMode::Sample => v + r.sqrt() * sample_rng.sample::<f64, _>(rand_distr::StandardNormal),
            _ => v,
        };
        let zeta = sample_process_noise(&setup.noise, &layout, &mut process_rng);
        x = model.a() * &x + &b * C64::new(u, 0.0) + zeta;
        if setup.renormalize_trace {
            let excess: C64 =
                (0..layout.dim()).map(|k| x[k] + gen.x_equilibrium()[k]).sum::<C64>() - C64::new(1.0, 0.0);
            for k in 0..layout.dim() {
                x[k] -= excess / layout.dim() as f64;
            }
        }
        let sigma = sample_measurement_noise(&setup.noise, &mut measure_rng);
        let output = measure(&x, &setup.row, gen, sigma);
        let state = VectorizedState::from_values(&x + gen.x_equilibrium())?;
        let (trace_defect, hermiticity_defect, min_eig) = diagnose(&state);
        steps.push(StepRecord {
            step: t,
            time: t as f64 * model.dt(),
            state,
            output,
            control: u,
            control_mean: v,
            control_variance: r,
            diagnostics: StepDiagnostics {
                trace_defect,
                hermiticity_defect,
                min_eigenvalue: min_eig,
                riccati_iterations: iterations,
                riccati_converged: converged,
                flagged: trace_defect > DRIFT_FLAG || hermiticity_defect > DRIFT_FLAG,
            },
        });
    }
    Ok(Trajectory {
        dt: model.dt(),
        o_d: cfg.o_d,
        initial_state: setup.initial.clone(),
        initial_output,
        steps,
    })
}

use rand::Rng;

use quantum_fpd::control::{ControllerConfig, OnNonConvergence, RiccatiInit, RiccatiOptions};
use quantum_fpd::dynamics::{build_generators, discretize, BilinearGenerators, PhysicalSystem};
use quantum_fpd::models::{spin_half_system, spin_one_system};
use quantum_fpd::oracles::{random_density_matrix, rk4_density};
use quantum_fpd::simulate::*;
use quantum_fpd::state::*;

fn noise(process: f64, measure: f64) -> NoiseSpec {
    NoiseSpec {
        process_std: process,
        measure_std: measure,
        process_enabled: true,
        measure_enabled: true,
    }
}

fn spin_half_loop(seed: u64, spec: NoiseSpec, mode: ControlMode, horizon: usize) -> ClosedLoop {
    let gen = build_generators(&spin_half_system()).unwrap();
    let row = Observable::projector(2, 1).unwrap().measurement_row();
    let ket = CVector::from_vec(vec![C64::new(1.0, 0.0), C64::new(0.0, 0.0)]);
    let initial = vectorize(&DensityMatrix::from_ket(&ket).unwrap());
    let cfg = ControllerConfig::new(1e-5, 1.0, 1.0, horizon).unwrap();
    let opts = RiccatiOptions {
        init: RiccatiInit::Random,
        max_iterations: 1000,
        on_nonconvergence: OnNonConvergence::LastIterate,
        warm_start: true,
        ..Default::default()
    };
    let mut setup = ClosedLoop::new(gen, 0.0505, row, initial, cfg, opts, spec, seed).unwrap();
    setup.control_mode = mode;
    setup
}

#[test]
fn process_noise_is_hermitian_trace_free_with_expected_spread() {
    let layout = SlotLayout::new(3);
    let spec = noise(0.2, 0.0);
    let mut rng = stream_rng(5, Stream::ProcessNoise);
    let n = 100_000;
    let mut sum_pair = C64::new(0.0, 0.0);
    let mut sq_pair = 0.0;
    let mut sum_pop = 0.0;
    for _ in 0..n {
        let z = sample_process_noise(&spec, &layout, &mut rng);
        assert!((0..3).map(|k| z[k]).sum::<C64>().norm() < 1e-15);
        for (p, q) in layout.pairs() {
            assert_eq!(z[p], z[q].conj());
        }
        let (p, _) = layout.pairs().next().unwrap();
        sum_pair += z[p];
        sq_pair += z[p].norm_sqr();
        sum_pop += z[0].re;
    }
    let nf = n as f64;
    let bound = 3.0 * 0.2 / nf.sqrt();
    assert!((sum_pair / nf).norm() < 2.0 * bound);
    assert!((sum_pop / nf).abs() < bound);
    let var = sq_pair / nf;
    assert!((var - 0.04).abs() < 0.05 * 0.04, "coherence variance {var}");
}

#[test]
fn measurement_noise_statistics() {
    let spec = noise(0.0, 0.3);
    let mut rng = stream_rng(9, Stream::MeasurementNoise);
    let n = 100_000;
    let draws: Vec<f64> = (0..n).map(|_| sample_measurement_noise(&spec, &mut rng)).collect();
    let mean = draws.iter().sum::<f64>() / n as f64;
    let std = (draws.iter().map(|d| (d - mean).powi(2)).sum::<f64>() / (n - 1) as f64).sqrt();
    assert!(mean.abs() < 3.0 * 0.3 / (n as f64).sqrt());
    assert!((std - 0.3).abs() < 0.05 * 0.3);
}

#[test]
fn disabled_noise_is_zero() {
    let layout = SlotLayout::new(2);
    let mut rng = stream_rng(0, Stream::ProcessNoise);
    let off = NoiseSpec::off();
    assert!(sample_process_noise(&off, &layout, &mut rng)
        .iter()
        .all(|z| *z == C64::new(0.0, 0.0)));
    assert_eq!(sample_measurement_noise(&off, &mut rng), 0.0);
    let disabled = NoiseSpec {
        process_enabled: false,
        measure_enabled: false,
        ..noise(0.5, 0.5)
    };
    assert_eq!(sample_measurement_noise(&disabled, &mut rng), 0.0);
    assert!(noise(-1.0, 0.0).validate().is_err());
}

fn free_evolution_matches_rk4(sys: &PhysicalSystem, seed: u64) {
    let gen = build_generators(sys).unwrap();
    let dt = 0.07;
    let model = discretize(&gen, dt).unwrap();
    let mut rng = stream_rng(seed, Stream::RiccatiInit);
    let rho = random_density_matrix(sys.dim(), &mut rng);
    let mut x = vectorize(&rho).into_values() - gen.x_equilibrium();
    let mut reference = rho.matrix().clone();
    for _ in 0..50 {
        x = step(&x, 0.0, &model, &gen, None).unwrap();
        reference = rk4_density(sys, &reference, 0.0, None, dt, 200);
    }
    let got = devectorize_values(&(x + gen.x_equilibrium()));
    assert!((got - reference).camax() < 1e-8);
}

fn devectorize_values(x: &CVector) -> CMatrix {
    let l = side_length(x.len()).unwrap();
    let layout = SlotLayout::new(l);
    let mut m = CMatrix::zeros(l, l);
    for (k, &(n, c)) in layout.slots().iter().enumerate() {
        m[(n, c)] = x[k];
    }
    m
}

#[test]
fn uncontrolled_step_matches_master_equation() {
    free_evolution_matches_rk4(&spin_half_system(), 1);
    free_evolution_matches_rk4(&spin_one_system(), 2);
    let rates = nalgebra::DMatrix::from_row_slice(3, 3, &[0.0, 0.0, 0.0, 0.4, 0.0, 0.1, 0.2, 0.3, 0.0]);
    let open = PhysicalSystem::new(vec![0.0, 1.0, 2.5], spin_one_system().dipole().clone(), rates, 1.0).unwrap();
    free_evolution_matches_rk4(&open, 3);
}

#[test]
fn measurement_is_physical_expectation() {
    let gen: BilinearGenerators = build_generators(&spin_half_system()).unwrap();
    let row = Observable::projector(2, 1).unwrap().measurement_row();
    let ket = CVector::from_vec(vec![C64::new(0.6, 0.0), C64::new(0.0, 0.8)]);
    let x = vectorize(&DensityMatrix::from_ket(&ket).unwrap()).into_values() - gen.x_equilibrium();
    assert!((measure(&x, &row, &gen, 0.0) - 0.64).abs() < 1e-14);
    assert!((measure(&x, &row, &gen, 0.1) - 0.74).abs() < 1e-14);
}

#[test]
fn runs_are_deterministic_per_seed() {
    let a = run_closed_loop(&spin_half_loop(11, noise(1e-3, 1e-3), ControlMode::Sample, 30)).unwrap();
    let b = run_closed_loop(&spin_half_loop(11, noise(1e-3, 1e-3), ControlMode::Sample, 30)).unwrap();
    assert_eq!(a, b);
    let c = run_closed_loop(&spin_half_loop(12, noise(1e-3, 1e-3), ControlMode::Sample, 30)).unwrap();
    assert_ne!(a.outputs(), c.outputs());
}

#[test]
fn streams_are_independent() {
    let mut first: Vec<u64> = Vec::new();
    for s in [
        Stream::RiccatiInit,
        Stream::ProcessNoise,
        Stream::MeasurementNoise,
        Stream::ControlSampling,
    ] {
        let mut rng = stream_rng(42, s);
        let v: u64 = rng.random();
        assert!(!first.contains(&v));
        first.push(v);
    }
    // Enabling measurement noise leaves the state sequence untouched.
    let quiet = run_closed_loop(&spin_half_loop(4, noise(1e-3, 0.0), ControlMode::Mean, 5)).unwrap();
    let loud = run_closed_loop(&spin_half_loop(4, noise(1e-3, 0.2), ControlMode::Mean, 5)).unwrap();
    assert_eq!(quiet.steps[0].state, loud.steps[0].state);
    assert_ne!(quiet.steps[0].output, loud.steps[0].output);
}

#[test]
fn uncontrolled_loop_preserves_trace_exactly() {
    let traj = run_closed_loop(&spin_half_loop(0, NoiseSpec::off(), ControlMode::Off, 200)).unwrap();
    assert!(traj.controls().iter().all(|u| *u == 0.0));
    assert!(traj.max_trace_defect() <= 1e-12);
    assert!(traj.max_hermiticity_defect() <= 1e-12);
    assert!(traj.outputs().iter().all(|o| o.abs() < 1e-12));
}

#[test]
fn sampled_controls_use_controller_variance() {
    let traj = run_closed_loop(&spin_half_loop(2, NoiseSpec::off(), ControlMode::Sample, 40)).unwrap();
    for s in &traj.steps {
        assert!(s.control_variance > 0.0 && s.control_variance <= 1.0);
        assert!(s.control.is_finite());
    }
    assert!(traj.steps.iter().any(|s| s.control != s.control_mean));
}

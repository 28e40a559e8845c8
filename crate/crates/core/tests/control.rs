use proptest::prelude::*;

use quantum_fpd::control::*;
use quantum_fpd::dynamics::{build_generators, control_matrix, discretize, BilinearGenerators, DiscreteModel};
use quantum_fpd::models::spin_half_system;
use quantum_fpd::oracles::{random_density_matrix, spin_half_fixture};
use quantum_fpd::simulate::{stream_rng, Stream};
use quantum_fpd::state::*;
use quantum_fpd::Error;

fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

fn c1(v: C64) -> CMatrix {
    CMatrix::from_element(1, 1, v)
}

/// One-slot system with `A = 1` and `B(x) = 0.21 (x + 1)`.
fn scalar() -> (BilinearGenerators, DiscreteModel) {
    let gen = BilinearGenerators::from_matrices(c1(c(0.0, 0.0)), c1(c(0.0, -0.7))).unwrap();
    let model = discretize(&gen, 0.3).unwrap();
    (gen, model)
}

fn scalar_cfg() -> ControllerConfig {
    ControllerConfig {
        g_r: 0.5,
        g: 0.8,
        omega: 1.0,
        u_r: 0.3,
        o_d: 1.2,
        horizon: 10,
    }
}

const D: f64 = 1.5;

fn scalar_index() -> RiccatiState {
    RiccatiState {
        m: c1(c(0.9, 0.0)),
        p: CRow::from_element(1, c(0.2, 0.0)),
        omega: Some(0.7),
    }
}

struct Hand {
    m: f64,
    p: f64,
    omega: f64,
    v: f64,
    r: f64,
}

fn hand(x: f64) -> Hand {
    let cfg = scalar_cfg();
    let (a, b) = (1.0, 0.3 * 0.7 * (x + 1.0));
    let (m, p, omega) = (0.9, 0.2, 0.7);
    let q = m + D * D / cfg.g_r;
    let s = 1.0 / cfg.omega + b * q * b;
    let bqa = b * q * a;
    let lin = p - 2.0 * cfg.o_d * D / cfg.g_r;
    let h = cfg.u_r / cfg.omega - 0.5 * lin * b;
    Hand {
        m: a * q * a - bqa * bqa / s,
        p: lin * a + 2.0 * h / s * bqa,
        omega: omega + cfg.o_d * cfg.o_d / cfg.g_r + (cfg.g_r / cfg.g).ln() - cfg.g * (1.0 / cfg.g - 1.0 / cfg.g_r)
            + cfg.u_r * cfg.u_r / cfg.omega
            - h * h / s
            + (cfg.omega * s).ln(),
        v: (h - bqa * x) / s,
        r: 1.0 / s,
    }
}

#[test]
fn scalar_recursion_matches_hand_evaluation() {
    let (gen, model) = scalar();
    let cfg = scalar_cfg();
    let obj = Objective::direct(CRow::from_element(1, c(D, 0.0)), cfg.o_d);
    let x = 0.4;
    let xv = CVector::from_element(1, c(x, 0.0));
    let b = control_matrix(&model, &gen, &xv).unwrap();
    assert!((b[0] - c(0.3 * 0.7 * 1.4, 0.0)).norm() < 1e-15);

    let expected = hand(x);
    let prev = riccati_step(&scalar_index(), &model, &b, &cfg, &obj).unwrap();
    assert!((prev.m[(0, 0)].re - expected.m).abs() < 1e-12 * expected.m.abs());
    assert!((prev.p[0].re - expected.p).abs() < 1e-12 * expected.p.abs());
    let w = omega_step(&scalar_index(), &model, &b, &cfg, &obj, None).unwrap();
    assert!((w.value - expected.omega).abs() < 1e-12 * expected.omega.abs());
    assert!(!w.noise_term_included);

    let law = control_law(&xv, &scalar_index(), &model, &b, &cfg, &obj).unwrap();
    assert!((law.v - expected.v).abs() < 1e-12);
    assert!((law.r - expected.r).abs() < 1e-15);
    assert!(
        stationarity_residual(law.v, &xv, &scalar_index(), &model, &b, &cfg, &obj)
            .unwrap()
            .abs()
            < 1e-10
    );
}

#[test]
fn scalar_performance_index_term_by_term() {
    let index = RiccatiState {
        m: c1(c(2.0, 0.0)),
        p: CRow::from_element(1, c(-0.5, 0.0)),
        omega: Some(1.25),
    };
    let x = CVector::from_element(1, c(0.6, 0.0));
    let expected = 0.5 * (2.0 * 0.36 - 0.5 * 0.6 + 1.25);
    assert!((gamma_closed_form(&x, &index).unwrap() - expected).abs() < 1e-15);
    let no_omega = RiccatiState { omega: None, ..index };
    assert!((gamma_closed_form(&x, &no_omega).unwrap() - 0.5 * (0.72 - 0.3)).abs() < 1e-15);
}

#[test]
fn scalar_quadrature_agrees_with_closed_form_and_trapezoid() {
    let (gen, model) = scalar();
    let cfg = scalar_cfg();
    let obj = Objective::direct(CRow::from_element(1, c(D, 0.0)), cfg.o_d);
    for &x in &[-0.3, 0.0, 0.4, 1.1] {
        let xv = CVector::from_element(1, c(x, 0.0));
        let b = control_matrix(&model, &gen, &xv).unwrap();
        let mut prev = riccati_step(&scalar_index(), &model, &b, &cfg, &obj).unwrap();
        prev.omega = Some(omega_step(&scalar_index(), &model, &b, &cfg, &obj, None).unwrap().value);
        let closed = gamma_closed_form(&xv, &prev).unwrap();
        let quad = gamma_quadrature_oracle(&xv, &scalar_index(), &model, &b, &cfg, &obj, None).unwrap();
        assert!((closed - quad).abs() < 1e-7, "x={x}: {closed} vs {quad}");

        // Independent trapezoid of N(u; u_r, Omega) exp(-beta(u)).
        let bb = b[0].re;
        let q = 0.9 + D * D / cfg.g_r;
        let lin = 0.2 - 2.0 * cfg.o_d * D / cfg.g_r;
        let k = 0.7 + cfg.o_d * cfg.o_d / cfg.g_r + (cfg.g_r / cfg.g).ln() - cfg.g * (1.0 / cfg.g - 1.0 / cfg.g_r);
        let log_f = |u: f64| {
            let mu = x + bb * u;
            -0.5 * (2.0 * std::f64::consts::PI * cfg.omega).ln()
                - (u - cfg.u_r).powi(2) / (2.0 * cfg.omega)
                - 0.5 * (q * mu * mu + lin * mu + k)
        };
        let (lo, hi, n) = (-20.0, 20.0, 400_000);
        let h = (hi - lo) / n as f64;
        let peak = (0..=n)
            .map(|i| log_f(lo + h * i as f64))
            .fold(f64::NEG_INFINITY, f64::max);
        let sum: f64 = (0..=n)
            .map(|i| {
                let w = if i == 0 || i == n { 0.5 } else { 1.0 };
                w * (log_f(lo + h * i as f64) - peak).exp()
            })
            .sum();
        let trap = -(peak + (h * sum).ln());
        assert!((trap - quad).abs() < 1e-7, "x={x}: trapezoid {trap} vs {quad}");
    }
}

#[test]
fn scalar_argmin_matches_control_law() {
    let (gen, model) = scalar();
    let cfg = scalar_cfg();
    let obj = Objective::direct(CRow::from_element(1, c(D, 0.0)), cfg.o_d);
    let xv = CVector::from_element(1, c(0.25, 0.0));
    let b = control_matrix(&model, &gen, &xv).unwrap();
    let law = control_law(&xv, &scalar_index(), &model, &b, &cfg, &obj).unwrap();
    let oracle = control_argmin_oracle(&xv, &scalar_index(), &model, &b, &cfg, &obj).unwrap();
    assert!((law.v - oracle.u_star).abs() < 1e-6);
    assert!((law.r - oracle.variance).abs() < 1e-4 * law.r);
}

#[test]
fn negative_curvature_is_reported() {
    let (gen, model) = scalar();
    let cfg = scalar_cfg();
    let obj = Objective::direct(CRow::from_element(1, c(D, 0.0)), cfg.o_d);
    let xv = CVector::from_element(1, c(0.0, 0.0));
    let b = control_matrix(&model, &gen, &xv).unwrap();
    let bad = RiccatiState {
        m: c1(c(-1000.0, 0.0)),
        ..scalar_index()
    };
    assert!(matches!(
        riccati_step(&bad, &model, &b, &cfg, &obj),
        Err(Error::Curvature { .. })
    ));
}

#[test]
fn equilibrium_requires_null_space() {
    let err = BilinearGenerators::from_matrices(c1(c(-0.3, 0.0)), c1(c(0.0, 0.0))).unwrap_err();
    assert!(matches!(err, Error::EquilibriumNotFound { .. }));
}

#[test]
fn configuration_validation() {
    assert!(ControllerConfig::new(0.0, 1.0, 1.0, 10).is_err());
    assert!(ControllerConfig::new(1e-5, -1.0, 1.0, 10).is_err());
    assert!(ControllerConfig::new(1e-5, 1.0, 1.0, 0).is_err());
    let cfg = ControllerConfig::new(1e-5, 1.0, 1.0, 10).unwrap();
    assert_eq!(cfg.g, cfg.g_r);
    assert_eq!(cfg.u_r, 0.0);
    let bad = RiccatiOptions {
        tolerance: 0.0,
        ..Default::default()
    };
    assert!(bad.validate().is_err());
    let bad = RiccatiOptions {
        max_iterations: 0,
        ..Default::default()
    };
    assert!(bad.validate().is_err());
}

struct SpinHalf {
    gen: BilinearGenerators,
    model: DiscreteModel,
    cfg: ControllerConfig,
    obj: Objective,
}

fn spin_half() -> SpinHalf {
    let gen = build_generators(&spin_half_system()).unwrap();
    let model = discretize(&gen, 0.0505).unwrap();
    let cfg = ControllerConfig::new(1e-5, 1.0, 1.0, 200).unwrap();
    let row = Observable::projector(2, 1).unwrap().measurement_row();
    let obj = Objective::shifted(&row, gen.x_equilibrium(), 1.0);
    SpinHalf { gen, model, cfg, obj }
}

fn shifted_state(s: &SpinHalf, ket: [f64; 2]) -> CVector {
    let k = CVector::from_vec(vec![c(ket[0], 0.0), c(ket[1], 0.0)]);
    vectorize(&DensityMatrix::from_ket(&k).unwrap()).into_values() - s.gen.x_equilibrium()
}

#[test]
fn zero_start_converges_at_superpositions() {
    let s = spin_half();
    let opts = RiccatiOptions::default();
    for ket in [[0.8, 0.6], [0.6, 0.8], [0.5f64.sqrt(), 0.5f64.sqrt()]] {
        let x = shifted_state(&s, ket);
        let b = control_matrix(&s.model, &s.gen, &x).unwrap();
        let mut rng = stream_rng(0, Stream::RiccatiInit);
        let index = steady_index(&s.model, &b, &s.cfg, &s.obj, &opts, None, &mut rng).unwrap();
        assert!(index.converged);
        let again = riccati_step(&index.state, &s.model, &b, &s.cfg, &s.obj).unwrap();
        let dm = quantum_fpd::linalg::max_abs(&(&again.m - &index.state.m));
        assert!(dm <= 1e-9 * quantum_fpd::linalg::max_abs(&index.state.m).max(1.0));
    }
}

#[test]
fn eigenstate_index_grows_without_fixed_point() {
    // At a population-only state the index increases linearly, so the relative
    // increment decays like 1/k and never reaches an absolute fixed point.
    let s = spin_half();
    let x = shifted_state(&s, [1.0, 0.0]);
    let b = control_matrix(&s.model, &s.gen, &x).unwrap();
    let opts = RiccatiOptions {
        init: RiccatiInit::Random,
        max_iterations: 4000,
        on_nonconvergence: OnNonConvergence::LastIterate,
        ..Default::default()
    };
    let mut rng = stream_rng(0, Stream::RiccatiInit);
    let index = steady_index(&s.model, &b, &s.cfg, &s.obj, &opts, None, &mut rng).unwrap();
    assert!(!index.converged);
    let last = *index.residuals.last().unwrap();
    assert!((last * 4000.0 - 1.0).abs() < 0.05, "residual {last}");

    let abort = RiccatiOptions {
        on_nonconvergence: OnNonConvergence::Abort,
        ..opts
    };
    let mut rng = stream_rng(0, Stream::RiccatiInit);
    match steady_index(&s.model, &b, &s.cfg, &s.obj, &abort, None, &mut rng) {
        Err(Error::NonConvergence {
            iterations, residuals, ..
        }) => {
            assert_eq!(iterations, 4000);
            assert_eq!(residuals.len(), 4000);
        }
        other => panic!("expected non-convergence, got {other:?}"),
    }
}

#[test]
fn backward_mode_runs_the_requested_number_of_steps() {
    let s = spin_half();
    let x = shifted_state(&s, [1.0, 0.0]);
    let b = control_matrix(&s.model, &s.gen, &x).unwrap();
    let opts = RiccatiOptions {
        mode: IndexMode::Backward,
        max_iterations: 17,
        ..Default::default()
    };
    let mut rng = stream_rng(0, Stream::RiccatiInit);
    let index = steady_index(&s.model, &b, &s.cfg, &s.obj, &opts, None, &mut rng).unwrap();
    assert_eq!(index.iterations, 17);
    assert_eq!(index.residuals.len(), 17);
}

#[test]
fn spin_half_control_law_matches_argmin_at_ground_state() {
    let fx = spin_half_fixture(0).unwrap();
    let x = CVector::zeros(4);
    let b = control_matrix(&fx.model, &fx.generators, &x).unwrap();
    let law = control_law(&x, &fx.index, &fx.model, &b, &fx.config, &fx.objective).unwrap();
    let oracle = control_argmin_oracle(&x, &fx.index, &fx.model, &b, &fx.config, &fx.objective).unwrap();
    assert!((law.v - oracle.u_star).abs() < 1e-4, "{} vs {}", law.v, oracle.u_star);
    assert!((law.r - oracle.variance).abs() < 1e-4 * law.r);
}

#[test]
fn random_start_is_symmetric_and_projected() {
    let s = spin_half();
    let mut rng = stream_rng(3, Stream::RiccatiInit);
    let init = RiccatiState::initial(2, RiccatiInit::Random, &mut rng);
    assert!(init.min_realified_eigenvalue() > 0.0);
    let pi = s.obj.projector().unwrap();
    let projected = init.projected(pi);
    let t = SlotLayout::new(2).trace_row();
    // The projected quadratic form ignores the trace direction.
    let xe = s.gen.x_equilibrium();
    assert!(quantum_fpd::linalg::quadratic(xe, &projected.m).norm() < 1e-12);
    assert!((&projected.p * xe)[(0, 0)].norm() < 1e-12);
    assert_eq!(t.len(), 4);
    assert_eq!(
        RiccatiState::initial(2, RiccatiInit::Zero, &mut rng),
        RiccatiState::zeros(4)
    );
}

#[test]
fn complex_normal_scalar_density_matches_bivariate_normal() {
    let (g, cr) = (0.8, 0.3);
    let mean = CVector::from_element(1, c(0.1, -0.2));
    let cn = ComplexNormalParams::new(mean, c1(c(g, 0.0)), c1(c(cr, 0.0))).unwrap();
    let (vx, vy) = ((g + cr) / 2.0, (g - cr) / 2.0);
    for &(x, y) in &[(0.1, -0.2), (0.7, 0.4), (-1.0, 0.3)] {
        let (dx, dy) = (x - 0.1, y + 0.2);
        let expected = -(2.0 * std::f64::consts::PI).ln() - 0.5 * (vx * vy).ln() - 0.5 * (dx * dx / vx + dy * dy / vy);
        let got = cn.log_density(&CVector::from_element(1, c(x, y))).unwrap();
        assert!((got - expected).abs() < 1e-12, "{got} vs {expected}");
    }
    let scaled = cn.scaled_pseudo_covariance().unwrap();
    assert!((scaled[(0, 0)].re - cr / (g * g - cr * cr)).abs() < 1e-14);
    let q = c1(c(2.0, 0.0));
    assert!((cn.trace_term(&q).unwrap() - 2.0 / scaled[(0, 0)].re).abs() < 1e-10);
}

#[test]
fn complex_normal_rejects_invalid_parameters() {
    let m = CVector::zeros(1);
    assert!(ComplexNormalParams::new(m.clone(), c1(c(-1.0, 0.0)), c1(c(0.0, 0.0))).is_err());
    assert!(ComplexNormalParams::new(m.clone(), c1(c(1.0, 0.0)), c1(c(2.0, 0.0))).is_err());
    let non_herm = CMatrix::from_row_slice(2, 2, &[c(1.0, 0.0), c(0.5, 0.0), c(0.0, 0.0), c(1.0, 0.0)]);
    assert!(ComplexNormalParams::new(CVector::zeros(2), non_herm, CMatrix::zeros(2, 2)).is_err());
    let proper = ComplexNormalParams::new(m, c1(c(1.0, 0.0)), c1(c(0.0, 0.0))).unwrap();
    assert!(proper.trace_term(&c1(c(1.0, 0.0))).is_none());
}

#[test]
fn structured_noise_omits_trace_term() {
    let layout = SlotLayout::new(2);
    let cn = ComplexNormalParams::structured_noise(&layout, 0.01);
    assert!(cn.trace_term(&CMatrix::identity(4, 4)).is_none());
    let s = spin_half();
    let x = shifted_state(&s, [0.8, 0.6]);
    let b = control_matrix(&s.model, &s.gen, &x).unwrap();
    let w = omega_step(&RiccatiState::zeros(4), &s.model, &b, &s.cfg, &s.obj, Some(&cn)).unwrap();
    assert!(!w.noise_term_included);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn recursion_keeps_index_symmetric_and_variance_bounded(seed in any::<u64>(), steps in 1usize..40) {
        let s = spin_half();
        let mut rng = stream_rng(seed, Stream::ProcessNoise);
        let rho = random_density_matrix(2, &mut rng);
        let x = vectorize(&rho).into_values() - s.gen.x_equilibrium();
        let b = control_matrix(&s.model, &s.gen, &x).unwrap();
        let mut index = RiccatiState::zeros(4);
        for _ in 0..steps {
            index = riccati_step(&index, &s.model, &b, &s.cfg, &s.obj).unwrap();
        }
        prop_assert!(quantum_fpd::linalg::max_abs(&(&index.m - index.m.transpose())) == 0.0);
        let law = control_law(&x, &index, &s.model, &b, &s.cfg, &s.obj).unwrap();
        prop_assert!(law.r > 0.0 && law.r <= s.cfg.omega * (1.0 + 1e-12));
        prop_assert!(law.v.is_finite());
    }

    #[test]
    fn closed_form_matches_quadrature(seed in any::<u64>()) {
        let fx = spin_half_fixture(0).unwrap();
        let mut rng = stream_rng(seed, Stream::MeasurementNoise);
        let x = vectorize(&random_density_matrix(2, &mut rng)).into_values() - fx.generators.x_equilibrium();
        let b = control_matrix(&fx.model, &fx.generators, &x).unwrap();
        let mut prev = riccati_step(&fx.index, &fx.model, &b, &fx.config, &fx.objective).unwrap();
        prev.omega = Some(omega_step(&fx.index, &fx.model, &b, &fx.config, &fx.objective, None).unwrap().value);
        let closed = gamma_closed_form(&x, &prev).unwrap();
        let quad = gamma_quadrature_oracle(&x, &fx.index, &fx.model, &b, &fx.config, &fx.objective, None).unwrap();
        prop_assert!((closed - quad).abs() < 1e-6);
    }
}

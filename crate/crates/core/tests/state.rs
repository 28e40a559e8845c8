use proptest::prelude::*;
use quantum_fpd::state::*;
use quantum_fpd::Error;

fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

#[test]
fn ground_state_vectorizes_to_unit_first_slot() {
    let x = vectorize(&DensityMatrix::pure_level(2, 0).unwrap());
    assert_eq!(
        x.values().as_slice(),
        &[c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(0.0, 0.0)]
    );

    let x3 = vectorize(&DensityMatrix::pure_level(3, 0).unwrap());
    assert_eq!(x3.values()[0], c(1.0, 0.0));
    assert!(x3.values().iter().skip(1).all(|v| *v == c(0.0, 0.0)));
}

#[test]
fn maximally_mixed_qubit() {
    let x = vectorize(&DensityMatrix::maximally_mixed(2));
    assert_eq!(
        x.values().as_slice(),
        &[c(0.5, 0.0), c(0.5, 0.0), c(0.0, 0.0), c(0.0, 0.0)]
    );
}

#[test]
fn slot_orders() {
    assert_eq!(SlotLayout::new(2).slots(), &[(0, 0), (1, 1), (0, 1), (1, 0)]);
    let layout = SlotLayout::new(3);
    assert_eq!(
        layout.slots(),
        &[(0, 0), (1, 1), (2, 2), (0, 1), (0, 2), (1, 0), (2, 0), (1, 2), (2, 1)]
    );
    let pairs: Vec<_> = layout.pairs().collect();
    assert_eq!(pairs, vec![(3, 5), (4, 6), (7, 8)]);
    assert_eq!(layout.partner(4), 6);
    assert!(layout.is_population(2) && !layout.is_population(3));
}

#[test]
fn three_level_vector_matches_slot_listing() {
    let mut rng = quantum_fpd::simulate::stream_rng(5, quantum_fpd::simulate::Stream::RiccatiInit);
    let rho = quantum_fpd::oracles::random_density_matrix(3, &mut rng);
    let m = rho.matrix();
    let listing = [
        m[(0, 0)],
        m[(1, 1)],
        m[(2, 2)],
        m[(0, 1)],
        m[(0, 2)],
        m[(1, 0)],
        m[(2, 0)],
        m[(1, 2)],
        m[(2, 1)],
    ];
    assert_eq!(vectorize(&rho).values().as_slice(), &listing);
}

#[test]
fn devectorize_places_conjugate_pairs() {
    let x = VectorizedState::from_values(CVector::from_vec(vec![
        c(0.5, 0.0),
        c(0.5, 0.0),
        c(0.0, 0.3),
        c(0.0, -0.3),
    ]))
    .unwrap();
    let m = devectorize(&x).unwrap().into_matrix();
    assert_eq!(m[(0, 0)], c(0.5, 0.0));
    assert_eq!(m[(0, 1)], c(0.0, 0.3));
    assert_eq!(m[(1, 0)], c(0.0, -0.3));
    assert_eq!(m[(1, 1)], c(0.5, 0.0));
}

#[test]
fn devectorize_rejects_broken_pairs() {
    let x = VectorizedState::from_values(CVector::from_vec(vec![
        c(0.5, 0.0),
        c(0.5, 0.0),
        c(0.1, 0.3),
        c(0.1, 0.3),
    ]))
    .unwrap();
    assert!(matches!(devectorize(&x), Err(Error::Validation { .. })));
}

#[test]
fn non_square_lengths_are_rejected() {
    let err = VectorizedState::from_values(CVector::zeros(5)).unwrap_err();
    assert!(err.to_string().contains("perfect square"));
    assert_eq!(side_length(9), Some(3));
    assert_eq!(side_length(8), None);
}

#[test]
fn non_hermitian_input_names_invariant() {
    let m = CMatrix::from_row_slice(2, 2, &[c(1.0, 0.0), c(0.2, 0.0), c(0.0, 0.0), c(0.0, 0.0)]);
    assert!(DensityMatrix::new(m).unwrap_err().to_string().contains("Hermitian"));
    assert!(DensityMatrix::new(CMatrix::zeros(2, 3))
        .unwrap_err()
        .to_string()
        .contains("square"));
    assert!(DensityMatrix::pure_level(2, 2).is_err());
}

#[test]
fn projector_expectations() {
    let rho = DensityMatrix::pure_level(2, 0).unwrap();
    assert_eq!(expectation(&rho, &Observable::projector(2, 0).unwrap()).unwrap(), 1.0);

    let sigma3 = Observable::new(CMatrix::from_diagonal(&CVector::from_vec(vec![
        c(1.0, 0.0),
        c(-1.0, 0.0),
    ])))
    .unwrap();
    assert_eq!(expectation(&DensityMatrix::maximally_mixed(2), &sigma3).unwrap(), 0.0);
}

#[test]
fn expectation_dimension_mismatch() {
    let rho = DensityMatrix::maximally_mixed(2);
    let obs = Observable::projector(3, 0).unwrap();
    assert!(matches!(expectation(&rho, &obs), Err(Error::DimensionMismatch { .. })));
}

#[test]
fn validate_flags_trace_excess_and_negativity() {
    let mut m = CMatrix::zeros(2, 2);
    m[(0, 0)] = c(0.6, 0.0);
    m[(1, 1)] = c(0.5, 0.0);
    let report = DensityMatrix::new(m).unwrap().validate();
    assert!((report.trace_defect - 0.1).abs() < 1e-15);
    assert!(!report.is_valid());

    let ok = validate(&DensityMatrix::maximally_mixed(3));
    assert!(ok.is_valid());
    assert!((ok.min_eigenvalue - 1.0 / 3.0).abs() < 1e-14);

    let mut neg = CMatrix::zeros(2, 2);
    neg[(0, 0)] = c(1.2, 0.0);
    neg[(1, 1)] = c(-0.2, 0.0);
    let report = DensityMatrix::new(neg).unwrap().validate();
    assert!(report.trace_defect < 1e-15);
    assert!((report.min_eigenvalue + 0.2).abs() < 1e-14);
    assert!(!report.is_valid());
}

#[test]
fn realification_maps_are_inverse() {
    let layout = SlotLayout::new(3);
    let prod = layout.realification() * layout.complexification();
    assert!((prod - CMatrix::identity(9, 9)).norm() < 1e-15);
}

#[test]
fn trace_row_sums_populations() {
    let x = vectorize(&DensityMatrix::maximally_mixed(4));
    let t = (SlotLayout::new(4).trace_row() * x.values())[(0, 0)];
    assert!((t - c(1.0, 0.0)).norm() < 1e-15);
}

fn density(dim: usize, seed: u64) -> DensityMatrix {
    let mut rng = quantum_fpd::simulate::stream_rng(seed, quantum_fpd::simulate::Stream::ProcessNoise);
    quantum_fpd::oracles::random_density_matrix(dim, &mut rng)
}

fn hermitian(dim: usize, entries: &[f64]) -> CMatrix {
    let mut m = CMatrix::zeros(dim, dim);
    let mut k = 0;
    for i in 0..dim {
        m[(i, i)] = c(entries[k], 0.0);
        k += 1;
        for j in i + 1..dim {
            m[(i, j)] = c(entries[k], entries[k + 1]);
            m[(j, i)] = m[(i, j)].conj();
            k += 2;
        }
    }
    m
}

proptest! {
    #[test]
    fn vectorize_round_trip_is_exact(dim in 1usize..6, seed in any::<u64>()) {
        let rho = density(dim, seed);
        let x = vectorize(&rho);
        prop_assert_eq!(x.len(), dim * dim);
        let back = devectorize(&x).unwrap();
        prop_assert_eq!(back.matrix(), rho.matrix());
    }

    #[test]
    fn conjugate_pairs_and_real_populations(dim in 2usize..6, seed in any::<u64>()) {
        let x = vectorize(&density(dim, seed));
        let layout = x.layout();
        for (a, b) in layout.pairs() {
            prop_assert_eq!(x.values()[a], x.values()[b].conj());
        }
        for k in 0..dim {
            prop_assert_eq!(x.values()[k].im, 0.0);
        }
        prop_assert!(x.trace_defect() < 1e-12);
        prop_assert!(x.hermiticity_defect() == 0.0);
    }

    #[test]
    fn measurement_row_reproduces_trace(dim in 1usize..5, seed in any::<u64>(), entries in prop::collection::vec(-2.0f64..2.0, 16)) {
        let rho = density(dim, seed);
        let obs = Observable::new(hermitian(dim, &entries)).unwrap();
        let via_row = (obs.measurement_row() * vectorize(&rho).values())[(0, 0)];
        let direct = (rho.matrix() * obs.matrix()).trace();
        prop_assert!((via_row - direct).norm() < 1e-12);
        prop_assert!((expectation(&rho, &obs).unwrap() - direct.re).abs() < 1e-12);
    }

    #[test]
    fn random_states_are_valid(dim in 1usize..6, seed in any::<u64>()) {
        let report = validate(&density(dim, seed));
        prop_assert!(report.is_valid());
        prop_assert!(report.hermiticity_defect <= HERMITICITY_TOL);
    }

    #[test]
    fn realify_agrees_with_realification_map(dim in 1usize..5, seed in any::<u64>()) {
        let x = vectorize(&density(dim, seed));
        let image = x.layout().realification() * x.values();
        let r = realify(&x);
        for k in 0..x.len() {
            prop_assert!((image[k] - c(r[k], 0.0)).norm() < 1e-15);
        }
    }
}

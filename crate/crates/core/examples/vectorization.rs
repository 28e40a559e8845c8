// Density matrices, their canonical vectorisation, and expectation values.

use quantum_fpd::state::{devectorize, expectation, validate, vectorize, DensityMatrix, Observable, SlotLayout};
use quantum_fpd::state::{CVector, C64};

pub fn run_example() -> quantum_fpd::Result<f64> {
    let layout = SlotLayout::new(3);
    println!("slot order for a three-level system: {:?}", layout.slots());

    let ket = CVector::from_vec(vec![C64::new(0.6, 0.0), C64::new(0.0, 0.48), C64::new(0.64, 0.0)]);
    let rho = DensityMatrix::from_ket(&ket)?;
    let x = vectorize(&rho);
    for (slot, value) in layout.slots().iter().zip(x.values().iter()) {
        println!("  rho{:?} = {:.4}", slot, value);
    }

    let back = devectorize(&x)?;
    assert_eq!(back.matrix(), rho.matrix());

    let report = validate(&rho);
    println!(
        "hermiticity defect {:.1e}, trace defect {:.1e}, smallest eigenvalue {:.1e}",
        report.hermiticity_defect, report.trace_defect, report.min_eigenvalue
    );

    let population = expectation(&rho, &Observable::projector(3, 2)?)?;
    let via_row = (Observable::projector(3, 2)?.measurement_row() * x.values())[(0, 0)].re;
    println!("population of level 2: {population:.4} (measurement row gives {via_row:.4})");
    Ok(population)
}

#[allow(dead_code)]
fn main() -> quantum_fpd::Result<()> {
    run_example().map(|_| ())
}

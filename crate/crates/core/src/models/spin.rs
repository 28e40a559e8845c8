//! Spin-1/2 and spin-1 systems driven through a transverse coupling.

use crate::dynamics::PhysicalSystem;
use crate::state::{CMatrix, C64};

fn re(v: f64) -> C64 {
    C64::new(v, 0.0)
}

/// `H = sigma_3 / 2 + (sigma_1 + sigma_2) u / 2`, so `H_0 = diag(1/2, -1/2)`
/// and `mu = -(sigma_1 + sigma_2) / 2`, with `hbar = 1`.
pub fn spin_half_system() -> PhysicalSystem {
    let mu = CMatrix::from_row_slice(2, 2, &[re(0.0), C64::new(-0.5, 0.5), C64::new(-0.5, -0.5), re(0.0)]);
    PhysicalSystem::closed(vec![0.5, -0.5], mu, 1.0).expect("spin-1/2 data is valid")
}

/// `H_0 = diag(3/2, 1, 0)` with the coupling `V` linking level 2 to levels 0
/// and 1, `H = H_0 + V u`, so `mu = -V`, with `hbar = 1`.
pub fn spin_one_system() -> PhysicalSystem {
    let mu = CMatrix::from_row_slice(
        3,
        3,
        &[
            re(0.0),
            re(0.0),
            re(-1.0),
            re(0.0),
            re(0.0),
            re(-1.0),
            re(-1.0),
            re(-1.0),
            re(0.0),
        ],
    );
    PhysicalSystem::closed(vec![1.5, 1.0, 0.0], mu, 1.0).expect("spin-1 data is valid")
}

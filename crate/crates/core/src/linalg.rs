//! Small dense linear-algebra helpers shared across modules.

use nalgebra::DMatrix;

use crate::state::{CMatrix, CRow, CVector, C64};

/// Matrix exponential (Padé-13 scaling and squaring, as provided by nalgebra).
pub fn expm(a: &CMatrix) -> CMatrix {
    a.clone().exp()
}

/// `(e^{a dt}, \int_0^dt e^{a s} ds)`, both read from one exponential of the
/// augmented generator `[[a, I], [0, 0]] * dt`.
pub fn exp_and_integral(a: &CMatrix, dt: f64) -> (CMatrix, CMatrix) {
    let n = a.nrows();
    let mut aug = CMatrix::zeros(2 * n, 2 * n);
    aug.view_mut((0, 0), (n, n)).copy_from(&(a * C64::new(dt, 0.0)));
    for k in 0..n {
        aug[(k, n + k)] = C64::new(dt, 0.0);
    }
    let e = expm(&aug);
    (e.view((0, 0), (n, n)).into_owned(), e.view((0, n), (n, n)).into_owned())
}

/// Largest entry modulus.
pub fn max_abs(m: &CMatrix) -> f64 {
    m.iter().fold(0.0, |acc, z| acc.max(z.norm()))
}

pub fn max_abs_row(v: &CRow) -> f64 {
    v.iter().fold(0.0, |acc, z| acc.max(z.norm()))
}

pub fn max_abs_vec(v: &CVector) -> f64 {
    v.iter().fold(0.0, |acc, z| acc.max(z.norm()))
}

/// Literal bilinear form `x^T m x` (transpose, not adjoint).
pub fn quadratic(x: &CVector, m: &CMatrix) -> C64 {
    (x.transpose() * m * x)[(0, 0)]
}

/// Literal row-vector product `p x`.
pub fn linear(p: &CRow, x: &CVector) -> C64 {
    (p * x)[(0, 0)]
}

pub fn to_complex(m: &DMatrix<f64>) -> CMatrix {
    m.map(|v| C64::new(v, 0.0))
}

/// Smallest singular value.
pub fn min_singular_value(m: &CMatrix) -> f64 {
    m.clone().singular_values().min()
}

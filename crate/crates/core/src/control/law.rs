//! Closed-form Gaussian controller `u ~ N(v, R)`.

use super::config::ControllerConfig;
use super::riccati::{step_terms, Objective, RiccatiState};
use crate::dynamics::DiscreteModel;
use crate::error::{Error, Result};
use crate::linalg::{linear, quadratic};
use crate::state::{CVector, C64};

/// Relative imaginary residue tolerated on real-valued scalars.
pub const IMAG_TOL: f64 = 1e-9;

/// Mean and variance of the optimal randomised controller.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ControlLaw {
    pub v: f64,
    pub r: f64,
}

fn checked_real(quantity: &'static str, value: C64, terms: &[C64]) -> Result<f64> {
    let scale = terms.iter().fold(value.norm().max(1.0), |a, t| a.max(t.norm()));
    let tolerance = IMAG_TOL * scale;
    if value.im.abs() > tolerance {
        return Err(Error::ImaginaryResidue {
            quantity,
            residue: value.im.abs(),
            tolerance,
        });
    }
    Ok(value.re)
}

/// `v = S^{-1} (u_r / Omega - B^T Q A x - 0.5 (P_t - 2 o_d D / G_r) B)` and
/// `R = S^{-1}`, where `riccati` holds `(M_t, P_t)` and `b = B(x)`.
pub fn control_law(
    x: &CVector,
    riccati: &RiccatiState,
    model: &DiscreteModel,
    b: &CVector,
    cfg: &ControllerConfig,
    obj: &Objective,
) -> Result<ControlLaw> {
    let terms = step_terms(riccati, model, b, cfg, obj)?;
    let feedback = linear(&terms.bqa, x);
    let numerator = terms.h - feedback;
    let v = checked_real(
        "control mean",
        numerator / terms.s,
        &[terms.h / terms.s, feedback / terms.s],
    )?;
    Ok(ControlLaw { v, r: 1.0 / terms.s })
}

/// Derivative at `u` of `0.5 S u^2 - u (u_r/Omega - B^T Q A x - 0.5 (P - 2 o_d D/G_r) B)`.
pub fn stationarity_residual(
    u: f64,
    x: &CVector,
    riccati: &RiccatiState,
    model: &DiscreteModel,
    b: &CVector,
    cfg: &ControllerConfig,
    obj: &Objective,
) -> Result<f64> {
    let terms = step_terms(riccati, model, b, cfg, obj)?;
    Ok((C64::new(terms.s * u, 0.0) - (terms.h - linear(&terms.bqa, x))).re)
}

/// `-ln gamma(x) = 0.5 (x^T M x + P x + omega)`, with a missing `omega` read as 0.
pub fn gamma_closed_form(x: &CVector, riccati: &RiccatiState) -> Result<f64> {
    if x.len() != riccati.len() {
        return Err(Error::DimensionMismatch {
            expected: riccati.len(),
            found: x.len(),
            context: "performance index state",
        });
    }
    let quad = quadratic(x, &riccati.m);
    let lin = linear(&riccati.p, x);
    let omega = C64::new(riccati.omega.unwrap_or(0.0), 0.0);
    let total = (quad + lin + omega) * 0.5;
    checked_real("performance index", total, &[quad, lin, omega])
}

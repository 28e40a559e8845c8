//! Numerical counterparts of the closed-form controller.
//!
//! For a scalar control the performance index is the one-dimensional integral
//!
//! ```text
//! gamma(x) = \int N(u; u_r, Omega) exp(-beta(u, x)) du
//! beta(u, x) = 0.5 mu^T Q mu + 0.5 (P_t - 2 o_d D / G_r) mu + 0.5 c,   mu = A x + B u
//! c = omega_t + o_d^2 / G_r + ln(G_r / G) - G (1/G - 1/G_r) - Tr(conj(C)^{-1} Q)
//! ```
//!
//! and the optimal randomised controller is proportional to its integrand. The
//! functions here locate the integrand's mode on an expanding grid, refine it by
//! golden-section search and integrate adaptively in log-sum-exp form.

use std::f64::consts::PI;

use super::config::ControllerConfig;
use super::normal::ComplexNormalParams;
use super::riccati::{Objective, RiccatiState};
use crate::dynamics::DiscreteModel;
use crate::error::{Error, Result};
use crate::models::quadrature;
use crate::state::{CMatrix, CRow, CVector, C64};

/// Grid points across the search window.
const GRID: usize = 201;
/// Integration half-width in units of the integrand's standard deviation.
const HALF_WIDTH: f64 = 40.0;

/// Log of the integrand, `ln N(u; u_r, Omega) - beta(u, x)`.
struct LogIntegrand {
    ax: CVector,
    b: CVector,
    q: CMatrix,
    lin: CRow,
    constant: f64,
    u_r: f64,
    omega: f64,
}

impl LogIntegrand {
    fn new(
        x: &CVector,
        next: &RiccatiState,
        model: &DiscreteModel,
        b: &CVector,
        cfg: &ControllerConfig,
        obj: &Objective,
        noise: Option<&ComplexNormalParams>,
    ) -> Result<Self> {
        let len = next.len();
        if x.len() != len || b.len() != len || obj.row().len() != len {
            return Err(Error::DimensionMismatch {
                expected: len,
                found: x.len(),
                context: "oracle operands",
            });
        }
        let d = obj.row();
        let o_d = obj.target();
        let q = &next.m + d.transpose() * d / C64::new(cfg.g_r, 0.0);
        let lin = &next.p - d * C64::new(2.0 * o_d / cfg.g_r, 0.0);
        let noise_term = noise.and_then(|n| n.trace_term(&q)).unwrap_or(0.0);
        let constant = next.omega.unwrap_or(0.0) + o_d * o_d / cfg.g_r + (cfg.g_r / cfg.g).ln()
            - cfg.g * (1.0 / cfg.g - 1.0 / cfg.g_r)
            - noise_term;
        Ok(LogIntegrand {
            ax: model.a() * x,
            b: b.clone(),
            q,
            lin,
            constant,
            u_r: cfg.u_r,
            omega: cfg.omega,
        })
    }

    fn beta(&self, u: f64) -> f64 {
        let mu = &self.ax + &self.b * C64::new(u, 0.0);
        let quad = (mu.transpose() * &self.q * &mu)[(0, 0)];
        let lin = (&self.lin * &mu)[(0, 0)];
        (0.5 * (quad + lin)).re + 0.5 * self.constant
    }

    fn eval(&self, u: f64) -> f64 {
        -0.5 * (2.0 * PI * self.omega).ln() - (u - self.u_r).powi(2) / (2.0 * self.omega) - self.beta(u)
    }

    /// Mode of the integrand and a standard-deviation estimate.
    fn mode(&self) -> Result<(f64, f64)> {
        let mut lo = self.u_r - 10.0 * self.omega.sqrt();
        let mut hi = self.u_r + 10.0 * self.omega.sqrt();
        for _ in 0..200 {
            let step = (hi - lo) / (GRID - 1) as f64;
            let (k, _) = (0..GRID)
                .map(|k| (k, self.eval(lo + step * k as f64)))
                .max_by(|a, b| a.1.total_cmp(&b.1))
                .expect("grid is nonempty");
            let half = hi - lo;
            if k == 0 {
                hi = lo + step;
                lo -= half;
                continue;
            }
            if k == GRID - 1 {
                lo = hi - step;
                hi += half;
                continue;
            }
            let center = golden_max(|u| self.eval(u), lo + step * (k - 1) as f64, lo + step * (k + 1) as f64);
            let width = self.width(center, step)?;
            // Refine once more on a window matched to the peak.
            let center = golden_max(|u| self.eval(u), center - 4.0 * width, center + 4.0 * width);
            let width = self.width(center, 10.0 * width)?;
            return Ok((center, width));
        }
        Err(Error::Quadrature {
            tolerance: 0.0,
            estimate: f64::INFINITY,
        })
    }

    /// `1 / sqrt(-f'')` from a central second difference with step `h`.
    fn width(&self, u: f64, h: f64) -> Result<f64> {
        let curvature = -(self.eval(u + h) - 2.0 * self.eval(u) + self.eval(u - h)) / (h * h);
        if !(curvature.is_finite() && curvature > 0.0) {
            return Err(Error::Curvature { curvature });
        }
        Ok(1.0 / curvature.sqrt())
    }
}

fn golden_max<F: Fn(f64) -> f64>(f: F, mut a: f64, mut b: f64) -> f64 {
    let ratio = (5f64.sqrt() - 1.0) / 2.0;
    let mut c = b - ratio * (b - a);
    let mut d = a + ratio * (b - a);
    let (mut fc, mut fd) = (f(c), f(d));
    for _ in 0..200 {
        if (b - a).abs() <= 1e-15 * (a.abs() + b.abs()).max(1e-300) {
            break;
        }
        if fc > fd {
            b = d;
            d = c;
            fd = fc;
            c = b - ratio * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + ratio * (b - a);
            fd = f(d);
        }
    }
    0.5 * (a + b)
}

/// `-ln gamma(x)` by quadrature over the control, with `next = (M_t, P_t, omega_t)`.
/// Compare with [`super::gamma_closed_form`] at the index one step back.
pub fn gamma_quadrature_oracle(
    x: &CVector,
    next: &RiccatiState,
    model: &DiscreteModel,
    b: &CVector,
    cfg: &ControllerConfig,
    obj: &Objective,
    noise: Option<&ComplexNormalParams>,
) -> Result<f64> {
    let f = LogIntegrand::new(x, next, model, b, cfg, obj, noise)?;
    let (mode, width) = f.mode()?;
    let peak = f.eval(mode);
    let breaks: Vec<f64> = [-HALF_WIDTH, -5.0, -1.0, 0.0, 1.0, 5.0, HALF_WIDTH]
        .iter()
        .map(|k| mode + k * width)
        .collect();
    let integral = quadrature::integrate_with_breaks(|u| (f.eval(u) - peak).exp(), &breaks, 1e-8 * width)?;
    Ok(-(peak + integral.value.ln()))
}

/// Mode and curvature-derived variance of the controller density.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ArgminOracle {
    pub u_star: f64,
    pub variance: f64,
}

/// Minimiser over `u` of `(u - u_r)^2 / (2 Omega) + beta(u, x)` and the inverse
/// of its second difference there.
pub fn control_argmin_oracle(
    x: &CVector,
    next: &RiccatiState,
    model: &DiscreteModel,
    b: &CVector,
    cfg: &ControllerConfig,
    obj: &Objective,
) -> Result<ArgminOracle> {
    let f = LogIntegrand::new(x, next, model, b, cfg, obj, None)?;
    let (u_star, width) = f.mode()?;
    let w = f.width(u_star, 10.0 * width)?;
    Ok(ArgminOracle {
        u_star,
        variance: w * w,
    })
}

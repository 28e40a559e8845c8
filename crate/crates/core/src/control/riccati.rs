//! Backward recursion of the quadratic performance index.
//!
//! With `Q = D^T D / G_r + M_t` and the scalar curvature `S = 1/Omega + B^T Q B`:
//!
//! ```text
//! M_{t-1} = A^T Q A - (B^T Q A)^T (B^T Q A) / S
//! P_{t-1} = (P_t - 2 o_d D / G_r) A + 2 h / S (B^T Q A)
//! h       = u_r / Omega - 0.5 (P_t - 2 o_d D / G_r) B
//! ```
//!
//! All transposes are literal (no conjugation). On conjugate-paired states the
//! resulting quadratic forms are real.

use nalgebra::{DMatrix, SymmetricEigen};
use rand::Rng;

use super::config::{ControllerConfig, IndexMode, OnNonConvergence, RiccatiInit, RiccatiOptions};
use super::normal::ComplexNormalParams;
use crate::dynamics::DiscreteModel;
use crate::error::{Error, Result};
use crate::linalg::{linear, max_abs, max_abs_row};
use crate::state::{CMatrix, CRow, CVector, SlotLayout, C64};

/// Output objective seen by the controller: `o ~ N(target, G_r)` with `o = row . x`.
#[derive(Clone, Debug, PartialEq)]
pub struct Objective {
    row: CRow,
    target: f64,
    projector: Option<CMatrix>,
}

impl Objective {
    /// Uses `row` and `o_d` as given.
    pub fn direct(row: CRow, o_d: f64) -> Self {
        Objective {
            row,
            target: o_d,
            projector: None,
        }
    }

    /// Objective for the shifted state `x = x~ - x_e` of a unit-trace system.
    ///
    /// The physical output is `D x~ = D x + D x_e`, so the target becomes
    /// `o_d - D x_e`. The row is composed with `Pi = I - x_e t` (`t` the trace
    /// row), which leaves it unchanged on every trace-free `x` and removes the
    /// uncontrollable trace direction from the index.
    pub fn shifted(row: &CRow, x_e: &CVector, o_d: f64) -> Self {
        let len = row.len();
        let dim = crate::state::side_length(len).unwrap_or(1);
        let trace = SlotLayout::new(dim).trace_row();
        let projector = CMatrix::identity(len, len) - x_e * &trace;
        Objective {
            row: row * &projector,
            target: o_d - linear(row, x_e).re,
            projector: Some(projector),
        }
    }

    pub fn row(&self) -> &CRow {
        &self.row
    }

    pub fn target(&self) -> f64 {
        self.target
    }

    pub fn projector(&self) -> Option<&CMatrix> {
        self.projector.as_ref()
    }

    /// `P - 2 o_d D / G_r`.
    fn linear_coefficient(&self, p: &CRow, g_r: f64) -> CRow {
        p - &self.row * C64::new(2.0 * self.target / g_r, 0.0)
    }

    /// `D^T D / G_r + M`.
    fn weight(&self, m: &CMatrix, g_r: f64) -> CMatrix {
        m + self.row.transpose() * &self.row * C64::new(1.0 / g_r, 0.0)
    }
}

/// `(M_t, P_t, omega_t)`.
#[derive(Clone, Debug, PartialEq)]
pub struct RiccatiState {
    pub m: CMatrix,
    pub p: CRow,
    pub omega: Option<f64>,
}

impl RiccatiState {
    pub fn zeros(len: usize) -> Self {
        RiccatiState {
            m: CMatrix::zeros(len, len),
            p: CRow::zeros(len),
            omega: Some(0.0),
        }
    }

    /// `M = T^T W^T W T / L` and `P = p_r T` with uniform `W`, `p_r` in real
    /// coordinates (`T` the realification map), so `x^T M x >= 0` and `P x` is
    /// real on every conjugate-paired `x`.
    pub fn random_structured<R: Rng>(dim: usize, rng: &mut R) -> Self {
        let layout = SlotLayout::new(dim);
        let len = layout.len();
        let t = layout.realification();
        let w = DMatrix::<f64>::from_fn(len, len, |_, _| rng.random::<f64>());
        let m_r = (w.transpose() * &w / len as f64).map(|v| C64::new(v, 0.0));
        let p_r = CRow::from_fn(len, |_, _| C64::new(rng.random::<f64>(), 0.0));
        RiccatiState {
            m: t.transpose() * m_r * &t,
            p: p_r * t,
            omega: Some(0.0),
        }
    }

    pub fn initial<R: Rng>(dim: usize, init: RiccatiInit, rng: &mut R) -> Self {
        match init {
            RiccatiInit::Zero => Self::zeros(dim * dim),
            RiccatiInit::Random => Self::random_structured(dim, rng),
        }
    }

    pub fn len(&self) -> usize {
        self.p.len()
    }

    pub fn is_empty(&self) -> bool {
        self.p.is_empty()
    }

    /// `Pi^T M Pi` and `P Pi`.
    pub fn projected(&self, pi: &CMatrix) -> Self {
        RiccatiState {
            m: pi.transpose() * &self.m * pi,
            p: &self.p * pi,
            omega: self.omega,
        }
    }

    /// `M` in real coordinates, `T^{-T} M T^{-1}`; the imaginary residue is dropped.
    pub fn realified_m(&self) -> DMatrix<f64> {
        let dim = crate::state::side_length(self.len()).unwrap_or(1);
        let c = SlotLayout::new(dim).complexification();
        (c.transpose() * &self.m * c).map(|z| z.re)
    }

    /// Smallest eigenvalue of the symmetrised realified `M`.
    pub fn min_realified_eigenvalue(&self) -> f64 {
        let m = self.realified_m();
        SymmetricEigen::new((&m + m.transpose()) * 0.5).eigenvalues.min()
    }
}

/// Quantities shared by the recursion and the control law at one step.
pub(crate) struct StepTerms {
    pub q: CMatrix,
    pub bqa: CRow,
    pub s: f64,
    /// `(P_t - 2 o_d D / G_r)`.
    pub lin: CRow,
    /// `u_r / Omega - 0.5 (P_t - 2 o_d D / G_r) B`.
    pub h: C64,
}

pub(crate) fn step_terms(
    next: &RiccatiState,
    model: &DiscreteModel,
    b: &CVector,
    cfg: &ControllerConfig,
    obj: &Objective,
) -> Result<StepTerms> {
    let len = next.len();
    if b.len() != len || model.a().nrows() != len || obj.row.len() != len {
        return Err(Error::DimensionMismatch {
            expected: len,
            found: b.len(),
            context: "index recursion operands",
        });
    }
    let q = obj.weight(&next.m, cfg.g_r);
    let bq = b.transpose() * &q;
    let bqa = &bq * model.a();
    let bqb = (&bq * b)[(0, 0)];
    let s_c = C64::new(1.0 / cfg.omega, 0.0) + bqb;
    let s = s_c.re;
    if !(s.is_finite() && s > 0.0) {
        return Err(Error::Curvature { curvature: s });
    }
    let lin = obj.linear_coefficient(&next.p, cfg.g_r);
    let h = C64::new(cfg.u_r / cfg.omega, 0.0) - 0.5 * linear(&lin, b);
    Ok(StepTerms { q, bqa, s, lin, h })
}

/// One backward step `(M_t, P_t) -> (M_{t-1}, P_{t-1})`. `omega` is carried over
/// unchanged; see [`omega_step`].
pub fn riccati_step(
    next: &RiccatiState,
    model: &DiscreteModel,
    b: &CVector,
    cfg: &ControllerConfig,
    obj: &Objective,
) -> Result<RiccatiState> {
    let terms = step_terms(next, model, b, cfg, obj)?;
    Ok(apply_step(next, model, &terms))
}

fn apply_step(next: &RiccatiState, model: &DiscreteModel, terms: &StepTerms) -> RiccatiState {
    let a = model.a();
    let inv_s = C64::new(1.0 / terms.s, 0.0);
    let mut m = a.transpose() * &terms.q * a - terms.bqa.transpose() * &terms.bqa * inv_s;
    m = (&m + m.transpose()) * C64::new(0.5, 0.0);
    let p = &terms.lin * a + &terms.bqa * (terms.h * inv_s * 2.0);
    RiccatiState {
        m,
        p,
        omega: next.omega,
    }
}

/// Constant term of the index one step back.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct OmegaStep {
    pub value: f64,
    /// Whether `Tr(conj(C)^{-1} Q)` was available and included.
    pub noise_term_included: bool,
}

/// `omega_{t-1}` from `omega_t` (taken as 0 when absent).
///
/// The process-noise trace term enters only when `noise` is given and its scaled
/// pseudo-covariance is invertible; otherwise it is left out and reported so.
pub fn omega_step(
    next: &RiccatiState,
    model: &DiscreteModel,
    b: &CVector,
    cfg: &ControllerConfig,
    obj: &Objective,
    noise: Option<&ComplexNormalParams>,
) -> Result<OmegaStep> {
    let terms = step_terms(next, model, b, cfg, obj)?;
    let noise_term = noise.and_then(|n| n.trace_term(&terms.q));
    Ok(OmegaStep {
        value: omega_from_terms(next.omega.unwrap_or(0.0), &terms, cfg, obj.target, noise_term),
        noise_term_included: noise_term.is_some(),
    })
}

pub(crate) fn omega_from_terms(
    omega_t: f64,
    terms: &StepTerms,
    cfg: &ControllerConfig,
    o_d: f64,
    noise_term: Option<f64>,
) -> f64 {
    let h = terms.h.re;
    omega_t + o_d * o_d / cfg.g_r + (cfg.g_r / cfg.g).ln()
        - cfg.g * (1.0 / cfg.g - 1.0 / cfg.g_r)
        - noise_term.unwrap_or(0.0)
        + cfg.u_r * cfg.u_r / cfg.omega
        - h * h / terms.s
        + (cfg.omega * terms.s).ln()
}

/// Result of [`steady_index`].
#[derive(Clone, Debug, PartialEq)]
pub struct SteadyIndex {
    pub state: RiccatiState,
    pub iterations: usize,
    pub converged: bool,
    /// `max(||dM||_inf / max(1, ||M||_inf), ||dP||_inf / max(1, ||P||_inf))` per iteration.
    pub residuals: Vec<f64>,
}

/// Iterates [`riccati_step`] with fixed `B` from `start` (or from the configured
/// initialisation) until both relative increments fall below the tolerance.
pub fn steady_index<R: Rng>(
    model: &DiscreteModel,
    b: &CVector,
    cfg: &ControllerConfig,
    obj: &Objective,
    opts: &RiccatiOptions,
    start: Option<RiccatiState>,
    rng: &mut R,
) -> Result<SteadyIndex> {
    opts.validate()?;
    let len = b.len();
    let dim = crate::state::side_length(len).ok_or(Error::DimensionMismatch {
        expected: len,
        found: len,
        context: "index dimension",
    })?;
    let mut state = match start {
        Some(s) => s,
        None => {
            let init = RiccatiState::initial(dim, opts.init, rng);
            match obj.projector() {
                Some(pi) => init.projected(pi),
                None => init,
            }
        }
    };
    let mut residuals = Vec::new();
    for it in 1..=opts.max_iterations {
        let next = riccati_step(&state, model, b, cfg, obj)?;
        let dm = max_abs(&(&next.m - &state.m)) / max_abs(&next.m).max(1.0);
        let dp = max_abs_row(&(&next.p - &state.p)) / max_abs_row(&next.p).max(1.0);
        let residual = dm.max(dp);
        residuals.push(residual);
        state = next;
        if opts.mode == IndexMode::SteadyState && residual <= opts.tolerance {
            return Ok(SteadyIndex {
                state,
                iterations: it,
                converged: true,
                residuals,
            });
        }
    }
    if opts.mode == IndexMode::Backward {
        return Ok(SteadyIndex {
            state,
            iterations: opts.max_iterations,
            converged: true,
            residuals,
        });
    }
    match opts.on_nonconvergence {
        OnNonConvergence::LastIterate => Ok(SteadyIndex {
            state,
            iterations: opts.max_iterations,
            converged: false,
            residuals,
        }),
        OnNonConvergence::Abort => Err(Error::NonConvergence {
            iterations: opts.max_iterations,
            last_residual: residuals.last().copied().unwrap_or(f64::NAN),
            residuals,
        }),
    }
}

//! Continuous-time bilinear generators and their discretisation.
//!
//! The element-wise master equation
//!
//! ```text
//! d rho_nm / dt = -(i w_nm + g_nm) rho_nm + delta_nm sum_k G_{k->n} rho_kk
//!                 + i (u / hbar) sum_k (mu_nk rho_km - rho_nk mu_km)
//! ```
//!
//! becomes `dx/dt = A~ x + i N~ x u` on the vectorised state, with
//! `w_nm = (E_n - E_m) / hbar` and `g_nm = (sum_j G_{n->j} + G_{m->j}) / 2`.
//! Control acts through the dipole coupling `H_u = -mu u`.

use nalgebra::DMatrix;

use crate::error::{Error, Result};
use crate::linalg;
use crate::state::{hermiticity_defect, CMatrix, CRow, CVector, Observable, SlotLayout, C64};

/// Residual accepted for `A~ x_e = 0` and for the trace-row null checks.
pub const GENERATOR_TOL: f64 = 1e-10;

/// Physical data of an `l`-level system driven by one scalar field.
#[derive(Clone, Debug, PartialEq)]
pub struct PhysicalSystem {
    energies: Vec<f64>,
    dipole: CMatrix,
    /// `rates[(k, j)]` is the transition rate from level `k` to level `j`.
    rates: DMatrix<f64>,
    hbar: f64,
}

impl PhysicalSystem {
    /// A closed system (no dissipative rates).
    pub fn closed(energies: Vec<f64>, dipole: CMatrix, hbar: f64) -> Result<Self> {
        let l = energies.len();
        Self::new(energies, dipole, DMatrix::zeros(l, l), hbar)
    }

    pub fn new(energies: Vec<f64>, dipole: CMatrix, rates: DMatrix<f64>, hbar: f64) -> Result<Self> {
        let l = energies.len();
        if l == 0 {
            return Err(Error::Parameter {
                name: "energies",
                detail: "at least one level is required".into(),
            });
        }
        if dipole.shape() != (l, l) {
            return Err(Error::DimensionMismatch {
                expected: l,
                found: dipole.nrows(),
                context: "dipole matrix",
            });
        }
        if rates.shape() != (l, l) {
            return Err(Error::DimensionMismatch {
                expected: l,
                found: rates.nrows(),
                context: "rate matrix",
            });
        }
        if energies.iter().any(|e| !e.is_finite()) {
            return Err(Error::Parameter {
                name: "energies",
                detail: "energies must be finite".into(),
            });
        }
        let defect = hermiticity_defect(&dipole);
        if defect > crate::state::HERMITICITY_TOL {
            return Err(Error::Validation {
                what: "dipole matrix",
                detail: format!("not Hermitian (defect {defect:e})"),
            });
        }
        if let Some(bad) = rates.iter().find(|r| !(r.is_finite() && **r >= 0.0)) {
            return Err(Error::Parameter {
                name: "rates",
                detail: format!("rates must be finite and nonnegative, found {bad}"),
            });
        }
        if (0..l).any(|k| rates[(k, k)] != 0.0) {
            return Err(Error::Parameter {
                name: "rates",
                detail: "self-transition rates must be zero".into(),
            });
        }
        if !(hbar.is_finite() && hbar > 0.0) {
            return Err(Error::Parameter {
                name: "hbar",
                detail: format!("must be positive, found {hbar}"),
            });
        }
        Ok(PhysicalSystem {
            energies,
            dipole,
            rates,
            hbar,
        })
    }

    pub fn dim(&self) -> usize {
        self.energies.len()
    }

    pub fn energies(&self) -> &[f64] {
        &self.energies
    }

    pub fn dipole(&self) -> &CMatrix {
        &self.dipole
    }

    pub fn rates(&self) -> &DMatrix<f64> {
        &self.rates
    }

    pub fn hbar(&self) -> f64 {
        self.hbar
    }

    /// Bohr frequency `(E_n - E_m) / hbar`.
    pub fn bohr_frequency(&self, n: usize, m: usize) -> f64 {
        (self.energies[n] - self.energies[m]) / self.hbar
    }

    /// Total dephasing rate of coherence `(n, m)`.
    pub fn dephasing_rate(&self, n: usize, m: usize) -> f64 {
        let out = |k: usize| self.rates.row(k).sum();
        0.5 * (out(n) + out(m))
    }

    pub fn is_closed(&self) -> bool {
        self.rates.iter().all(|r| *r == 0.0)
    }
}

/// `(A~, N~, x_e)` for `dx~/dt = A~ x~ + i N~ x~ u`.
#[derive(Clone, Debug, PartialEq)]
pub struct BilinearGenerators {
    dim: usize,
    a_tilde: CMatrix,
    n_tilde: CMatrix,
    x_equilibrium: CVector,
}

impl BilinearGenerators {
    /// Assembles generators from raw matrices, computing a default equilibrium.
    pub fn from_matrices(a_tilde: CMatrix, n_tilde: CMatrix) -> Result<Self> {
        let dim = crate::state::side_length(a_tilde.nrows()).ok_or_else(|| Error::Validation {
            what: "generator",
            detail: format!("size {} is not a perfect square", a_tilde.nrows()),
        })?;
        if !a_tilde.is_square() || n_tilde.shape() != a_tilde.shape() {
            return Err(Error::DimensionMismatch {
                expected: a_tilde.nrows(),
                found: n_tilde.nrows(),
                context: "generator matrices",
            });
        }
        let x_equilibrium = default_equilibrium(&a_tilde, dim)?;
        Ok(BilinearGenerators {
            dim,
            a_tilde,
            n_tilde,
            x_equilibrium,
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn a_tilde(&self) -> &CMatrix {
        &self.a_tilde
    }

    pub fn n_tilde(&self) -> &CMatrix {
        &self.n_tilde
    }

    pub fn x_equilibrium(&self) -> &CVector {
        &self.x_equilibrium
    }

    /// Replaces the equilibrium vector; it must satisfy `A~ x_e = 0`.
    pub fn with_equilibrium(mut self, x_e: CVector) -> Result<Self> {
        if x_e.len() != self.a_tilde.nrows() {
            return Err(Error::DimensionMismatch {
                expected: self.a_tilde.nrows(),
                found: x_e.len(),
                context: "equilibrium vector",
            });
        }
        let residual = self.equilibrium_residual(&x_e);
        if residual > GENERATOR_TOL {
            return Err(Error::Parameter {
                name: "x_equilibrium",
                detail: format!("not in the null space of the drift (residual {residual:e})"),
            });
        }
        self.x_equilibrium = x_e;
        Ok(self)
    }

    /// `||A~ x||` for a candidate equilibrium.
    pub fn equilibrium_residual(&self, x: &CVector) -> f64 {
        (&self.a_tilde * x).norm()
    }

    /// Largest entry of `t A~` and `t N~` for the trace row `t`.
    pub fn trace_leak(&self) -> (f64, f64) {
        let t = SlotLayout::new(self.dim).trace_row();
        (
            linalg::max_abs_row(&(&t * &self.a_tilde)),
            linalg::max_abs_row(&(&t * &self.n_tilde)),
        )
    }
}

/// Builds `A~`, `N~` in canonical slot order and picks a default equilibrium.
pub fn build_generators(sys: &PhysicalSystem) -> Result<BilinearGenerators> {
    let l = sys.dim();
    let layout = SlotLayout::new(l);
    let len = layout.len();
    let mut a = CMatrix::zeros(len, len);
    let mut n_t = CMatrix::zeros(len, len);
    let inv_hbar = 1.0 / sys.hbar();
    for (r, &(n, m)) in layout.slots().iter().enumerate() {
        a[(r, r)] = C64::new(-sys.dephasing_rate(n, m), -sys.bohr_frequency(n, m));
        if n == m {
            for k in (0..l).filter(|&k| k != n) {
                a[(r, layout.index_of(k, k))] += C64::new(sys.rates()[(k, n)], 0.0);
            }
        }
        for k in 0..l {
            n_t[(r, layout.index_of(k, m))] += sys.dipole()[(n, k)] * inv_hbar;
            n_t[(r, layout.index_of(n, k))] -= sys.dipole()[(k, m)] * inv_hbar;
        }
    }
    BilinearGenerators::from_matrices(a, n_t)
}

/// A population-only null vector of `A~` whose populations form a probability
/// distribution: the lowest-index level with no outgoing rate if there is one,
/// otherwise the normalised stationary distribution of the rate block.
fn default_equilibrium(a: &CMatrix, l: usize) -> Result<CVector> {
    let len = a.nrows();
    let rate_block = a.view((0, 0), (l, l)).into_owned();
    for k in 0..l {
        if rate_block.column(k).iter().all(|z| z.norm() <= GENERATOR_TOL) {
            let mut x = CVector::zeros(len);
            x[k] = C64::new(1.0, 0.0);
            if (a * &x).norm() <= GENERATOR_TOL {
                return Ok(x);
            }
        }
    }
    let svd = rate_block.clone().svd(false, true);
    let (idx, sigma_min) = svd
        .singular_values
        .iter()
        .copied()
        .enumerate()
        .min_by(|a, b| a.1.total_cmp(&b.1))
        .expect("nonempty rate block");
    let scale = svd.singular_values.max().max(1.0);
    if sigma_min > GENERATOR_TOL * scale {
        return Err(Error::EquilibriumNotFound { sigma_min });
    }
    let v_t = svd.v_t.expect("requested right singular vectors");
    let null = v_t.row(idx).adjoint();
    let total: C64 = null.iter().sum();
    if total.norm() <= GENERATOR_TOL {
        return Err(Error::EquilibriumNotFound { sigma_min });
    }
    let mut x = CVector::zeros(len);
    for k in 0..l {
        x[k] = null[k] / total;
    }
    let valid = (0..l).all(|k| x[k].im.abs() <= 1e-12 && x[k].re >= -1e-12);
    if !valid || (a * &x).norm() > GENERATOR_TOL {
        return Err(Error::EquilibriumNotFound { sigma_min });
    }
    Ok(x)
}

/// Per-step matrices of the discrete bilinear model.
#[derive(Clone, Debug, PartialEq)]
pub struct DiscreteModel {
    a: CMatrix,
    phi: CMatrix,
    dt: f64,
    measurement_row: Option<CRow>,
}

impl DiscreteModel {
    pub fn a(&self) -> &CMatrix {
        &self.a
    }

    /// `\int_0^dt e^{A~ s} ds`.
    pub fn phi(&self) -> &CMatrix {
        &self.phi
    }

    pub fn dt(&self) -> f64 {
        self.dt
    }

    pub fn measurement_row(&self) -> Option<&CRow> {
        self.measurement_row.as_ref()
    }

    pub fn with_measurement_row(mut self, row: CRow) -> Result<Self> {
        if row.len() != self.a.nrows() {
            return Err(Error::DimensionMismatch {
                expected: self.a.nrows(),
                found: row.len(),
                context: "measurement row",
            });
        }
        self.measurement_row = Some(row);
        Ok(self)
    }
}

pub fn discretize(gen: &BilinearGenerators, dt: f64) -> Result<DiscreteModel> {
    if !(dt.is_finite() && dt > 0.0) {
        return Err(Error::Parameter {
            name: "dt",
            detail: format!("sampling period must be positive, found {dt}"),
        });
    }
    let (a, phi) = linalg::exp_and_integral(gen.a_tilde(), dt);
    Ok(DiscreteModel {
        a,
        phi,
        dt,
        measurement_row: None,
    })
}

/// `B(x) = phi * i N~ (x + x_e)` with `x` held over the step.
pub fn control_matrix(model: &DiscreteModel, gen: &BilinearGenerators, x: &CVector) -> Result<CVector> {
    if x.len() != gen.x_equilibrium().len() {
        return Err(Error::DimensionMismatch {
            expected: gen.x_equilibrium().len(),
            found: x.len(),
            context: "control matrix state",
        });
    }
    let drive = gen.n_tilde() * (x + gen.x_equilibrium()) * C64::new(0.0, 1.0);
    Ok(model.phi() * drive)
}

/// `D = vec(o^T)^T`.
pub fn measurement_row(obs: &Observable) -> CRow {
    obs.measurement_row()
}

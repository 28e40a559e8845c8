//! Complex normal distribution `N_C(mean, Gamma', C')`.

use nalgebra::SymmetricEigen;

use crate::error::{Error, Result};
use crate::state::{hermiticity_defect, CMatrix, CVector, SlotLayout, C64};

/// Tolerance of the structural checks on `Gamma'` and `C'`.
const STRUCTURE_TOL: f64 = 1e-10;

/// Mean, covariance `Gamma' = E[(z - m)(z - m)^H]` and pseudo-covariance
/// `C' = E[(z - m)(z - m)^T]` of a complex Gaussian vector.
#[derive(Clone, Debug, PartialEq)]
pub struct ComplexNormalParams {
    mean: CVector,
    gamma: CMatrix,
    c_rel: CMatrix,
}

impl ComplexNormalParams {
    pub fn new(mean: CVector, gamma: CMatrix, c_rel: CMatrix) -> Result<Self> {
        let n = mean.len();
        for (what, m) in [("covariance", &gamma), ("pseudo-covariance", &c_rel)] {
            if m.shape() != (n, n) {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    found: m.nrows(),
                    context: what,
                });
            }
        }
        let scale = gamma.iter().fold(1.0_f64, |a, z| a.max(z.norm()));
        if hermiticity_defect(&gamma) > STRUCTURE_TOL * scale {
            return Err(Error::Validation {
                what: "complex normal covariance",
                detail: "not Hermitian".into(),
            });
        }
        let min_eig = SymmetricEigen::new((&gamma + gamma.adjoint()) * C64::new(0.5, 0.0))
            .eigenvalues
            .min();
        if min_eig < -STRUCTURE_TOL * scale {
            return Err(Error::Validation {
                what: "complex normal covariance",
                detail: format!("not positive semidefinite (min eigenvalue {min_eig:e})"),
            });
        }
        if (&c_rel - c_rel.transpose())
            .iter()
            .any(|z| z.norm() > STRUCTURE_TOL * scale)
        {
            return Err(Error::Validation {
                what: "complex normal pseudo-covariance",
                detail: "not symmetric".into(),
            });
        }
        for i in 0..n {
            for j in 0..n {
                let bound = (gamma[(i, i)].re * gamma[(j, j)].re).max(0.0).sqrt();
                if c_rel[(i, j)].norm() > bound + STRUCTURE_TOL * scale {
                    return Err(Error::Validation {
                        what: "complex normal pseudo-covariance",
                        detail: format!("entry ({i}, {j}) exceeds the Cauchy-Schwarz bound"),
                    });
                }
            }
        }
        Ok(ComplexNormalParams { mean, gamma, c_rel })
    }

    /// Zero-mean noise with independent real and imaginary parts of variance
    /// `std^2 / 2` on each coherence pair and population noise of variance
    /// `std^2` projected onto the trace-free subspace; this is the law of the
    /// process-noise sampler.
    pub fn structured_noise(layout: &SlotLayout, std: f64) -> Self {
        let len = layout.len();
        let l = layout.dim();
        let var = std * std;
        let mut gamma = CMatrix::zeros(len, len);
        let mut c_rel = CMatrix::zeros(len, len);
        for i in 0..l {
            for j in 0..l {
                let v = var * (if i == j { 1.0 } else { 0.0 } - 1.0 / l as f64);
                gamma[(i, j)] = C64::new(v, 0.0);
                c_rel[(i, j)] = C64::new(v, 0.0);
            }
        }
        for (p, q) in layout.pairs() {
            gamma[(p, p)] = C64::new(var, 0.0);
            gamma[(q, q)] = C64::new(var, 0.0);
            c_rel[(p, q)] = C64::new(var, 0.0);
            c_rel[(q, p)] = C64::new(var, 0.0);
        }
        ComplexNormalParams {
            mean: CVector::zeros(len),
            gamma,
            c_rel,
        }
    }

    pub fn dim(&self) -> usize {
        self.mean.len()
    }

    pub fn mean(&self) -> &CVector {
        &self.mean
    }

    pub fn covariance(&self) -> &CMatrix {
        &self.gamma
    }

    pub fn pseudo_covariance(&self) -> &CMatrix {
        &self.c_rel
    }

    pub fn with_mean(mut self, mean: CVector) -> Result<Self> {
        if mean.len() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: mean.len(),
                context: "complex normal mean",
            });
        }
        self.mean = mean;
        Ok(self)
    }

    /// `[[Gamma', C'], [conj C', conj Gamma']]`, the covariance of `(z, conj z)`.
    pub fn augmented_covariance(&self) -> CMatrix {
        let n = self.dim();
        let mut s = CMatrix::zeros(2 * n, 2 * n);
        s.view_mut((0, 0), (n, n)).copy_from(&self.gamma);
        s.view_mut((0, n), (n, n)).copy_from(&self.c_rel);
        s.view_mut((n, 0), (n, n)).copy_from(&self.c_rel.map(|z| z.conj()));
        s.view_mut((n, n), (n, n)).copy_from(&self.gamma.map(|z| z.conj()));
        s
    }

    /// Log density at `z`; fails when the augmented covariance is singular.
    pub fn log_density(&self, z: &CVector) -> Result<f64> {
        let n = self.dim();
        if z.len() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: z.len(),
                context: "complex normal argument",
            });
        }
        let sigma = self.augmented_covariance();
        let lu = sigma.clone().lu();
        let det = lu.determinant();
        if det.norm() <= f64::MIN_POSITIVE {
            return Err(Error::Validation {
                what: "complex normal",
                detail: "augmented covariance is singular".into(),
            });
        }
        let d = z - &self.mean;
        let mut aug = CVector::zeros(2 * n);
        aug.rows_mut(0, n).copy_from(&d);
        aug.rows_mut(n, n).copy_from(&d.map(|v| v.conj()));
        let solved = lu.solve(&aug).ok_or_else(|| Error::Validation {
            what: "complex normal",
            detail: "augmented covariance is singular".into(),
        })?;
        let q = aug.dotc(&solved).re;
        Ok(-(n as f64) * std::f64::consts::PI.ln() - 0.5 * det.re.ln() - 0.5 * q)
    }

    /// `C = C' / (|Gamma'|^2 - |C'|^2)` with `|.|` the determinant modulus.
    /// `None` when the denominator vanishes.
    pub fn scaled_pseudo_covariance(&self) -> Option<CMatrix> {
        let dg = self.gamma.clone().determinant().norm();
        let dc = self.c_rel.clone().determinant().norm();
        let denom = dg * dg - dc * dc;
        (denom.abs() > f64::MIN_POSITIVE).then(|| &self.c_rel / C64::new(denom, 0.0))
    }

    /// `Tr(conj(C)^{-1} q)`, or `None` when `conj(C)` is singular.
    pub fn trace_term(&self, q: &CMatrix) -> Option<f64> {
        let c = self.scaled_pseudo_covariance()?;
        let scale = c.iter().fold(0.0_f64, |a, z| a.max(z.norm()));
        if scale == 0.0 {
            return None;
        }
        let sv = c.clone().singular_values();
        if sv.min() <= 1e-12 * sv.max() {
            return None;
        }
        let inv = c.map(|z| z.conj()).try_inverse()?;
        Some((inv * q).trace().re)
    }
}

//! Morse-oscillator diatomic molecule.
//!
//! Inputs are spectroscopic (eV, Å, kg, Debye); every output is in atomic
//! units with lengths in bohr. The dipole function is `mu(r) = mu0 r e^{-r/r*}`
//! with `mu0` converted from Debye to e·bohr and `r` in bohr.

use std::f64::consts::PI;

use nalgebra::DMatrix;

use super::quadrature;
use super::special::{laguerre_scaled, ln_gamma};
use super::units::{angstrom_to_bohr, atomic_units, per_angstrom_to_per_bohr, AtomicMorseParameters};
use crate::dynamics::PhysicalSystem;
use crate::error::{Error, Result};
use crate::linalg::to_complex;
use crate::state::Observable;

/// Absolute tolerance of the matrix-element quadratures.
pub const MATRIX_ELEMENT_TOL: f64 = 1e-12;
/// Smallest `y = nu e^{-alpha (r - r_eq)}` kept in the integration domain.
pub const Y_MIN: f64 = 1e-12;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MorseParameters {
    pub d0_ev: f64,
    pub r_eq_angstrom: f64,
    pub reduced_mass_kg: f64,
    pub alpha_per_angstrom: f64,
    pub nu: f64,
    pub mu0_debye: f64,
    pub r_star_angstrom: f64,
}

impl MorseParameters {
    /// The LiH parameter set.
    pub fn lih() -> Self {
        MorseParameters {
            d0_ev: 2.45090,
            r_eq_angstrom: 2.379,
            reduced_mass_kg: 2.5986e-27,
            alpha_per_angstrom: 13.956,
            nu: 6.1346,
            mu0_debye: 5.8677,
            r_star_angstrom: 1.595,
        }
    }

    pub fn validate(&self) -> Result<()> {
        let fields = [
            ("d0", self.d0_ev),
            ("r_eq", self.r_eq_angstrom),
            ("reduced_mass", self.reduced_mass_kg),
            ("alpha", self.alpha_per_angstrom),
            ("mu0", self.mu0_debye),
            ("r_star", self.r_star_angstrom),
        ];
        for (name, v) in fields {
            if !(v.is_finite() && v > 0.0) {
                return Err(Error::Parameter {
                    name,
                    detail: format!("must be positive, found {v}"),
                });
            }
        }
        if !(self.nu.is_finite() && self.nu > 1.0) {
            return Err(Error::NoBoundStates { nu: self.nu });
        }
        if self.level_count() < 2 {
            return Err(Error::Parameter {
                name: "nu",
                detail: format!("nu = {} gives a single level; at least two are needed", self.nu),
            });
        }
        Ok(())
    }

    /// Number of levels `l = floor((nu - 1) / 2) + 1`.
    pub fn level_count(&self) -> usize {
        ((self.nu - 1.0) / 2.0).floor() as usize + 1
    }
}

/// Gaussian target `o(r) = (g0 / sqrt(pi)) e^{-g0^2 (r - r')^2}`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TargetGaussian {
    pub gamma0_per_angstrom: f64,
    pub r_prime_angstrom: f64,
}

impl TargetGaussian {
    pub fn lih() -> Self {
        TargetGaussian {
            gamma0_per_angstrom: 47.2590,
            r_prime_angstrom: 2.4871,
        }
    }

    /// `(gamma0 [1/bohr], r' [bohr])`.
    fn atomic(&self) -> (f64, f64) {
        (
            per_angstrom_to_per_bohr(self.gamma0_per_angstrom),
            angstrom_to_bohr(self.r_prime_angstrom),
        )
    }

    /// Target function at `r` (bohr), in 1/bohr.
    pub fn value(&self, r: f64) -> f64 {
        let (g0, rp) = self.atomic();
        g0 / PI.sqrt() * (-(g0 * (r - rp)).powi(2)).exp()
    }
}

/// Energies `E_n = -alpha^2 / (2 m) ((nu - 1)/2 - n)^2` in hartree, `n = 0 .. l-1`.
pub fn morse_energies(p: &MorseParameters) -> Result<Vec<f64>> {
    p.validate()?;
    let a = atomic_units(p);
    Ok((0..p.level_count()).map(|n| energy_at(&a, n as f64)).collect())
}

/// Energy for a real-valued quantum number (used to probe the parabola vertex).
pub fn energy_at(a: &AtomicMorseParameters, n: f64) -> f64 {
    -a.alpha * a.alpha / (2.0 * a.mass) * ((a.nu - 1.0) / 2.0 - n).powi(2)
}

/// Normalised eigenfunction `psi_n(r)` on a grid of positions in bohr.
pub fn morse_wavefunction(p: &MorseParameters, n: usize, r: &[f64]) -> Result<Vec<f64>> {
    let eval = Eigenfunction::new(p, n)?;
    Ok(r.iter().map(|&x| eval.at(x)).collect())
}

/// Precomputed constants of one eigenfunction.
#[derive(Clone, Copy, Debug)]
pub struct Eigenfunction {
    n: usize,
    nu: f64,
    alpha: f64,
    r_eq: f64,
    s: f64,
    ln_norm: f64,
}

impl Eigenfunction {
    pub fn new(p: &MorseParameters, n: usize) -> Result<Self> {
        p.validate()?;
        let l = p.level_count();
        if n >= l {
            return Err(Error::Parameter {
                name: "n",
                detail: format!("level {n} is out of range for {l} bound states"),
            });
        }
        let a = atomic_units(p);
        let nf = n as f64;
        let two_s = a.nu - 2.0 * nf - 1.0;
        let ln_norm = 0.5 * ((a.alpha * two_s).ln() + ln_gamma(nf + 1.0) - ln_gamma(a.nu - nf));
        Ok(Eigenfunction {
            n,
            nu: a.nu,
            alpha: a.alpha,
            r_eq: a.r_eq,
            s: two_s / 2.0,
            ln_norm,
        })
    }

    pub fn at(&self, r: f64) -> f64 {
        let y = self.nu * (-self.alpha * (r - self.r_eq)).exp();
        let (mantissa, ln_scale) = laguerre_scaled(self.n, 2.0 * self.s, y);
        if mantissa == 0.0 || y == 0.0 {
            return 0.0;
        }
        let ln_mag = self.ln_norm - 0.5 * y + self.s * y.ln() + mantissa.abs().ln() + ln_scale;
        mantissa.signum() * ln_mag.exp()
    }
}

/// Integration window `[r_lo, r_hi]` in bohr: from the point where
/// `e^{-y/2} y^{(nu+1)/2}` has fallen below `1e-16` to `y = Y_MIN`.
pub fn integration_window(p: &MorseParameters) -> (f64, f64) {
    let a = atomic_units(p);
    let exponent = 0.5 * (a.nu + 1.0);
    let mut y_max = a.nu.max(1.0);
    while -0.5 * y_max + exponent * y_max.ln() > (1e-16f64).ln() {
        y_max *= 1.25;
    }
    let r_lo = a.r_eq - (y_max / a.nu).ln() / a.alpha;
    let r_hi = a.r_eq + (a.nu / Y_MIN).ln() / a.alpha;
    (r_lo, r_hi)
}

/// `\int f(r) psi_i(r) psi_j(r) dr` for all `i, j < l`.
pub fn matrix_elements<F: Fn(f64) -> f64>(
    p: &MorseParameters,
    f: F,
    extra_breaks: &[f64],
    tol: f64,
) -> Result<DMatrix<f64>> {
    let l = p.level_count();
    let funcs = (0..l).map(|n| Eigenfunction::new(p, n)).collect::<Result<Vec<_>>>()?;
    let (r_lo, r_hi) = integration_window(p);
    let a = atomic_units(p);
    let mut breaks: Vec<f64> = vec![r_lo, r_hi, a.r_eq];
    breaks.extend(extra_breaks.iter().copied().filter(|b| *b > r_lo && *b < r_hi));
    breaks.sort_by(f64::total_cmp);
    breaks.dedup();
    let mut out = DMatrix::zeros(l, l);
    for i in 0..l {
        for j in i..l {
            let (fi, fj) = (funcs[i], funcs[j]);
            let v = quadrature::integrate_with_breaks(|r| f(r) * fi.at(r) * fj.at(r), &breaks, tol)?.value;
            out[(i, j)] = v;
            out[(j, i)] = v;
        }
    }
    Ok(out)
}

/// Overlap matrix `<psi_i | psi_j>`; the identity up to quadrature error.
pub fn overlap_matrix(p: &MorseParameters, tol: f64) -> Result<DMatrix<f64>> {
    matrix_elements(p, |_| 1.0, &[], tol)
}

/// Dipole matrix in e·bohr.
pub fn dipole_matrix(p: &MorseParameters) -> Result<DMatrix<f64>> {
    dipole_matrix_with_tol(p, MATRIX_ELEMENT_TOL)
}

pub fn dipole_matrix_with_tol(p: &MorseParameters, tol: f64) -> Result<DMatrix<f64>> {
    let a = atomic_units(p);
    matrix_elements(p, |r| a.mu0 * r * (-r / a.r_star).exp(), &[], tol)
}

/// Matrix of the Gaussian target operator in the eigenbasis, in 1/bohr.
pub fn gaussian_target_matrix(p: &MorseParameters, t: &TargetGaussian, tol: f64) -> Result<DMatrix<f64>> {
    if !(t.gamma0_per_angstrom.is_finite() && t.gamma0_per_angstrom > 0.0) {
        return Err(Error::Parameter {
            name: "gamma0",
            detail: format!("must be positive, found {}", t.gamma0_per_angstrom),
        });
    }
    let (g0, rp) = t.atomic();
    let breaks: Vec<f64> = (-8..=8).map(|k| rp + f64::from(k) / g0).collect();
    matrix_elements(p, |r| t.value(r), &breaks, tol)
}

pub fn gaussian_target(p: &MorseParameters, t: &TargetGaussian) -> Result<Observable> {
    Observable::new(to_complex(&gaussian_target_matrix(p, t, MATRIX_ELEMENT_TOL)?))
}

/// Closed molecular system (`hbar = 1`, atomic units).
pub fn morse_system(p: &MorseParameters) -> Result<PhysicalSystem> {
    let energies = morse_energies(p)?;
    let mu = dipole_matrix(p)?;
    PhysicalSystem::closed(energies, to_complex(&mu), 1.0)
}

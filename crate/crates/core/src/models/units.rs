//! Conversion to atomic units (hartree, bohr, electron mass, e·bohr).
//!
//! Constants are CODATA 2018.

use super::morse::MorseParameters;

/// Hartree energy in electronvolts.
pub const HARTREE_EV: f64 = 27.211_386_245_988;
/// Bohr radius in ångström.
pub const BOHR_ANGSTROM: f64 = 0.529_177_210_903;
/// Electron mass in kilograms.
pub const ELECTRON_MASS_KG: f64 = 9.109_383_701_5e-31;
/// One debye in atomic units of dipole moment (e·bohr).
pub const DEBYE_AU: f64 = 0.393_430_307;

pub fn ev_to_hartree(ev: f64) -> f64 {
    ev / HARTREE_EV
}

pub fn angstrom_to_bohr(a: f64) -> f64 {
    a / BOHR_ANGSTROM
}

pub fn per_angstrom_to_per_bohr(k: f64) -> f64 {
    k * BOHR_ANGSTROM
}

pub fn kg_to_electron_masses(kg: f64) -> f64 {
    kg / ELECTRON_MASS_KG
}

pub fn debye_to_au(d: f64) -> f64 {
    d * DEBYE_AU
}

/// Morse parameters in atomic units.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct AtomicMorseParameters {
    /// Well depth, hartree.
    pub d0: f64,
    /// Equilibrium separation, bohr.
    pub r_eq: f64,
    /// Reduced mass, electron masses.
    pub mass: f64,
    /// Width parameter, 1/bohr.
    pub alpha: f64,
    pub nu: f64,
    /// Dipole scale, e·bohr.
    pub mu0: f64,
    /// Dipole decay length, bohr.
    pub r_star: f64,
}

pub fn atomic_units(p: &MorseParameters) -> AtomicMorseParameters {
    AtomicMorseParameters {
        d0: ev_to_hartree(p.d0_ev),
        r_eq: angstrom_to_bohr(p.r_eq_angstrom),
        mass: kg_to_electron_masses(p.reduced_mass_kg),
        alpha: per_angstrom_to_per_bohr(p.alpha_per_angstrom),
        nu: p.nu,
        mu0: debye_to_au(p.mu0_debye),
        r_star: angstrom_to_bohr(p.r_star_angstrom),
    }
}

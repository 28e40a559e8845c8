//! Benchmark systems and the numerical machinery behind them.

pub mod morse;
pub mod quadrature;
pub mod special;
pub mod spin;
pub mod units;

pub use morse::{
    dipole_matrix, gaussian_target, morse_energies, morse_system, morse_wavefunction, MorseParameters, TargetGaussian,
};
pub use spin::{spin_half_system, spin_one_system};
pub use units::{atomic_units, AtomicMorseParameters};

//! Fully probabilistic control of quantum systems.
//!
//! The crate turns a Liouville-von Neumann model (energies, dipole coupling,
//! dissipative rates) into a discrete bilinear state-space system, computes the
//! Gaussian fully-probabilistic controller that minimises the Kullback-Leibler
//! divergence to an ideal closed-loop behaviour, and runs the resulting closed
//! loop. Three benchmark systems ship with it: a Morse-oscillator LiH molecule,
//! a spin-1/2 and a spin-1.
//!
//! The layers, bottom up:
//!
//! * [`state`]: density matrices, the canonical vectorisation, validity checks.
//! * [`dynamics`]: bilinear generators and their zero-order-hold discretisation.
//! * [`models`]: the benchmark systems plus the special functions they need.
//! * [`control`]: Riccati recursions, the closed-form control law and the
//!   quadrature oracles that check it.
//! * [`simulate`]: noise, propagation, measurement and the closed loop.
//! * [`scenario`]: TOML scenarios, built-ins, CSV and SVG output.
//! * [`oracles`]: named numerical cross-checks, also exposed by the `qfpd` binary.

pub mod control;
pub mod dynamics;
pub mod error;
pub mod linalg;
pub mod models;
pub mod oracles;
pub mod scenario;
pub mod simulate;
pub mod state;

pub use error::{Error, Result};

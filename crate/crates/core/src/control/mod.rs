//! The Gaussian fully-probabilistic controller.
//!
//! The performance index `-ln gamma(x) = 0.5 (x^T M x + P x + omega)` is propagated
//! backwards by [`riccati_step`] and [`omega_step`]; [`control_law`] turns it into
//! the randomised controller `N(v, R)`. The [`oracle`] module evaluates the same
//! quantities by direct numerical integration over the control.

pub mod config;
pub mod law;
pub mod normal;
pub mod oracle;
pub mod riccati;

pub use config::{ControllerConfig, IndexMode, OnNonConvergence, RiccatiInit, RiccatiOptions};
pub use law::{control_law, gamma_closed_form, stationarity_residual, ControlLaw};
pub use normal::ComplexNormalParams;
pub use oracle::{control_argmin_oracle, gamma_quadrature_oracle, ArgminOracle};
pub use riccati::{omega_step, riccati_step, steady_index, Objective, OmegaStep, RiccatiState, SteadyIndex};

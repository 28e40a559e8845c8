use crate::error::{Error, Result};

/// Ideal-distribution parameters of the controller.
///
/// The ideal output pdf is `N(o_d, g_r)`, the actual one has variance `g`, and
/// the ideal control pdf is `N(u_r, omega)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ControllerConfig {
    pub g_r: f64,
    pub g: f64,
    pub omega: f64,
    pub u_r: f64,
    pub o_d: f64,
    pub horizon: usize,
}

impl ControllerConfig {
    /// `g = g_r` and `u_r = 0`.
    pub fn new(g_r: f64, omega: f64, o_d: f64, horizon: usize) -> Result<Self> {
        let cfg = ControllerConfig {
            g_r,
            g: g_r,
            omega,
            u_r: 0.0,
            o_d,
            horizon,
        };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        for (name, v) in [("g_r", self.g_r), ("g", self.g), ("omega", self.omega)] {
            if !(v.is_finite() && v > 0.0) {
                return Err(Error::Parameter {
                    name,
                    detail: format!("must be positive, found {v}"),
                });
            }
        }
        for (name, v) in [("u_r", self.u_r), ("o_d", self.o_d)] {
            if !v.is_finite() {
                return Err(Error::Parameter {
                    name,
                    detail: format!("must be finite, found {v}"),
                });
            }
        }
        if self.horizon == 0 {
            return Err(Error::Parameter {
                name: "horizon",
                detail: "must be at least 1".into(),
            });
        }
        Ok(())
    }
}

/// Starting point of the index iteration.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RiccatiInit {
    Zero,
    /// Random structured positive semidefinite `M` and random `P`, drawn from
    /// the caller's generator.
    Random,
}

/// What to do when the steady-state iteration exhausts its budget.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OnNonConvergence {
    Abort,
    /// Keep the last iterate, which is the finite-horizon backward recursion
    /// result after `max_iterations` steps.
    LastIterate,
}

/// How the index is obtained at each closed-loop step.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum IndexMode {
    /// Iterate the recursion to its fixed point with the current `B`.
    SteadyState,
    /// Run the recursion exactly `H - t` times from the terminal index.
    Backward,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RiccatiOptions {
    pub init: RiccatiInit,
    /// Relative tolerance on `||dM||_inf` and `||dP||_inf`.
    pub tolerance: f64,
    pub max_iterations: usize,
    pub on_nonconvergence: OnNonConvergence,
    pub mode: IndexMode,
    /// Start each closed-loop step from the previous step's index.
    pub warm_start: bool,
}

impl Default for RiccatiOptions {
    fn default() -> Self {
        RiccatiOptions {
            init: RiccatiInit::Zero,
            tolerance: 1e-9,
            max_iterations: 100_000,
            on_nonconvergence: OnNonConvergence::Abort,
            mode: IndexMode::SteadyState,
            warm_start: false,
        }
    }
}

impl RiccatiOptions {
    pub fn validate(&self) -> Result<()> {
        if !(self.tolerance.is_finite() && self.tolerance > 0.0) {
            return Err(Error::Parameter {
                name: "tolerance",
                detail: format!("must be positive, found {}", self.tolerance),
            });
        }
        if self.max_iterations == 0 {
            return Err(Error::Parameter {
                name: "max_iterations",
                detail: "must be at least 1".into(),
            });
        }
        Ok(())
    }
}

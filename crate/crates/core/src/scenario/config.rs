//! Scenario files.
//!
//! Scenarios are TOML documents. Unknown keys are rejected and every semantic
//! error names the offending key path, e.g. `controller.g_r`.
//!
//! ```toml
//! name = "spin-half"
//! seed = 0
//!
//! [system]
//! kind = "spin-half"            # spin-half | spin-one | morse | custom
//!
//! [initial]
//! level = 0
//!
//! [target]
//! kind = "projector"            # projector | gaussian | matrix
//! level = 1
//! o_d = 1.0
//!
//! [controller]
//! g_r = 1e-5
//! omega = 1.0
//!
//! [controller.riccati]
//! init = "random"               # zero | random
//! max_iterations = 1000
//! on_nonconvergence = "last-iterate"
//! warm_start = true
//!
//! [discretization]
//! dt = 0.0505
//! horizon = 200
//! ```

use std::path::Path;

use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use crate::control::{ControllerConfig, IndexMode, OnNonConvergence, RiccatiInit, RiccatiOptions};
use crate::dynamics::{build_generators, PhysicalSystem};
use crate::error::{Error, Result};
use crate::models::{
    gaussian_target, morse_system, spin_half_system, spin_one_system, MorseParameters, TargetGaussian,
};
use crate::simulate::{ClosedLoop, ControlMode, NoiseSpec};
use crate::state::{vectorize, CMatrix, DensityMatrix, Observable, C64};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioConfig {
    pub name: String,
    #[serde(default, skip_serializing_if = "String::is_empty")]
    pub description: String,
    #[serde(default)]
    pub seed: u64,
    pub system: SystemConfig,
    #[serde(default)]
    pub initial: InitialConfig,
    pub target: TargetConfig,
    pub controller: ControllerSection,
    pub discretization: DiscretizationConfig,
    #[serde(default)]
    pub noise: NoiseConfig,
    #[serde(default)]
    pub checks: ChecksConfig,
    #[serde(default)]
    pub output: OutputConfig,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SystemKind {
    SpinHalf,
    SpinOne,
    Morse,
    Custom,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SystemConfig {
    pub kind: SystemKind,
    /// Level energies of a custom system.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub energies: Option<Vec<f64>>,
    /// Real part of a custom dipole matrix.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dipole: Option<Vec<Vec<f64>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dipole_imag: Option<Vec<Vec<f64>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub hbar: Option<f64>,
    /// `rates[k][j]` is the transition rate from level `k` to level `j`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rates: Option<Vec<Vec<f64>>>,
    /// Morse parameters; missing entries take the LiH values.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub morse: Option<MorseConfig>,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MorseConfig {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub d0_ev: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub r_eq_angstrom: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub reduced_mass_kg: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub alpha_per_angstrom: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub nu: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mu0_debye: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub r_star_angstrom: Option<f64>,
}

impl MorseConfig {
    pub fn parameters(&self) -> MorseParameters {
        let d = MorseParameters::lih();
        MorseParameters {
            d0_ev: self.d0_ev.unwrap_or(d.d0_ev),
            r_eq_angstrom: self.r_eq_angstrom.unwrap_or(d.r_eq_angstrom),
            reduced_mass_kg: self.reduced_mass_kg.unwrap_or(d.reduced_mass_kg),
            alpha_per_angstrom: self.alpha_per_angstrom.unwrap_or(d.alpha_per_angstrom),
            nu: self.nu.unwrap_or(d.nu),
            mu0_debye: self.mu0_debye.unwrap_or(d.mu0_debye),
            r_star_angstrom: self.r_star_angstrom.unwrap_or(d.r_star_angstrom),
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InitialConfig {
    #[serde(default)]
    pub level: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum TargetKind {
    /// Projector onto `level`.
    Projector,
    /// Gaussian position operator of a Morse system.
    Gaussian,
    /// Explicit Hermitian matrix `real + i imag`.
    Matrix,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TargetConfig {
    pub kind: TargetKind,
    pub o_d: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub level: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub gamma0_per_angstrom: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub r_prime_angstrom: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub real: Option<Vec<Vec<f64>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub imag: Option<Vec<Vec<f64>>>,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ControlModeConfig {
    #[default]
    Mean,
    Sample,
    Off,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ControllerSection {
    pub g_r: f64,
    /// Actual measurement variance; defaults to `g_r`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub g: Option<f64>,
    pub omega: f64,
    #[serde(default)]
    pub u_r: f64,
    #[serde(default)]
    pub mode: ControlModeConfig,
    #[serde(default)]
    pub riccati: RiccatiConfig,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum InitConfig {
    #[default]
    Zero,
    Random,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum NonConvergenceConfig {
    #[default]
    Abort,
    LastIterate,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum RecursionConfig {
    #[default]
    SteadyState,
    Backward,
}

fn default_tolerance() -> f64 {
    1e-9
}

fn default_max_iterations() -> usize {
    100_000
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RiccatiConfig {
    #[serde(default)]
    pub init: InitConfig,
    #[serde(default = "default_tolerance")]
    pub tolerance: f64,
    #[serde(default = "default_max_iterations")]
    pub max_iterations: usize,
    #[serde(default)]
    pub on_nonconvergence: NonConvergenceConfig,
    #[serde(default)]
    pub recursion: RecursionConfig,
    #[serde(default)]
    pub warm_start: bool,
}

impl Default for RiccatiConfig {
    fn default() -> Self {
        RiccatiConfig {
            init: InitConfig::Zero,
            tolerance: default_tolerance(),
            max_iterations: default_max_iterations(),
            on_nonconvergence: NonConvergenceConfig::Abort,
            recursion: RecursionConfig::SteadyState,
            warm_start: false,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DiscretizationConfig {
    pub dt: f64,
    pub horizon: usize,
}

fn yes() -> bool {
    true
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NoiseConfig {
    #[serde(default)]
    pub process_std: f64,
    #[serde(default)]
    pub measure_std: f64,
    #[serde(default = "yes")]
    pub enabled: bool,
    #[serde(default)]
    pub renormalize_trace: bool,
}

impl Default for NoiseConfig {
    fn default() -> Self {
        NoiseConfig {
            process_std: 0.0,
            measure_std: 0.0,
            enabled: true,
            renormalize_trace: false,
        }
    }
}

fn default_trace_tol() -> f64 {
    1e-6
}

fn default_herm_tol() -> f64 {
    1e-8
}

/// Validity checks applied after a run; a failed check makes the CLI exit nonzero.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ChecksConfig {
    /// Largest trace defect accepted on a noise-free run.
    #[serde(default = "default_trace_tol")]
    pub trace_tolerance: f64,
    /// Largest Hermiticity defect accepted on a noise-free run.
    #[serde(default = "default_herm_tol")]
    pub hermiticity_tolerance: f64,
    /// Require every state to be positive semidefinite.
    #[serde(default)]
    pub positivity: bool,
}

impl Default for ChecksConfig {
    fn default() -> Self {
        ChecksConfig {
            trace_tolerance: default_trace_tol(),
            hermiticity_tolerance: default_herm_tol(),
            positivity: false,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OutputConfig {
    /// Output directory; the environment override takes precedence.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub directory: Option<String>,
    #[serde(default = "yes")]
    pub csv: bool,
    #[serde(default = "yes")]
    pub plots: bool,
}

impl Default for OutputConfig {
    fn default() -> Self {
        OutputConfig {
            directory: None,
            csv: true,
            plots: true,
        }
    }
}

/// Parses and validates a scenario document.
pub fn parse_scenario(text: &str) -> Result<ScenarioConfig> {
    let cfg: ScenarioConfig = toml::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    cfg.validate()?;
    Ok(cfg)
}

/// Reads, parses and validates a scenario file.
pub fn load_scenario(path: impl AsRef<Path>) -> Result<ScenarioConfig> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    parse_scenario(&text)
}

fn positive(key: &str, v: f64) -> Result<()> {
    if v.is_finite() && v > 0.0 {
        Ok(())
    } else {
        Err(Error::config(key, format!("must be a positive number, found {v}")))
    }
}

fn nonnegative(key: &str, v: f64) -> Result<()> {
    if v.is_finite() && v >= 0.0 {
        Ok(())
    } else {
        Err(Error::config(key, format!("must be nonnegative, found {v}")))
    }
}

fn square(key: &str, rows: &[Vec<f64>], dim: usize) -> Result<DMatrix<f64>> {
    if rows.len() != dim || rows.iter().any(|r| r.len() != dim) {
        return Err(Error::config(key, format!("must be a {dim}x{dim} array of rows")));
    }
    if rows.iter().flatten().any(|v| !v.is_finite()) {
        return Err(Error::config(key, "entries must be finite"));
    }
    Ok(DMatrix::from_fn(dim, dim, |i, j| rows[i][j]))
}

fn complex_matrix(key: &str, re: &[Vec<f64>], im: Option<&[Vec<f64>]>, dim: usize) -> Result<CMatrix> {
    let re = square(key, re, dim)?;
    let im = match im {
        Some(im) => square(&format!("{key}_imag"), im, dim)?,
        None => DMatrix::zeros(dim, dim),
    };
    Ok(CMatrix::from_fn(dim, dim, |i, j| C64::new(re[(i, j)], im[(i, j)])))
}

impl ScenarioConfig {
    /// Number of levels of the configured system.
    pub fn dim(&self) -> Result<usize> {
        Ok(match self.system.kind {
            SystemKind::SpinHalf => 2,
            SystemKind::SpinOne => 3,
            SystemKind::Morse => self.morse_parameters().level_count(),
            SystemKind::Custom => self
                .system
                .energies
                .as_ref()
                .map(Vec::len)
                .filter(|l| *l > 0)
                .ok_or_else(|| Error::config("system.energies", "a custom system needs a nonempty list of energies"))?,
        })
    }

    pub fn morse_parameters(&self) -> MorseParameters {
        self.system.morse.clone().unwrap_or_default().parameters()
    }

    pub fn target_gaussian(&self) -> TargetGaussian {
        let d = TargetGaussian::lih();
        TargetGaussian {
            gamma0_per_angstrom: self.target.gamma0_per_angstrom.unwrap_or(d.gamma0_per_angstrom),
            r_prime_angstrom: self.target.r_prime_angstrom.unwrap_or(d.r_prime_angstrom),
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.name.trim().is_empty() {
            return Err(Error::config("name", "must not be empty"));
        }
        let sys = &self.system;
        if sys.kind == SystemKind::Morse {
            let p = self.morse_parameters();
            let fields = [
                ("system.morse.d0_ev", p.d0_ev),
                ("system.morse.r_eq_angstrom", p.r_eq_angstrom),
                ("system.morse.reduced_mass_kg", p.reduced_mass_kg),
                ("system.morse.alpha_per_angstrom", p.alpha_per_angstrom),
                ("system.morse.mu0_debye", p.mu0_debye),
                ("system.morse.r_star_angstrom", p.r_star_angstrom),
            ];
            for (key, v) in fields {
                positive(key, v)?;
            }
            if !(p.nu.is_finite() && p.nu >= 3.0) {
                return Err(Error::config(
                    "system.morse.nu",
                    format!("must be at least 3 for two bound levels, found {}", p.nu),
                ));
            }
        } else if sys.morse.is_some() {
            return Err(Error::config("system.morse", "only valid with kind = \"morse\""));
        }
        let custom_only = [
            ("system.energies", sys.energies.is_some()),
            ("system.dipole", sys.dipole.is_some()),
            ("system.dipole_imag", sys.dipole_imag.is_some()),
            ("system.hbar", sys.hbar.is_some()),
        ];
        if sys.kind != SystemKind::Custom {
            if let Some((key, _)) = custom_only.iter().find(|(_, set)| *set) {
                return Err(Error::config(*key, "only valid with kind = \"custom\""));
            }
        }
        let dim = self.dim()?;
        if sys.kind == SystemKind::Custom {
            if sys.energies.iter().flatten().any(|e| !e.is_finite()) {
                return Err(Error::config("system.energies", "energies must be finite"));
            }
            let re = sys
                .dipole
                .as_ref()
                .ok_or_else(|| Error::config("system.dipole", "a custom system needs a dipole matrix"))?;
            let mu = complex_matrix("system.dipole", re, sys.dipole_imag.as_deref(), dim)?;
            if crate::state::hermiticity_defect(&mu) > crate::state::HERMITICITY_TOL {
                return Err(Error::config("system.dipole", "must be Hermitian"));
            }
            positive("system.hbar", sys.hbar.unwrap_or(1.0))?;
        }
        if let Some(rates) = &sys.rates {
            let r = square("system.rates", rates, dim)?;
            if r.iter().any(|v| *v < 0.0) {
                return Err(Error::config("system.rates", "rates must be nonnegative"));
            }
            if (0..dim).any(|k| r[(k, k)] != 0.0) {
                return Err(Error::config(
                    "system.rates",
                    "diagonal (self-transition) entries must be zero",
                ));
            }
        }
        if self.initial.level >= dim {
            return Err(Error::config(
                "initial.level",
                format!("{} is out of range for a {dim}-level system", self.initial.level),
            ));
        }

        let t = &self.target;
        if !t.o_d.is_finite() {
            return Err(Error::config("target.o_d", "must be finite"));
        }
        match t.kind {
            TargetKind::Projector => {
                let level = t
                    .level
                    .ok_or_else(|| Error::config("target.level", "a projector target needs a level"))?;
                if level >= dim {
                    return Err(Error::config(
                        "target.level",
                        format!("{level} is out of range for a {dim}-level system"),
                    ));
                }
            }
            TargetKind::Gaussian => {
                if sys.kind != SystemKind::Morse {
                    return Err(Error::config("target.kind", "a gaussian target needs a morse system"));
                }
                let g = self.target_gaussian();
                positive("target.gamma0_per_angstrom", g.gamma0_per_angstrom)?;
                if !g.r_prime_angstrom.is_finite() {
                    return Err(Error::config("target.r_prime_angstrom", "must be finite"));
                }
            }
            TargetKind::Matrix => {
                let re = t
                    .real
                    .as_ref()
                    .ok_or_else(|| Error::config("target.real", "a matrix target needs `real`"))?;
                let o = complex_matrix("target.real", re, t.imag.as_deref(), dim)?;
                if crate::state::hermiticity_defect(&o) > crate::state::HERMITICITY_TOL {
                    return Err(Error::config("target.real", "the target matrix must be Hermitian"));
                }
            }
        }
        let unused = match t.kind {
            TargetKind::Projector => [
                ("target.gamma0_per_angstrom", t.gamma0_per_angstrom.is_some()),
                ("target.r_prime_angstrom", t.r_prime_angstrom.is_some()),
                ("target.real", t.real.is_some()),
                ("target.imag", t.imag.is_some()),
            ],
            TargetKind::Gaussian => [
                ("target.level", t.level.is_some()),
                ("target.real", t.real.is_some()),
                ("target.imag", t.imag.is_some()),
                ("target.level", false),
            ],
            TargetKind::Matrix => [
                ("target.level", t.level.is_some()),
                ("target.gamma0_per_angstrom", t.gamma0_per_angstrom.is_some()),
                ("target.r_prime_angstrom", t.r_prime_angstrom.is_some()),
                ("target.level", false),
            ],
        };
        if let Some((key, _)) = unused.iter().find(|(_, set)| *set) {
            return Err(Error::config(*key, "not used by this target kind"));
        }

        let c = &self.controller;
        positive("controller.g_r", c.g_r)?;
        positive("controller.g", c.g.unwrap_or(c.g_r))?;
        positive("controller.omega", c.omega)?;
        if !c.u_r.is_finite() {
            return Err(Error::config("controller.u_r", "must be finite"));
        }
        positive("controller.riccati.tolerance", c.riccati.tolerance)?;
        if c.riccati.max_iterations == 0 {
            return Err(Error::config("controller.riccati.max_iterations", "must be at least 1"));
        }
        positive("discretization.dt", self.discretization.dt)?;
        if self.discretization.horizon == 0 {
            return Err(Error::config("discretization.horizon", "must be at least 1"));
        }
        nonnegative("noise.process_std", self.noise.process_std)?;
        nonnegative("noise.measure_std", self.noise.measure_std)?;
        positive("checks.trace_tolerance", self.checks.trace_tolerance)?;
        positive("checks.hermiticity_tolerance", self.checks.hermiticity_tolerance)?;
        if let Some(dir) = &self.output.directory {
            if dir.trim().is_empty() {
                return Err(Error::config("output.directory", "must not be empty"));
            }
        }
        Ok(())
    }

    pub fn physical_system(&self) -> Result<PhysicalSystem> {
        let base = match self.system.kind {
            SystemKind::SpinHalf => spin_half_system(),
            SystemKind::SpinOne => spin_one_system(),
            SystemKind::Morse => morse_system(&self.morse_parameters())?,
            SystemKind::Custom => {
                let dim = self.dim()?;
                let re = self
                    .system
                    .dipole
                    .as_ref()
                    .ok_or_else(|| Error::config("system.dipole", "a custom system needs a dipole matrix"))?;
                let mu = complex_matrix("system.dipole", re, self.system.dipole_imag.as_deref(), dim)?;
                PhysicalSystem::closed(
                    self.system.energies.clone().unwrap_or_default(),
                    mu,
                    self.system.hbar.unwrap_or(1.0),
                )?
            }
        };
        match &self.system.rates {
            Some(rates) => {
                let r = square("system.rates", rates, base.dim())?;
                PhysicalSystem::new(base.energies().to_vec(), base.dipole().clone(), r, base.hbar())
            }
            None => Ok(base),
        }
    }

    pub fn observable(&self) -> Result<Observable> {
        let dim = self.dim()?;
        match self.target.kind {
            TargetKind::Projector => Observable::projector(dim, self.target.level.unwrap_or(0)),
            TargetKind::Gaussian => gaussian_target(&self.morse_parameters(), &self.target_gaussian()),
            TargetKind::Matrix => {
                let re = self.target.real.as_deref().unwrap_or_default();
                Observable::new(complex_matrix("target.real", re, self.target.imag.as_deref(), dim)?)
            }
        }
    }

    pub fn controller_config(&self) -> Result<ControllerConfig> {
        let c = &self.controller;
        let cfg = ControllerConfig {
            g_r: c.g_r,
            g: c.g.unwrap_or(c.g_r),
            omega: c.omega,
            u_r: c.u_r,
            o_d: self.target.o_d,
            horizon: self.discretization.horizon,
        };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn riccati_options(&self) -> RiccatiOptions {
        let r = &self.controller.riccati;
        RiccatiOptions {
            init: match r.init {
                InitConfig::Zero => RiccatiInit::Zero,
                InitConfig::Random => RiccatiInit::Random,
            },
            tolerance: r.tolerance,
            max_iterations: r.max_iterations,
            on_nonconvergence: match r.on_nonconvergence {
                NonConvergenceConfig::Abort => OnNonConvergence::Abort,
                NonConvergenceConfig::LastIterate => OnNonConvergence::LastIterate,
            },
            mode: match r.recursion {
                RecursionConfig::SteadyState => IndexMode::SteadyState,
                RecursionConfig::Backward => IndexMode::Backward,
            },
            warm_start: r.warm_start,
        }
    }

    pub fn noise_spec(&self) -> NoiseSpec {
        NoiseSpec {
            process_std: self.noise.process_std,
            measure_std: self.noise.measure_std,
            process_enabled: self.noise.enabled,
            measure_enabled: self.noise.enabled,
        }
    }

    pub fn control_mode(&self) -> ControlMode {
        match self.controller.mode {
            ControlModeConfig::Mean => ControlMode::Mean,
            ControlModeConfig::Sample => ControlMode::Sample,
            ControlModeConfig::Off => ControlMode::Off,
        }
    }

    /// Assembles the closed-loop setup described by this scenario.
    pub fn closed_loop(&self) -> Result<ClosedLoop> {
        self.validate()?;
        let sys = self.physical_system()?;
        let gen = build_generators(&sys)?;
        let obs = self.observable()?;
        let initial = vectorize(&DensityMatrix::pure_level(sys.dim(), self.initial.level)?);
        let mut setup = ClosedLoop::new(
            gen,
            self.discretization.dt,
            obs.measurement_row(),
            initial,
            self.controller_config()?,
            self.riccati_options(),
            self.noise_spec(),
            self.seed,
        )?;
        setup.control_mode = self.control_mode();
        setup.renormalize_trace = self.noise.renormalize_trace;
        Ok(setup)
    }

    /// Serialises the scenario back to TOML.
    pub fn to_toml(&self) -> String {
        toml::to_string_pretty(self).expect("scenario serialises")
    }
}

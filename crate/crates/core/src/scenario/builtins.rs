//! Scenarios shipped with the crate.

use super::config::{parse_scenario, ScenarioConfig};
use crate::error::{Error, Result};

const BUILTINS: [(&str, &str); 4] = [
    ("spin-half", include_str!("../../scenarios/spin-half.toml")),
    ("spin-one-a", include_str!("../../scenarios/spin-one-a.toml")),
    ("spin-one-b", include_str!("../../scenarios/spin-one-b.toml")),
    ("morse-lih", include_str!("../../scenarios/morse-lih.toml")),
];

pub fn builtin_names() -> Vec<&'static str> {
    BUILTINS.iter().map(|(name, _)| *name).collect()
}

/// TOML source of a builtin scenario.
pub fn builtin_source(name: &str) -> Result<&'static str> {
    BUILTINS
        .iter()
        .find(|(n, _)| *n == name)
        .map(|(_, src)| *src)
        .ok_or_else(|| Error::UnknownScenario(name.to_string()))
}

pub fn builtin(name: &str) -> Result<ScenarioConfig> {
    parse_scenario(builtin_source(name)?)
}

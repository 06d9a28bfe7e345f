use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::assumptions::EconomicAssumptions;
use crate::error::{Result, SchemeError};
use crate::rules::SchemeRules;

const BUNDLED: &str = include_str!("../data/presets.toml");

/// Rule sets and calibrated default assumptions loaded from a presets file.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PresetRegistry {
    pub assumptions: EconomicAssumptions,
    #[serde(rename = "preset")]
    pub presets: Vec<SchemeRules>,
}

impl PresetRegistry {
    pub fn parse(text: &str) -> Result<Self> {
        let registry: PresetRegistry =
            toml::from_str(text).map_err(|e| SchemeError::PresetFile(e.to_string()))?;
        registry.assumptions.validate()?;
        for (i, rules) in registry.presets.iter().enumerate() {
            rules.validate()?;
            if registry.presets[..i].iter().any(|r| r.id == rules.id) {
                return Err(SchemeError::PresetFile(format!(
                    "duplicate preset id `{}`",
                    rules.id
                )));
            }
        }
        Ok(registry)
    }

    pub fn get(&self, id: &str) -> Result<&SchemeRules> {
        self.presets
            .iter()
            .find(|r| r.id == id)
            .ok_or_else(|| SchemeError::UnknownPreset(id.to_string()))
    }

    pub fn ids(&self) -> impl Iterator<Item = &str> {
        self.presets.iter().map(|r| r.id.as_str())
    }

    /// Assumptions from the file with a different mean CPI.
    pub fn assumptions_at(&self, cpi: f64) -> EconomicAssumptions {
        self.assumptions.with_cpi(cpi)
    }
}

/// Registry compiled into the library.
pub fn bundled() -> &'static PresetRegistry {
    static REGISTRY: OnceLock<PresetRegistry> = OnceLock::new();
    REGISTRY.get_or_init(|| PresetRegistry::parse(BUNDLED).expect("bundled presets are valid"))
}

pub fn bundled_source() -> &'static str {
    BUNDLED
}

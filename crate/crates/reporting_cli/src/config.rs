use std::fs::File;
use std::path::{Path, PathBuf};

use cohort::{bundled_heatmap, load_heatmap, HeatMap};
use projection::Interpolation;
use scheme_core::{bundled, DevaluationSource, EconomicAssumptions, SchemeRules, CPI_RANGE};

use crate::cli::{Format, ModelArgs};
use crate::error::{CliError, Result};

/// Validated settings for one run.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub rules_old: SchemeRules,
    pub rules_new: SchemeRules,
    pub cpis: Vec<f64>,
    pub heatmap: Option<PathBuf>,
    pub out: PathBuf,
    pub interpolation: Interpolation,
    pub modeller_rounding: bool,
    pub devaluation: DevaluationSource,
    pub annuity_factor: Option<f64>,
    pub format: Format,
}

pub fn check_cpi(cpi: f64) -> Result<f64> {
    let (lo, hi) = CPI_RANGE;
    if cpi.is_finite() && (lo..=hi).contains(&cpi) {
        Ok(cpi)
    } else {
        Err(CliError::usage(format!(
            "--cpi {cpi} is outside the modeller range [{lo}, {hi}]"
        )))
    }
}

pub fn lookup_rules(id: &str) -> Result<SchemeRules> {
    bundled().get(id).cloned().map_err(|_| {
        let known: Vec<&str> = bundled().ids().collect();
        CliError::usage(format!("unknown rule set `{id}`, expected one of {}", known.join(", ")))
    })
}

impl RunConfig {
    pub fn new(model: &ModelArgs, cpis: Vec<f64>, heatmap: Option<PathBuf>, out: PathBuf) -> Result<Self> {
        if cpis.is_empty() {
            return Err(CliError::usage("--cpi needs at least one value"));
        }
        for &c in &cpis {
            check_cpi(c)?;
        }
        let rules_old = lookup_rules(&model.rules.old)?;
        let mut rules_new = lookup_rules(&model.rules.new)?;
        if let Some(n) = model.delay_years {
            rules_new = rules_new.with_delay(n);
        }
        let config = Self {
            rules_old,
            rules_new,
            cpis,
            heatmap,
            out,
            interpolation: model.interp.into(),
            modeller_rounding: model.modeller_rounding,
            devaluation: model.devaluation,
            annuity_factor: model.annuity_factor,
            format: model.format,
        };
        for &c in &config.cpis {
            config
                .assumptions(c)
                .validate()
                .map_err(|e| CliError::usage(e.to_string()))?;
        }
        Ok(config)
    }

    pub fn assumptions(&self, cpi: f64) -> EconomicAssumptions {
        let mut a = bundled()
            .assumptions_at(cpi)
            .with_devaluation(self.devaluation.basis());
        if let Some(f) = self.annuity_factor {
            a.annuity_factor = f;
        }
        a
    }

    /// The heat map named on the command line, or the bundled one.
    pub fn load_heatmap(&self) -> Result<HeatMap> {
        match &self.heatmap {
            None => Ok(bundled_heatmap().clone()),
            Some(path) => read_heatmap(path),
        }
    }
}

pub fn read_heatmap(path: &Path) -> Result<HeatMap> {
    let file = File::open(path).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    load_heatmap(file).map_err(|source| CliError::Input {
        path: path.to_path_buf(),
        source,
    })
}

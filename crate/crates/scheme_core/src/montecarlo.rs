//! Simulated devaluation under a hard cap, used to check the closed-form model.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal};

use crate::error::{finite, Result, SchemeError};
use crate::rules::{capped_uplift, CapRule};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MonteCarloConfig {
    pub cap: f64,
    pub cpi_mean: f64,
    pub cpi_sigma: f64,
    pub years: u32,
    pub paths: u32,
    pub seed: u64,
}

/// Empirical annual devaluation from i.i.d. Normal yearly CPI.
///
/// Each path compounds `(1 + uplift) / (1 + cpi)` over `years`; the result is
/// `1 - mean_factor^(1/years)`. Deterministic for a given seed.
pub fn monte_carlo_devaluation(config: &MonteCarloConfig) -> Result<f64> {
    finite("cap", config.cap)?;
    finite("cpi_mean", config.cpi_mean)?;
    finite("cpi_sigma", config.cpi_sigma)?;
    if config.cpi_sigma < 0.0 {
        return Err(SchemeError::OutOfRange {
            field: "cpi_sigma",
            value: config.cpi_sigma,
            reason: "must be non-negative",
        });
    }
    if config.years == 0 || config.paths == 0 {
        return Err(SchemeError::OutOfRange {
            field: "years/paths",
            value: 0.0,
            reason: "must be at least 1",
        });
    }
    let rule = CapRule::hard(config.cap, 0);
    let normal = Normal::new(config.cpi_mean, config.cpi_sigma).map_err(|_| {
        SchemeError::OutOfRange {
            field: "cpi_sigma",
            value: config.cpi_sigma,
            reason: "invalid normal distribution",
        }
    })?;
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);

    let mut total = 0.0;
    for _ in 0..config.paths {
        let mut factor = 1.0;
        for _ in 0..config.years {
            // CPI below -100% has no meaning; truncate the far tail.
            let cpi = normal.sample(&mut rng).max(-0.99);
            factor *= (1.0 + capped_uplift(cpi, &rule)) / (1.0 + cpi);
        }
        total += factor;
    }
    let mean = total / f64::from(config.paths);
    Ok(1.0 - mean.powf(1.0 / f64::from(config.years)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg(cpi_mean: f64, cpi_sigma: f64, seed: u64) -> MonteCarloConfig {
        MonteCarloConfig {
            cap: 0.025,
            cpi_mean,
            cpi_sigma,
            years: 40,
            paths: 2000,
            seed,
        }
    }

    #[test]
    fn zero_sigma_cases() {
        assert!(monte_carlo_devaluation(&cfg(0.02, 0.0, 1)).unwrap().abs() < 1e-12);
        let d = monte_carlo_devaluation(&cfg(0.03, 0.0, 1)).unwrap();
        assert!((d - (1.0 - 1.025 / 1.03)).abs() < 1e-12);
    }

    #[test]
    fn deterministic_for_seed() {
        let a = monte_carlo_devaluation(&cfg(0.025, 0.01, 7)).unwrap();
        let b = monte_carlo_devaluation(&cfg(0.025, 0.01, 7)).unwrap();
        assert_eq!(a, b);
        let c = monte_carlo_devaluation(&cfg(0.025, 0.01, 8)).unwrap();
        assert_ne!(a, c);
    }

    #[test]
    fn rejects_empty_simulation() {
        let mut c = cfg(0.025, 0.01, 1);
        c.paths = 0;
        assert!(monte_carlo_devaluation(&c).is_err());
        c.paths = 10;
        c.cpi_sigma = -1.0;
        assert!(monte_carlo_devaluation(&c).is_err());
    }
}

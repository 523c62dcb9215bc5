//! Optional TOML overrides for prime lists and search bounds.

use std::collections::BTreeMap;
use std::path::Path;

use isogate::modcurve::{DEFAULT_HEIGHT_BOUND, DEFAULT_PRIME_COUNT};
use isogate::ratcurves::surjectivity::DEFAULT_SAMPLE_BOUND;
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum ConfigError {
    #[error("cannot read {path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("invalid config: {0}")]
    Parse(#[from] toml::de::Error),
    #[error("invalid config: {0}")]
    Invalid(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Config {
    /// Largest prime sampled by surjectivity certificates.
    pub sample_bound: u64,
    /// Height bound for rational point searches.
    pub height_bound: i64,
    /// Length of the default prime lists for torsion bounds.
    pub prime_count: usize,
    /// Highest generator level of the exhaustive subgroup enumeration.
    pub oracle_level: usize,
    /// Explicit prime lists per curve label, replacing the defaults.
    pub primes: BTreeMap<String, Vec<u64>>,
}

impl Default for Config {
    fn default() -> Self {
        Config {
            sample_bound: DEFAULT_SAMPLE_BOUND,
            height_bound: DEFAULT_HEIGHT_BOUND,
            prime_count: DEFAULT_PRIME_COUNT,
            oracle_level: 4,
            primes: BTreeMap::new(),
        }
    }
}

impl Config {
    pub fn from_toml(text: &str) -> Result<Config, ConfigError> {
        let c: Config = toml::from_str(text)?;
        if c.sample_bound < 5 {
            return Err(ConfigError::Invalid("sample_bound must be at least 5".into()));
        }
        if c.height_bound < 1 {
            return Err(ConfigError::Invalid("height_bound must be positive".into()));
        }
        if c.prime_count == 0 {
            return Err(ConfigError::Invalid("prime_count must be positive".into()));
        }
        if !(2..=6).contains(&c.oracle_level) {
            return Err(ConfigError::Invalid("oracle_level must be between 2 and 6".into()));
        }
        Ok(c)
    }

    pub fn load(path: &Path) -> Result<Config, ConfigError> {
        let text = std::fs::read_to_string(path)
            .map_err(|source| ConfigError::Io { path: path.display().to_string(), source })?;
        Config::from_toml(&text)
    }
}

use std::path::{Path, PathBuf};

use hardy::boundedness::Thresholds;
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum ConfigError {
    #[error("cannot read config {path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("malformed config: {0}")]
    Json(#[from] serde_json::Error),
    #[error("invalid config: {0}")]
    Invalid(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    #[default]
    Json,
    Csv,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct Tolerances {
    pub exact_rank: f64,
    pub spectral: f64,
    pub boundedness: Thresholds,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances {
            exact_rank: 1e-9,
            spectral: 1e-6,
            boundedness: Thresholds::default(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize, Default)]
#[serde(default)]
pub struct OutputConfig {
    pub path: Option<PathBuf>,
    pub format: OutputFormat,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct RunConfig {
    pub grid_size: usize,
    pub tolerances: Tolerances,
    pub seed: u64,
    pub output: OutputConfig,
    /// Wall-clock times make reports differ between runs, so they are off
    /// unless asked for.
    pub timings: bool,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            grid_size: 1 << 14,
            tolerances: Tolerances::default(),
            seed: 20240611,
            output: OutputConfig::default(),
            timings: false,
        }
    }
}

impl RunConfig {
    pub fn validate(&self) -> Result<(), ConfigError> {
        if !self.grid_size.is_power_of_two() || self.grid_size < 8 {
            return Err(ConfigError::Invalid(format!("grid_size {} is not a power of two >= 8", self.grid_size)));
        }
        let t = &self.tolerances;
        let b = &t.boundedness;
        let positive = [t.exact_rank, t.spectral, b.growth, b.plateau, b.limit_gap, b.strip_eps, b.inf_floor];
        if positive.iter().any(|v| !(*v > 0.0) || !v.is_finite()) {
            return Err(ConfigError::Invalid("tolerances must be positive and finite".into()));
        }
        Ok(())
    }

    pub fn from_json(text: &str) -> Result<Self, ConfigError> {
        let cfg: RunConfig = serde_json::from_str(text)?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn load(path: &Path) -> Result<Self, ConfigError> {
        let text = std::fs::read_to_string(path).map_err(|source| ConfigError::Io {
            path: path.to_path_buf(),
            source,
        })?;
        Self::from_json(&text)
    }
}

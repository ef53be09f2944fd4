//! Experiment configuration, read from TOML.

use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::acs::AcsParams;
use crate::error::{Error, Result};

/// One benchmark or ablation campaign: which instances, how many seeded
/// repeats, solver parameters, worker cap and output locations.
///
/// Run seeds are `params.seed + 0 .. params.seed + repeats - 1`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ExperimentConfig {
    pub instances: Vec<PathBuf>,
    #[serde(default = "default_repeats")]
    pub repeats: usize,
    /// Concurrent runs; 1 keeps per-run wall times undistorted.
    #[serde(default = "default_workers")]
    pub workers: usize,
    /// Defaults to the GTSP_OUT_DIR environment variable, then ".".
    #[serde(default)]
    pub output_dir: Option<PathBuf>,
    /// Write one per-run trace file next to the reports.
    #[serde(default)]
    pub write_traces: bool,
    /// Override the built-in best-known table.
    #[serde(default)]
    pub best_known: Option<PathBuf>,
    /// Override the built-in published-results table.
    #[serde(default)]
    pub reference: Option<PathBuf>,
    /// Include published reference columns in rendered reports.
    #[serde(default = "default_true")]
    pub include_reference: bool,
    #[serde(default)]
    pub params: AcsParams,
}

fn default_repeats() -> usize {
    10
}
fn default_workers() -> usize {
    1
}
fn default_true() -> bool {
    true
}

impl ExperimentConfig {
    pub fn from_toml(text: &str) -> Result<Self> {
        let config: ExperimentConfig =
            toml::from_str(text).map_err(|e| Error::Config(e.to_string()))?;
        if config.instances.is_empty() {
            return Err(Error::Config("no instances listed".into()));
        }
        if config.repeats == 0 {
            return Err(Error::Config("repeats must be at least 1".into()));
        }
        if config.workers == 0 {
            return Err(Error::Config("workers must be at least 1".into()));
        }
        config.params.validate()?;
        Ok(config)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)?;
        let mut config = Self::from_toml(&text)?;
        // Instance paths are relative to the config file.
        if let Some(dir) = path.parent() {
            for p in &mut config.instances {
                if p.is_relative() {
                    *p = dir.join(&*p);
                }
            }
            for p in [&mut config.best_known, &mut config.reference]
                .into_iter()
                .flatten()
            {
                if p.is_relative() {
                    *p = dir.join(&*p);
                }
            }
        }
        Ok(config)
    }

    /// Output directory resolution order: config, GTSP_OUT_DIR, current dir.
    pub fn resolve_output_dir(&self) -> PathBuf {
        if let Some(dir) = &self.output_dir {
            return dir.clone();
        }
        if let Ok(dir) = std::env::var("GTSP_OUT_DIR") {
            if !dir.is_empty() {
                return PathBuf::from(dir);
            }
        }
        PathBuf::from(".")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn minimal_config_gets_defaults() {
        let c = ExperimentConfig::from_toml("instances = [\"a.gtsp\"]\n").unwrap();
        assert_eq!(c.repeats, 10);
        assert_eq!(c.workers, 1);
        assert!(!c.write_traces);
        assert!(c.include_reference);
        assert_eq!(c.params, AcsParams::default());
    }

    #[test]
    fn nested_params_are_parsed() {
        let c = ExperimentConfig::from_toml(
            "instances = [\"a.gtsp\"]\nrepeats = 3\n[params]\nseed = 42\nls = \"3opt\"\n",
        )
        .unwrap();
        assert_eq!(c.repeats, 3);
        assert_eq!(c.params.seed, 42);
    }

    #[test]
    fn empty_or_invalid_configs_are_rejected() {
        assert!(ExperimentConfig::from_toml("instances = []\n").is_err());
        assert!(ExperimentConfig::from_toml("instances = [\"a\"]\nrepeats = 0\n").is_err());
        assert!(
            ExperimentConfig::from_toml("instances = [\"a\"]\n[params]\nrho = 7.0\n").is_err()
        );
    }
}

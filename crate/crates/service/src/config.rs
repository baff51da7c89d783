use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

#[derive(Debug, thiserror::Error)]
pub enum ConfigError {
    #[error("cannot read {path}: {source}")]
    Read {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("bad config: {0}")]
    Parse(#[from] toml::de::Error),
    #[error("bad value for {var}: {value:?}")]
    Env { var: &'static str, value: String },
}

/// Service settings. Sources in increasing precedence: built-in defaults,
/// a TOML file, `HORSESHOE_*` environment variables, command-line flags.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Config {
    pub host: String,
    pub port: u16,
    /// Threads in the shared scan pool; 0 means one per core.
    pub workers: usize,
    /// Scan jobs allowed to run at once; the rest wait as `queued`.
    pub concurrent_jobs: usize,
    pub cache_dir: Option<PathBuf>,
    pub cache_max_entries: usize,
    pub cache_max_age_secs: u64,
    /// Largest period continued by the classifier.
    pub n_max: usize,
    /// Period used by `loop` when a request names none.
    pub loop_n: usize,
    /// Rows per band of a scan job.
    pub band_rows: usize,
}

impl Default for Config {
    fn default() -> Self {
        Self {
            host: "127.0.0.1".into(),
            port: 8787,
            workers: 0,
            concurrent_jobs: 1,
            cache_dir: None,
            cache_max_entries: 256,
            cache_max_age_secs: 7 * 24 * 3600,
            n_max: 5,
            loop_n: 6,
            band_rows: 8,
        }
    }
}

impl Config {
    pub fn from_toml(text: &str) -> Result<Self, ConfigError> {
        Ok(toml::from_str(text)?)
    }

    /// Defaults, then `path` if given, then the process environment.
    pub fn load(path: Option<&Path>) -> Result<Self, ConfigError> {
        let mut cfg = match path {
            Some(p) => {
                let text = std::fs::read_to_string(p).map_err(|source| ConfigError::Read {
                    path: p.to_path_buf(),
                    source,
                })?;
                Self::from_toml(&text)?
            }
            None => Self::default(),
        };
        cfg.apply_env(|k| std::env::var(k).ok())?;
        Ok(cfg)
    }

    pub fn apply_env(&mut self, lookup: impl Fn(&str) -> Option<String>) -> Result<(), ConfigError> {
        fn num<T: std::str::FromStr>(var: &'static str, value: String) -> Result<T, ConfigError> {
            value.trim().parse().map_err(|_| ConfigError::Env { var, value })
        }
        if let Some(v) = lookup("HORSESHOE_HOST") {
            self.host = v;
        }
        if let Some(v) = lookup("HORSESHOE_PORT") {
            self.port = num("HORSESHOE_PORT", v)?;
        }
        if let Some(v) = lookup("HORSESHOE_WORKERS") {
            self.workers = num("HORSESHOE_WORKERS", v)?;
        }
        if let Some(v) = lookup("HORSESHOE_CACHE_DIR") {
            self.cache_dir = (!v.is_empty()).then(|| PathBuf::from(v));
        }
        if let Some(v) = lookup("HORSESHOE_N_MAX") {
            self.n_max = num("HORSESHOE_N_MAX", v)?;
        }
        if let Some(v) = lookup("HORSESHOE_LOOP_N") {
            self.loop_n = num("HORSESHOE_LOOP_N", v)?;
        }
        Ok(())
    }
}

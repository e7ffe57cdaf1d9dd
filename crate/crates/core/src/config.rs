//! TOML configuration with environment overrides.

use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::exporters::DEFAULT_STAGES;
use crate::format_detector::FormatSignature;
use crate::generic_reflow::ReflowConfig;
use crate::lexicon::{HeadingLexicon, LexiconError};
use crate::ranking::Aggregation;
use crate::scoring::ScorerConfig;

pub const ENV_STORE_DIR: &str = "RESUME_STORE_DIR";
pub const ENV_BIND_ADDR: &str = "RESUME_BIND_ADDR";

#[derive(Debug, Error)]
pub enum ConfigError {
    #[error("reading config {path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error("config {path}: {source}")]
    Toml { path: PathBuf, source: toml::de::Error },
    #[error(transparent)]
    Lexicon(#[from] LexiconError),
    #[error("invalid config: {0}")]
    Invalid(String),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct FormatConfig {
    pub min_heading_repeats: usize,
    pub max_heading_repeats: usize,
    pub min_heading_hits: usize,
    /// Heading lexicon file; the embedded one when absent.
    pub lexicon: Option<PathBuf>,
}

impl Default for FormatConfig {
    fn default() -> Self {
        let sig = FormatSignature::default();
        FormatConfig {
            min_heading_repeats: sig.min_heading_repeats,
            max_heading_repeats: sig.max_heading_repeats,
            min_heading_hits: sig.min_heading_hits,
            lexicon: None,
        }
    }
}

impl FormatConfig {
    pub fn signature(&self) -> Result<FormatSignature, ConfigError> {
        let lexicon = match &self.lexicon {
            Some(path) => HeadingLexicon::load(path)?,
            None => HeadingLexicon::default(),
        };
        Ok(FormatSignature {
            min_heading_repeats: self.min_heading_repeats,
            max_heading_repeats: self.max_heading_repeats,
            min_heading_hits: self.min_heading_hits,
            lexicon,
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ClassifierKind {
    #[default]
    Centroid,
    Remote,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ClassifierConfig {
    pub kind: ClassifierKind,
    /// Saved centroid model; the built-in fixture-trained model when absent.
    pub model: Option<PathBuf>,
    pub remote_url: Option<String>,
    pub timeout_ms: u64,
}

impl Default for ClassifierConfig {
    fn default() -> Self {
        ClassifierConfig { kind: ClassifierKind::Centroid, model: None, remote_url: None, timeout_ms: 5_000 }
    }
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RankingConfig {
    pub aggregation: Aggregation,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ServiceConfig {
    pub bind_addr: String,
    pub store_dir: PathBuf,
    pub max_file_bytes: usize,
    pub stages: Vec<String>,
}

impl Default for ServiceConfig {
    fn default() -> Self {
        ServiceConfig {
            bind_addr: "127.0.0.1:8080".into(),
            store_dir: PathBuf::from("resumekit-store"),
            max_file_bytes: 10 * 1024 * 1024,
            stages: DEFAULT_STAGES.iter().map(|s| s.to_string()).collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct AppConfig {
    pub format: FormatConfig,
    pub reflow: ReflowConfig,
    pub classifier: ClassifierConfig,
    pub scoring: ScorerConfig,
    pub ranking: RankingConfig,
    pub service: ServiceConfig,
}

impl AppConfig {
    pub fn load(path: &Path) -> Result<Self, ConfigError> {
        let text =
            std::fs::read_to_string(path).map_err(|source| ConfigError::Io { path: path.to_path_buf(), source })?;
        let cfg: AppConfig =
            toml::from_str(&text).map_err(|source| ConfigError::Toml { path: path.to_path_buf(), source })?;
        cfg.validate()?;
        Ok(cfg)
    }

    /// File config (or defaults) with environment overrides applied.
    pub fn resolve(path: Option<&Path>) -> Result<Self, ConfigError> {
        let cfg = match path {
            Some(p) => AppConfig::load(p)?,
            None => AppConfig::default(),
        };
        let cfg = cfg.with_env();
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn with_env(mut self) -> Self {
        self.scoring = self.scoring.with_env();
        if let Ok(dir) = std::env::var(ENV_STORE_DIR) {
            if !dir.trim().is_empty() {
                self.service.store_dir = PathBuf::from(dir);
            }
        }
        if let Ok(addr) = std::env::var(ENV_BIND_ADDR) {
            if !addr.trim().is_empty() {
                self.service.bind_addr = addr.trim().to_string();
            }
        }
        self
    }

    pub fn validate(&self) -> Result<(), ConfigError> {
        self.scoring.validate().map_err(|e| ConfigError::Invalid(e.to_string()))?;
        if self.service.stages.is_empty() {
            return Err(ConfigError::Invalid("service.stages must not be empty".into()));
        }
        if self.classifier.kind == ClassifierKind::Remote && self.classifier.remote_url.is_none() {
            return Err(ConfigError::Invalid("remote classifier requires classifier.remote_url".into()));
        }
        if self.format.min_heading_repeats > self.format.max_heading_repeats {
            return Err(ConfigError::Invalid("format.min_heading_repeats exceeds max_heading_repeats".into()));
        }
        Ok(())
    }
}

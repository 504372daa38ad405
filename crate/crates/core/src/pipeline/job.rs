use std::path::Path;

use serde::{Deserialize, Serialize};

use super::PromptTemplate;
use crate::text::Source;
use crate::{Error, Result};

/// Everything needed to generate the essays of one model for one prompt.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GenerationJob {
    pub endpoint_url: String,
    pub model_name: String,
    #[serde(default = "default_temperatures")]
    pub temperatures: Vec<f64>,
    #[serde(default = "default_per_temperature")]
    pub essays_per_temperature: usize,
    pub prompt: PromptTemplate,
    pub prompt_id: String,
    #[serde(default = "default_source")]
    pub source: Source,
    #[serde(default = "default_retries")]
    pub max_retries: u32,
    #[serde(default = "default_timeout")]
    pub timeout_secs: u64,
    #[serde(default = "default_concurrency")]
    pub concurrency: usize,
    /// Delay before the first retry; doubled on each further attempt.
    #[serde(default = "default_backoff")]
    pub backoff_ms: u64,
    /// Opening sentences for continuation-style models. When non-empty, one is
    /// sent as the prompt for each essay and removed from the output.
    #[serde(default)]
    pub continuation_prefixes: Vec<String>,
    #[serde(default = "default_seed")]
    pub seed: u64,
}

fn default_temperatures() -> Vec<f64> {
    vec![0.2, 0.35, 0.5, 0.65, 0.8]
}
fn default_per_temperature() -> usize {
    6
}
fn default_source() -> Source {
    Source::Other
}
fn default_retries() -> u32 {
    3
}
fn default_timeout() -> u64 {
    120
}
fn default_concurrency() -> usize {
    4
}
fn default_backoff() -> u64 {
    500
}
fn default_seed() -> u64 {
    42
}

impl GenerationJob {
    pub fn new(endpoint_url: impl Into<String>, model_name: impl Into<String>, prompt_id: impl Into<String>, prompt: PromptTemplate) -> Self {
        GenerationJob {
            endpoint_url: endpoint_url.into(),
            model_name: model_name.into(),
            temperatures: default_temperatures(),
            essays_per_temperature: default_per_temperature(),
            prompt,
            prompt_id: prompt_id.into(),
            source: default_source(),
            max_retries: default_retries(),
            timeout_secs: default_timeout(),
            concurrency: default_concurrency(),
            backoff_ms: default_backoff(),
            continuation_prefixes: Vec::new(),
            seed: default_seed(),
        }
    }

    /// Reads a JSON (`.json`) or TOML (any other extension) job file.
    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        let job: GenerationJob = if path.extension().is_some_and(|e| e == "json") {
            serde_json::from_str(&text).map_err(|e| Error::InvalidConfig(e.to_string()))?
        } else {
            toml::from_str(&text).map_err(|e| Error::InvalidConfig(e.to_string()))?
        };
        job.validate()?;
        Ok(job)
    }

    pub fn validate(&self) -> Result<()> {
        if let Some(t) = self.temperatures.iter().find(|t| !(0.0..=2.0).contains(*t)) {
            return Err(Error::InvalidConfig(format!("temperature {t} outside [0, 2]")));
        }
        if self.temperatures.is_empty() {
            return Err(Error::InvalidConfig("no temperatures".into()));
        }
        if self.essays_per_temperature == 0 {
            return Err(Error::InvalidConfig("essays_per_temperature must be at least 1".into()));
        }
        if self.concurrency == 0 {
            return Err(Error::InvalidConfig("concurrency must be at least 1".into()));
        }
        if self.model_name.is_empty() || self.endpoint_url.is_empty() {
            return Err(Error::InvalidConfig("endpoint_url and model_name are required".into()));
        }
        Ok(())
    }
}

use std::time::Duration;

use serde_json::{json, Value};

use crate::{Error, Result};

/// Environment variable holding the bearer token for the endpoint.
pub const API_KEY_ENV: &str = "ESSAYLENS_API_KEY";

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ClientError {
    /// Credentials rejected; retrying cannot help.
    Auth(u16),
    /// Connection failure, timeout, rate limit or server error.
    Transient(String),
    /// Any other failure for this request.
    Permanent(String),
}

impl std::fmt::Display for ClientError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ClientError::Auth(code) => write!(f, "authentication failed (HTTP {code})"),
            ClientError::Transient(m) | ClientError::Permanent(m) => f.write_str(m),
        }
    }
}

/// A chat-completion backend.
pub trait CompletionClient: Send + Sync {
    fn complete(&self, model: &str, temperature: f64, prompt: &str) -> std::result::Result<String, ClientError>;
}

/// Client for OpenAI-compatible `chat/completions` endpoints.
#[derive(Debug, Clone)]
pub struct HttpClient {
    url: String,
    api_key: Option<String>,
    http: reqwest::blocking::Client,
}

impl HttpClient {
    /// `endpoint` is the API base (e.g. `https://host/v1`); the key is read
    /// from [`API_KEY_ENV`].
    pub fn new(endpoint: &str, timeout: Duration) -> Result<Self> {
        Self::with_key(endpoint, timeout, std::env::var(API_KEY_ENV).ok())
    }

    pub fn with_key(endpoint: &str, timeout: Duration, api_key: Option<String>) -> Result<Self> {
        let base = endpoint.trim_end_matches('/');
        let url = if base.ends_with("/chat/completions") {
            base.to_string()
        } else {
            format!("{base}/chat/completions")
        };
        let http = reqwest::blocking::Client::builder()
            .timeout(timeout)
            .build()
            .map_err(|e| Error::InvalidConfig(format!("http client: {e}")))?;
        Ok(HttpClient { url, api_key, http })
    }
}

fn extract_content(body: &Value) -> Option<String> {
    let choice = body.get("choices")?.get(0)?;
    choice
        .get("message")
        .and_then(|m| m.get("content"))
        .or_else(|| choice.get("text"))
        .and_then(Value::as_str)
        .map(str::to_string)
}

impl CompletionClient for HttpClient {
    fn complete(&self, model: &str, temperature: f64, prompt: &str) -> std::result::Result<String, ClientError> {
        let body = json!({
            "model": model,
            "temperature": temperature,
            "messages": [{"role": "user", "content": prompt}],
        });
        let mut req = self.http.post(&self.url).json(&body);
        if let Some(key) = &self.api_key {
            req = req.bearer_auth(key);
        }
        let resp = req.send().map_err(|e| ClientError::Transient(e.to_string()))?;
        let status = resp.status().as_u16();
        match status {
            401 | 403 => return Err(ClientError::Auth(status)),
            429 | 500..=599 => return Err(ClientError::Transient(format!("HTTP {status}"))),
            200..=299 => {}
            _ => return Err(ClientError::Permanent(format!("HTTP {status}"))),
        }
        let value: Value = resp.json().map_err(|e| ClientError::Permanent(format!("bad response body: {e}")))?;
        extract_content(&value).ok_or_else(|| ClientError::Permanent("response has no completion text".into()))
    }
}

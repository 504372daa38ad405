use serde::{Deserialize, Serialize};

use crate::pipeline::{ClientError, CompletionClient};
use crate::text::Author;
use crate::{Error, Result};

pub const DETECTION_QUESTION: &str =
    "Question: Is the following content written by human or machine? Please reply human or machine.";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum LlmLabel {
    Human,
    Machine,
    Abstain,
}

impl LlmLabel {
    pub fn as_str(self) -> &'static str {
        match self {
            LlmLabel::Human => "HUMAN",
            LlmLabel::Machine => "MACHINE",
            LlmLabel::Abstain => "ABSTAIN",
        }
    }

    pub fn author(self) -> Option<Author> {
        match self {
            LlmLabel::Human => Some(Author::Human),
            LlmLabel::Machine => Some(Author::Machine),
            LlmLabel::Abstain => None,
        }
    }
}

fn block(essay: &str, answer: Option<&str>) -> String {
    match answer {
        Some(a) => format!("{DETECTION_QUESTION}\nEssay: {essay}\nAnswer: {a}"),
        None => format!("{DETECTION_QUESTION}\nEssay: {essay}\nAnswer:"),
    }
}

/// Query prompt preceded by `shots` (human, machine) exemplar pairs.
pub fn build_detection_prompt(essay: &str, shots: usize, exemplars: &[(String, String)]) -> Result<String> {
    if shots > 2 {
        return Err(Error::InvalidConfig(format!("shots must be 0, 1 or 2, got {shots}")));
    }
    if exemplars.len() < shots {
        return Err(Error::InvalidConfig(format!("{shots}-shot prompt needs {shots} exemplar pairs")));
    }
    let mut blocks = Vec::with_capacity(2 * shots + 1);
    for (human, machine) in &exemplars[..shots] {
        blocks.push(block(human, Some("Human")));
        blocks.push(block(machine, Some("Machine")));
    }
    blocks.push(block(essay, None));
    Ok(blocks.join("\n"))
}

/// First case-insensitive occurrence of "human" or "machine" wins.
pub fn parse_detection(response: &str) -> LlmLabel {
    let lower = response.to_lowercase();
    match (lower.find("human"), lower.find("machine")) {
        (Some(h), Some(m)) if m < h => LlmLabel::Machine,
        (Some(_), _) => LlmLabel::Human,
        (None, Some(_)) => LlmLabel::Machine,
        (None, None) => LlmLabel::Abstain,
    }
}

pub fn llm_detect(
    client: &dyn CompletionClient,
    model: &str,
    essay: &str,
    shots: usize,
    exemplars: &[(String, String)],
    max_retries: usize,
) -> Result<LlmLabel> {
    let prompt = build_detection_prompt(essay, shots, exemplars)?;
    let mut attempt = 0;
    loop {
        match client.complete(model, 0.0, &prompt) {
            Ok(text) => return Ok(parse_detection(&text)),
            Err(ClientError::Auth(code)) => return Err(Error::AuthFailed(code)),
            Err(ClientError::Transient(m)) if attempt >= max_retries => return Err(Error::EndpointUnreachable(m)),
            Err(ClientError::Transient(_)) => attempt += 1,
            Err(ClientError::Permanent(m)) => {
                log::warn!("detection request failed: {m}");
                return Ok(LlmLabel::Abstain);
            }
        }
    }
}

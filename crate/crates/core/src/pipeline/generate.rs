use std::collections::HashSet;
use std::sync::atomic::{AtomicBool, AtomicUsize, Ordering};
use std::sync::Mutex;
use std::time::Duration;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use super::{render_prompt, ClientError, CompletionClient, GenerationJob};
use crate::text::Document;
use crate::{Error, Result};

const MAX_BACKOFF_MS: u64 = 30_000;

/// Stable document id for one (model, prompt, temperature, index) slot, so
/// that re-running a job can skip essays already on disk.
pub fn slot_id(model: &str, prompt_id: &str, temperature: f64, k: usize) -> String {
    let mut h = Sha256::new();
    h.update(format!("{model}\0{prompt_id}\0{temperature}\0{k}").as_bytes());
    let digest = hex::encode(h.finalize());
    format!("{model}-{prompt_id}-{}", &digest[..12])
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SlotFailure {
    pub id: String,
    pub temperature: String,
    pub error: String,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct GenerationOutcome {
    pub documents: Vec<Document>,
    pub failures: Vec<SlotFailure>,
    /// Slots whose id was already present.
    pub skipped: usize,
}

struct Slot {
    id: String,
    temperature: f64,
    prompt: String,
    prefix: Option<String>,
}

enum SlotResult {
    Done(Document),
    Failed(SlotFailure, bool),
}

fn call_with_retries(
    job: &GenerationJob,
    client: &dyn CompletionClient,
    slot: &Slot,
    abort: &AtomicBool,
) -> std::result::Result<String, ClientError> {
    let mut attempt = 0;
    loop {
        match client.complete(&job.model_name, slot.temperature, &slot.prompt) {
            Err(ClientError::Transient(msg)) if attempt < job.max_retries => {
                if abort.load(Ordering::Relaxed) {
                    return Err(ClientError::Transient(msg));
                }
                let delay = job.backoff_ms.saturating_mul(1 << attempt.min(20)).min(MAX_BACKOFF_MS);
                log::debug!("{}: {msg}; retrying in {delay} ms", slot.id);
                std::thread::sleep(Duration::from_millis(delay));
                attempt += 1;
            }
            other => return other,
        }
    }
}

/// Requests `essays_per_temperature` essays at each temperature, at most
/// `concurrency` at a time. Transient failures are retried with exponential
/// backoff; a slot that still fails is reported and the job carries on.
/// Rejected credentials abort the whole job.
pub fn generate(job: &GenerationJob, client: &dyn CompletionClient, existing: &HashSet<String>) -> Result<GenerationOutcome> {
    job.validate()?;
    let prompt = render_prompt(&job.prompt)?;
    let mut rng = ChaCha8Rng::seed_from_u64(job.seed);
    let mut slots = Vec::new();
    let mut skipped = 0;
    for &t in &job.temperatures {
        for k in 0..job.essays_per_temperature {
            let prefix = if job.continuation_prefixes.is_empty() {
                None
            } else {
                Some(job.continuation_prefixes[rng.gen_range(0..job.continuation_prefixes.len())].clone())
            };
            let id = slot_id(&job.model_name, &job.prompt_id, t, k);
            if existing.contains(&id) {
                skipped += 1;
                continue;
            }
            let prompt = prefix.clone().unwrap_or_else(|| prompt.clone());
            slots.push(Slot { id, temperature: t, prompt, prefix });
        }
    }

    let next = AtomicUsize::new(0);
    let abort = AtomicBool::new(false);
    let auth = Mutex::new(None);
    let results: Mutex<Vec<(usize, SlotResult)>> = Mutex::new(Vec::new());
    std::thread::scope(|scope| {
        for _ in 0..job.concurrency.min(slots.len()).max(1) {
            scope.spawn(|| loop {
                if abort.load(Ordering::Relaxed) {
                    break;
                }
                let i = next.fetch_add(1, Ordering::SeqCst);
                let Some(slot) = slots.get(i) else { break };
                let outcome = match call_with_retries(job, client, slot, &abort) {
                    Ok(text) => {
                        let text = match &slot.prefix {
                            Some(p) => text.strip_prefix(p.as_str()).unwrap_or(&text).trim_start().to_string(),
                            None => text,
                        };
                        SlotResult::Done(Document::machine(&slot.id, job.source, &job.model_name, &job.prompt_id, text))
                    }
                    Err(ClientError::Auth(code)) => {
                        abort.store(true, Ordering::Relaxed);
                        *auth.lock().unwrap() = Some(code);
                        break;
                    }
                    Err(e) => {
                        let transient = matches!(e, ClientError::Transient(_));
                        let failure = SlotFailure { id: slot.id.clone(), temperature: slot.temperature.to_string(), error: e.to_string() };
                        SlotResult::Failed(failure, transient)
                    }
                };
                results.lock().unwrap().push((i, outcome));
            });
        }
    });

    if let Some(code) = auth.into_inner().unwrap() {
        return Err(Error::AuthFailed(code));
    }
    let mut results = results.into_inner().unwrap();
    results.sort_by_key(|(i, _)| *i);
    let mut outcome = GenerationOutcome { skipped, ..Default::default() };
    let mut unreachable = 0;
    for (_, r) in results {
        match r {
            SlotResult::Done(d) => outcome.documents.push(d),
            SlotResult::Failed(f, transient) => {
                unreachable += usize::from(transient);
                outcome.failures.push(f);
            }
        }
    }
    if !slots.is_empty() && unreachable == slots.len() {
        let last = outcome.failures.last().map(|f| f.error.clone()).unwrap_or_default();
        return Err(Error::EndpointUnreachable(format!("{} after {} retries", last, job.max_retries)));
    }
    Ok(outcome)
}

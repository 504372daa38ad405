use std::net::SocketAddr;
use std::sync::atomic::{AtomicBool, AtomicUsize, Ordering};
use std::sync::Arc;
use std::thread::JoinHandle;
use std::time::Duration;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};
use sha2::{Digest, Sha256};
use tiny_http::{Header, Response, Server};

use crate::lexmetrics::FrequencyList;
use crate::{Error, Result};

/// Behaviour of the local stand-in endpoint.
#[derive(Debug, Clone, PartialEq)]
pub enum MockMode {
    /// Every request gets the same completion.
    Fixed(String),
    /// Each request gets a different pseudo-essay; detection prompts get a
    /// `human`/`machine` answer derived from the prompt text.
    Varied { seed: u64 },
    /// Every request fails with this HTTP status.
    Status(u16),
    /// The first `failures` requests get HTTP 503, later ones behave like `Varied`.
    Flaky { failures: usize, seed: u64 },
}

/// A minimal OpenAI-compatible `chat/completions` server on localhost,
/// used by tests and for dry runs. Stops when dropped.
pub struct MockServer {
    addr: SocketAddr,
    requests: Arc<AtomicUsize>,
    stop: Arc<AtomicBool>,
    handle: Option<JoinHandle<()>>,
}

impl MockServer {
    pub fn start(mode: MockMode) -> Result<Self> {
        Self::start_on("127.0.0.1:0", mode)
    }

    pub fn start_on(addr: &str, mode: MockMode) -> Result<Self> {
        let server = Server::http(addr).map_err(|e| Error::EndpointUnreachable(format!("cannot bind {addr}: {e}")))?;
        let addr = server
            .server_addr()
            .to_ip()
            .ok_or_else(|| Error::EndpointUnreachable("mock server has no IP address".into()))?;
        let requests = Arc::new(AtomicUsize::new(0));
        let stop = Arc::new(AtomicBool::new(false));
        let (r, s) = (requests.clone(), stop.clone());
        let handle = std::thread::spawn(move || {
            while !s.load(Ordering::Relaxed) {
                match server.recv_timeout(Duration::from_millis(50)) {
                    Ok(Some(req)) => {
                        let n = r.fetch_add(1, Ordering::SeqCst);
                        respond(req, &mode, n);
                    }
                    Ok(None) => {}
                    Err(_) => break,
                }
            }
        });
        Ok(MockServer { addr, requests, stop, handle: Some(handle) })
    }

    /// API base URL, e.g. `http://127.0.0.1:PORT/v1`.
    pub fn url(&self) -> String {
        format!("http://{}/v1", self.addr)
    }

    pub fn request_count(&self) -> usize {
        self.requests.load(Ordering::SeqCst)
    }

    /// Blocks until the server thread exits.
    pub fn wait(mut self) {
        if let Some(h) = self.handle.take() {
            let _ = h.join();
        }
    }
}

impl Drop for MockServer {
    fn drop(&mut self) {
        self.stop.store(true, Ordering::Relaxed);
        if let Some(h) = self.handle.take() {
            let _ = h.join();
        }
    }
}

fn respond(mut req: tiny_http::Request, mode: &MockMode, n: usize) {
    let mut body = String::new();
    let _ = req.as_reader().read_to_string(&mut body);
    let prompt = serde_json::from_str::<Value>(&body)
        .ok()
        .and_then(|v| v["messages"].as_array()?.last()?["content"].as_str().map(str::to_string))
        .unwrap_or_default();
    let (status, text) = match mode {
        MockMode::Fixed(t) => (200, t.clone()),
        MockMode::Status(code) => (*code, String::new()),
        MockMode::Flaky { failures, .. } if n < *failures => (503, String::new()),
        MockMode::Varied { seed } | MockMode::Flaky { seed, .. } => (200, varied_reply(&prompt, *seed, n)),
    };
    let payload = if status == 200 {
        json!({"choices": [{"index": 0, "message": {"role": "assistant", "content": text}, "finish_reason": "stop"}]})
    } else {
        json!({"error": {"message": format!("mock status {status}")}})
    };
    let header = Header::from_bytes("Content-Type", "application/json").expect("static header");
    let _ = req.respond(Response::from_string(payload.to_string()).with_status_code(status).with_header(header));
}

fn varied_reply(prompt: &str, seed: u64, n: usize) -> String {
    if prompt.contains("Please reply human or machine") {
        let digest = Sha256::digest(prompt.as_bytes());
        return if digest[0] % 2 == 0 { "Human".into() } else { "Machine".into() };
    }
    pseudo_essay(seed.wrapping_add(n as u64))
}

/// Four paragraphs of random common words, about 240 words in total.
fn pseudo_essay(seed: u64) -> String {
    let words = FrequencyList::builtin().ranked_words();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut paragraphs = Vec::new();
    for _ in 0..4 {
        let mut sentences = Vec::new();
        for _ in 0..5 {
            let len = rng.gen_range(10..15);
            let mut picked: Vec<&str> = words.choose_multiple(&mut rng, len).map(String::as_str).collect();
            let first = picked[0];
            let capital = first[..1].to_uppercase() + &first[1..];
            picked[0] = &capital;
            sentences.push(format!("{}.", picked.join(" ")));
        }
        paragraphs.push(sentences.join(" "));
    }
    paragraphs.join("\n\n")
}

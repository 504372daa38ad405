use std::cmp::Ordering;
use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::text::{Author, Document, Sentence};

/// Denominator used when comparing the word sets of two sentences.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Similarity {
    /// Shared words over the larger set.
    #[default]
    Max,
    /// Shared words over the smaller set.
    Min,
    /// Shared words over the union.
    Jaccard,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct FilterConfig {
    pub min_words: usize,
    /// Minimum length for models whose name starts with `gpt2`.
    pub gpt2_min_words: usize,
    pub similarity: Similarity,
    pub similarity_threshold: f64,
    pub repetition_threshold: f64,
    pub overlap_threshold: f64,
}

impl Default for FilterConfig {
    fn default() -> Self {
        FilterConfig {
            min_words: 100,
            gpt2_min_words: 50,
            similarity: Similarity::Max,
            similarity_threshold: 0.8,
            repetition_threshold: 0.4,
            overlap_threshold: 0.4,
        }
    }
}

impl FilterConfig {
    pub fn min_words_for(&self, model: Option<&str>) -> usize {
        match model {
            Some(m) if m.to_lowercase().starts_with("gpt2") => self.gpt2_min_words,
            _ => self.min_words,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum FilterReason {
    Ok,
    Short,
    Repetitive,
    Overlapped,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct FilterVerdict {
    pub kept: bool,
    pub reason: FilterReason,
}

impl FilterVerdict {
    fn of(reason: FilterReason) -> Self {
        FilterVerdict { kept: reason == FilterReason::Ok, reason }
    }
}

/// Sentences as sorted, deduplicated word ids, so that overlap checks are
/// linear merges.
#[derive(Default)]
struct Interner(HashMap<String, u32>);

impl Interner {
    fn sentence(&mut self, s: &Sentence) -> Vec<u32> {
        let mut ids: Vec<u32> = s
            .words()
            .map(|t| {
                let next = self.0.len() as u32;
                *self.0.entry(t.lower.clone()).or_insert(next)
            })
            .collect();
        ids.sort_unstable();
        ids.dedup();
        ids
    }

    fn document(&mut self, doc: &Document) -> Vec<Vec<u32>> {
        doc.sentences().map(|s| self.sentence(s)).collect()
    }
}

fn shared(a: &[u32], b: &[u32]) -> usize {
    let (mut i, mut j, mut n) = (0, 0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            Ordering::Less => i += 1,
            Ordering::Greater => j += 1,
            Ordering::Equal => {
                n += 1;
                i += 1;
                j += 1;
            }
        }
    }
    n
}

fn similar_sets(a: &[u32], b: &[u32], measure: Similarity, threshold: f64) -> bool {
    if a.is_empty() || b.is_empty() {
        return false;
    }
    let shared = shared(a, b);
    let denom = match measure {
        Similarity::Max => a.len().max(b.len()),
        Similarity::Min => a.len().min(b.len()),
        Similarity::Jaccard => a.len() + b.len() - shared,
    };
    shared as f64 >= threshold * denom as f64
}

/// At least 80% of the words of the larger sentence also occur in the other.
pub fn sentence_similar(s1: &Sentence, s2: &Sentence) -> bool {
    let cfg = FilterConfig::default();
    sentence_similar_with(s1, s2, cfg.similarity, cfg.similarity_threshold)
}

pub fn sentence_similar_with(s1: &Sentence, s2: &Sentence, measure: Similarity, threshold: f64) -> bool {
    let mut ids = Interner::default();
    similar_sets(&ids.sentence(s1), &ids.sentence(s2), measure, threshold)
}

fn repetitive(sents: &[Vec<u32>], cfg: &FilterConfig) -> bool {
    if sents.is_empty() {
        return false;
    }
    let involved = (0..sents.len())
        .filter(|&i| {
            (0..sents.len()).any(|j| j != i && similar_sets(&sents[i], &sents[j], cfg.similarity, cfg.similarity_threshold))
        })
        .count();
    involved as f64 >= cfg.repetition_threshold * sents.len() as f64
}

fn overlapped(a: &[Vec<u32>], b: &[Vec<u32>], cfg: &FilterConfig) -> bool {
    let total = a.len() + b.len();
    if total == 0 {
        return false;
    }
    let hits = |x: &[Vec<u32>], y: &[Vec<u32>]| {
        x.iter()
            .filter(|s| y.iter().any(|t| similar_sets(s, t, cfg.similarity, cfg.similarity_threshold)))
            .count()
    };
    (hits(a, b) + hits(b, a)) as f64 >= cfg.overlap_threshold * total as f64
}

/// A kept essay as seen by later overlap checks.
struct Pooled<'a> {
    model: Option<&'a str>,
    prompt_id: &'a str,
    sentences: &'a [Vec<u32>],
}

fn verdict(doc: &Document, mine: &[Vec<u32>], pool: &[Pooled<'_>], cfg: &FilterConfig) -> FilterVerdict {
    if doc.word_count() < cfg.min_words_for(doc.model_name.as_deref()) {
        return FilterVerdict::of(FilterReason::Short);
    }
    if repetitive(mine, cfg) {
        return FilterVerdict::of(FilterReason::Repetitive);
    }
    let clash = pool
        .iter()
        .filter(|k| k.model == doc.model_name.as_deref() && k.prompt_id == doc.prompt_id)
        .any(|k| overlapped(mine, k.sentences, cfg));
    if clash {
        return FilterVerdict::of(FilterReason::Overlapped);
    }
    FilterVerdict::of(FilterReason::Ok)
}

/// Applies the length, self-repetition and overlap checks in that order.
/// Overlap is checked only against essays of `corpus_so_far` with the same
/// model and prompt.
pub fn filter_essay(doc: &Document, corpus_so_far: &[Document], cfg: &FilterConfig) -> FilterVerdict {
    let mut ids = Interner::default();
    let mine = ids.document(doc);
    let peers: Vec<&Document> = corpus_so_far
        .iter()
        .filter(|k| k.model_name == doc.model_name && k.prompt_id == doc.prompt_id)
        .collect();
    let sentences: Vec<Vec<Vec<u32>>> = peers.iter().map(|k| ids.document(k)).collect();
    let pool: Vec<Pooled<'_>> = peers
        .iter()
        .zip(&sentences)
        .map(|(k, s)| Pooled { model: k.model_name.as_deref(), prompt_id: &k.prompt_id, sentences: s })
        .collect();
    verdict(doc, &mine, &pool, cfg)
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct FilterReport {
    pub kept: usize,
    pub short: usize,
    pub repetitive: usize,
    pub overlapped: usize,
    /// Verdict per input document, in input order.
    pub verdicts: Vec<(String, FilterReason)>,
}

/// Filters machine essays in input order; each kept essay joins the pool the
/// later ones are compared against. Human essays pass through unchanged.
pub fn filter_corpus(docs: Vec<Document>, cfg: &FilterConfig) -> (Vec<Document>, FilterReport) {
    let mut ids = Interner::default();
    let mut pooled: Vec<(usize, Vec<Vec<u32>>)> = Vec::new();
    let mut verdicts = Vec::with_capacity(docs.len());
    for (i, doc) in docs.iter().enumerate() {
        let v = if doc.author == Author::Machine {
            let mine = ids.document(doc);
            let pool: Vec<Pooled<'_>> = pooled
                .iter()
                .map(|(k, s)| Pooled {
                    model: docs[*k].model_name.as_deref(),
                    prompt_id: &docs[*k].prompt_id,
                    sentences: s,
                })
                .collect();
            let v = verdict(doc, &mine, &pool, cfg);
            if v.kept {
                pooled.push((i, mine));
            }
            v
        } else {
            FilterVerdict::of(FilterReason::Ok)
        };
        verdicts.push(v.reason);
    }
    let mut kept = Vec::new();
    let mut report = FilterReport::default();
    for (doc, reason) in docs.into_iter().zip(verdicts) {
        report.verdicts.push((doc.id.clone(), reason));
        match reason {
            FilterReason::Ok => {
                report.kept += 1;
                kept.push(doc);
            }
            FilterReason::Short => report.short += 1,
            FilterReason::Repetitive => report.repetitive += 1,
            FilterReason::Overlapped => report.overlapped += 1,
        }
    }
    (kept, report)
}

use std::ops::Range;

use super::tokenize::tokenize_spans;
use super::{Paragraph, Sentence, Token};

const TERMINALS: &[&str] = &[".", "!", "?", "...", "\u{2026}"];
const CLOSERS: &[char] = &['"', '\'', ')', ']', '}', '\u{201d}', '\u{2019}', '\u{bb}'];
const OPENERS: &[char] = &['"', '\'', '(', '[', '\u{201c}', '\u{2018}', '\u{ab}'];

/// Splits text into paragraphs (on blank lines) and sentences (on `.`, `!`
/// or `?` followed by whitespace and an uppercase word, or by the end of the
/// paragraph).
pub fn segment(text: &str) -> Vec<Paragraph> {
    paragraph_spans(text)
        .into_iter()
        .filter_map(|block| {
            let block_text = &text[block];
            let sentences: Vec<Sentence> = sentence_spans(block_text)
                .into_iter()
                .enumerate()
                .map(|(index, toks)| Sentence {
                    index,
                    tokens: toks.into_iter().map(|r| Token::new(&block_text[r])).collect(),
                })
                .collect();
            (!sentences.is_empty()).then_some(sentences)
        })
        .enumerate()
        .map(|(index, sentences)| Paragraph { sentences, index })
        .collect()
}

/// Byte ranges of blank-line separated blocks containing non-whitespace text.
pub(crate) fn paragraph_spans(text: &str) -> Vec<Range<usize>> {
    let mut out = Vec::new();
    let mut current: Option<Range<usize>> = None;
    let mut offset = 0;
    for line in text.split_inclusive('\n') {
        let start = offset;
        offset += line.len();
        if line.trim().is_empty() {
            if let Some(r) = current.take() {
                out.push(r);
            }
        } else {
            let end = start + line.trim_end().len();
            match current.as_mut() {
                Some(r) => r.end = end,
                None => current = Some(start..end),
            }
        }
    }
    out.extend(current);
    out
}

/// Token spans of `text` grouped into sentences.
pub(crate) fn sentence_spans(text: &str) -> Vec<Vec<Range<usize>>> {
    let spans = tokenize_spans(text);
    let mut sentences = Vec::new();
    let mut current = Vec::new();
    let mut k = 0;
    while k < spans.len() {
        let tok = &text[spans[k].clone()];
        current.push(spans[k].clone());
        k += 1;
        if !TERMINALS.contains(&tok) {
            continue;
        }
        while k < spans.len() && spans[k].start == spans[k - 1].end && is_closer(&text[spans[k].clone()]) {
            current.push(spans[k].clone());
            k += 1;
        }
        if k == spans.len() || starts_new_sentence(text, &spans, k) {
            sentences.push(std::mem::take(&mut current));
        }
    }
    if !current.is_empty() {
        sentences.push(current);
    }
    sentences
}

fn is_closer(tok: &str) -> bool {
    let mut chars = tok.chars();
    matches!((chars.next(), chars.next()), (Some(c), None) if CLOSERS.contains(&c))
}

fn starts_new_sentence(text: &str, spans: &[Range<usize>], k: usize) -> bool {
    if spans[k].start == spans[k - 1].end {
        return false;
    }
    let first = |j: usize| text[spans[j].clone()].chars().next();
    match first(k) {
        Some(c) if c.is_uppercase() => true,
        Some(c) if OPENERS.contains(&c) && text[spans[k].clone()].chars().count() == 1 => {
            k + 1 < spans.len() && first(k + 1).is_some_and(char::is_uppercase)
        }
        _ => false,
    }
}

use serde::{Deserialize, Serialize};

use crate::annotate::{PosTag, TaggedDocument};
use crate::syntax::ParseTree;
use crate::text::{Author, Token};
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Granularity {
    Doc,
    Para,
    Sent,
}

impl Granularity {
    pub fn as_str(self) -> &'static str {
        match self {
            Granularity::Doc => "DOC",
            Granularity::Para => "PARA",
            Granularity::Sent => "SENT",
        }
    }

    pub fn parse(s: &str) -> Option<Granularity> {
        match s.to_ascii_lowercase().as_str() {
            "doc" | "document" => Some(Granularity::Doc),
            "para" | "paragraph" => Some(Granularity::Para),
            "sent" | "sentence" => Some(Granularity::Sent),
            _ => None,
        }
    }
}

/// A classification unit: a whole document, one paragraph or one sentence,
/// labeled with its document's author class.
#[derive(Debug, Clone, PartialEq)]
pub struct Unit {
    pub doc_id: String,
    pub label: Author,
    pub granularity: Granularity,
    pub tokens: Vec<Token>,
    pub tags: Vec<PosTag>,
    pub trees: Vec<ParseTree>,
}

impl Unit {
    pub fn word_count(&self) -> usize {
        self.tokens.iter().filter(|t| t.is_word).count()
    }

    pub fn text(&self) -> String {
        self.tokens.iter().map(|t| t.surface.as_str()).collect::<Vec<_>>().join(" ")
    }
}

/// Breaks a tagged document into units. `trees`, when given, hold one parse
/// per sentence in document order (only the total matters at document level).
pub fn explode(doc: &TaggedDocument, trees: Option<&[ParseTree]>, granularity: Granularity) -> Result<Vec<Unit>> {
    let d = doc.document();
    let n_sent = d.sentence_count();
    if let Some(t) = trees {
        if granularity != Granularity::Doc && t.len() != n_sent {
            return Err(Error::MissingTrees(format!("{}: {} trees for {} sentences", d.id, t.len(), n_sent)));
        }
    }
    let trees = trees.unwrap_or(&[]);
    let unit = |sents: &[(usize, usize)], trees: &[ParseTree]| {
        let mut tokens = Vec::new();
        let mut tags = Vec::new();
        for &(start, len) in sents {
            tokens.extend(d.tokens().skip(start).take(len).cloned());
            tags.extend_from_slice(&doc.tags()[start..start + len]);
        }
        Unit { doc_id: d.id.clone(), label: d.author, granularity, tokens, tags, trees: trees.to_vec() }
    };
    // (token offset, token count) for each sentence, grouped by paragraph
    let mut offset = 0;
    let mut paragraphs: Vec<Vec<(usize, usize)>> = Vec::new();
    for p in d.paragraphs() {
        let mut spans = Vec::new();
        for s in &p.sentences {
            spans.push((offset, s.tokens.len()));
            offset += s.tokens.len();
        }
        paragraphs.push(spans);
    }
    Ok(match granularity {
        Granularity::Doc => {
            let all: Vec<(usize, usize)> = paragraphs.concat();
            vec![Unit {
                tokens: d.tokens().cloned().collect(),
                tags: doc.tags().to_vec(),
                ..unit(&all[..0], trees)
            }]
        }
        Granularity::Para => {
            let mut s = 0;
            paragraphs
                .iter()
                .map(|spans| {
                    let t = if trees.is_empty() { &[][..] } else { &trees[s..s + spans.len()] };
                    s += spans.len();
                    unit(spans, t)
                })
                .collect()
        }
        Granularity::Sent => paragraphs
            .concat()
            .iter()
            .enumerate()
            .map(|(i, span)| unit(std::slice::from_ref(span), if trees.is_empty() { &[] } else { &trees[i..=i] }))
            .collect(),
    })
}

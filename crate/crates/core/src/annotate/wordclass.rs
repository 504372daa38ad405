use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use super::{Lexicon, PosTag};
use crate::text::Token;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum WordClass {
    Noun,
    VerbLexical,
    Adj,
    AdvLexical,
    Other,
}

impl WordClass {
    pub fn is_lexical(self) -> bool {
        self != WordClass::Other
    }
}

const AUXILIARIES: &[&str] = &[
    "be", "am", "is", "are", "was", "were", "been", "being", "'m", "'re", "'s", "have", "has", "had",
    "having", "'ve", "'d", "do", "does", "did", "doing", "done", "will", "would", "shall", "should",
    "can", "could", "may", "might", "must", "'ll", "ought", "ca", "wo", "sha",
];

const ADVERB_WHITELIST: &[&str] = &["well", "fast", "hard", "late", "early"];

/// Verb forms that never count as lexical verbs.
#[derive(Debug, Clone)]
pub struct AuxLexicon {
    words: HashSet<String>,
}

impl Default for AuxLexicon {
    fn default() -> Self {
        AuxLexicon {
            words: AUXILIARIES.iter().map(|w| w.to_string()).collect(),
        }
    }
}

impl AuxLexicon {
    pub fn contains(&self, lower: &str) -> bool {
        self.words.contains(lower)
    }
}

pub fn classify_word(token: &Token, tag: PosTag, aux: &AuxLexicon, adjectives: &Lexicon) -> WordClass {
    if !token.is_word {
        return WordClass::Other;
    }
    let w = token.lower.replace('\u{2019}', "'");
    if tag.is_noun() {
        WordClass::Noun
    } else if tag.is_verb() {
        if aux.contains(&w) {
            WordClass::Other
        } else {
            WordClass::VerbLexical
        }
    } else if tag.is_adjective() {
        WordClass::Adj
    } else if tag.is_adverb() && adjectival_adverb(&w, adjectives) {
        WordClass::AdvLexical
    } else {
        WordClass::Other
    }
}

fn adjectival_adverb(w: &str, adjectives: &Lexicon) -> bool {
    if ADVERB_WHITELIST.contains(&w) {
        return true;
    }
    let Some(stem) = w.strip_suffix("ly") else {
        return false;
    };
    if stem.is_empty() {
        return false;
    }
    let mut candidates = vec![stem.to_string(), format!("{stem}e")];
    if let Some(s) = stem.strip_suffix('i') {
        candidates.push(format!("{s}y"));
    }
    if let Some(s) = w.strip_suffix('y') {
        candidates.push(s.to_string());
        candidates.push(format!("{s}e"));
    }
    if let Some(s) = stem.strip_suffix("al") {
        candidates.push(s.to_string());
    }
    candidates.iter().any(|c| adjectives.is_adjective(c))
}

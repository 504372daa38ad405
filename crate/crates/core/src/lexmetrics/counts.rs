use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use super::FrequencyList;
use crate::annotate::{TaggedDocument, WordClass};
use crate::{Error, Result};

/// Token and type tallies behind every lexical measure.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct LexicalCounts {
    pub n: usize,
    pub t: usize,
    pub n_lex: usize,
    pub t_lex: usize,
    pub n_slex: usize,
    /// Sophisticated word types among all words.
    pub t_s: usize,
    pub n_verb: usize,
    pub t_verb: usize,
    pub t_sverb: usize,
    pub t_noun: usize,
    pub t_adj: usize,
    pub t_adv: usize,
}

/// Letters with optional internal hyphens or apostrophes, and not in the
/// common-word list. Clitics, numbers and symbols are never sophisticated.
pub(crate) fn is_sophisticated(lower: &str, freq: &FrequencyList) -> bool {
    let mut chars = lower.chars();
    let well_formed = chars.next().is_some_and(char::is_alphabetic)
        && lower.chars().all(|c| c.is_alphabetic() || c == '-' || c == '\'')
        && lower.chars().last().is_some_and(char::is_alphabetic);
    well_formed && !freq.contains(lower)
}

pub fn lexical_counts(doc: &TaggedDocument, freq: &FrequencyList) -> Result<LexicalCounts> {
    let classes = doc.word_classes();
    let mut types = HashSet::new();
    let mut lex = HashSet::new();
    let mut soph = HashSet::new();
    let mut verbs = HashSet::new();
    let mut sverbs = HashSet::new();
    let mut nouns = HashSet::new();
    let mut adjs = HashSet::new();
    let mut advs = HashSet::new();
    let mut c = LexicalCounts::default();
    for ((tok, _), class) in doc.pairs().zip(classes) {
        if !tok.is_word {
            continue;
        }
        let w = tok.lower.as_str();
        let sophisticated = is_sophisticated(w, freq);
        c.n += 1;
        types.insert(w);
        if sophisticated {
            soph.insert(w);
        }
        if class.is_lexical() {
            c.n_lex += 1;
            lex.insert(w);
            if sophisticated {
                c.n_slex += 1;
            }
        }
        match class {
            WordClass::Noun => {
                nouns.insert(w);
            }
            WordClass::VerbLexical => {
                c.n_verb += 1;
                verbs.insert(w);
                if sophisticated {
                    sverbs.insert(w);
                }
            }
            WordClass::Adj => {
                adjs.insert(w);
            }
            WordClass::AdvLexical => {
                advs.insert(w);
            }
            WordClass::Other => {}
        }
    }
    if c.n == 0 {
        return Err(Error::EmptyDocument(doc.document().id.clone()));
    }
    c.t = types.len();
    c.t_lex = lex.len();
    c.t_s = soph.len();
    c.t_verb = verbs.len();
    c.t_sverb = sverbs.len();
    c.t_noun = nouns.len();
    c.t_adj = adjs.len();
    c.t_adv = advs.len();
    Ok(c)
}

use std::path::PathBuf;

use super::{Lexicon, PosTag, TaggedDocument};
use crate::text::{Document, Token};
use crate::{Error, Result};

/// Assigns one Penn Treebank tag per token of a sentence.
pub trait Tagger: Send + Sync {
    fn name(&self) -> &str;
    fn tag_sentence(&self, tokens: &[Token]) -> Vec<PosTag>;
}

/// Which tagger to run.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TaggerChoice {
    /// Built-in lexicon and suffix-rule tagger.
    Baseline,
    /// Baseline tagger with extra `word<TAB>tag` entries taking priority.
    BaselineWithLexicon(PathBuf),
}

impl TaggerChoice {
    pub fn from_name(name: &str) -> Result<TaggerChoice> {
        match name {
            "baseline" => Ok(TaggerChoice::Baseline),
            other => Err(Error::UnknownTagger(other.to_string())),
        }
    }

    pub fn build(&self) -> Result<BaselineTagger> {
        match self {
            TaggerChoice::Baseline => Ok(BaselineTagger::new()),
            TaggerChoice::BaselineWithLexicon(path) => {
                let mut lex = Lexicon::load(path)?;
                lex.extend(Lexicon::builtin());
                Ok(BaselineTagger::with_lexicon(lex))
            }
        }
    }
}

/// Tags every token of `document`.
pub fn tag(document: &Document, choice: &TaggerChoice) -> Result<TaggedDocument> {
    let tagger = choice.build()?;
    Ok(tag_with(document, &tagger))
}

pub fn tag_with(document: &Document, tagger: &dyn Tagger) -> TaggedDocument {
    let tags = document
        .sentences()
        .flat_map(|s| tagger.tag_sentence(&s.tokens))
        .collect();
    TaggedDocument::new(document.clone(), tags).expect("tagger emits one tag per token")
}

/// Deterministic lexicon + suffix-rule tagger with a handful of contextual
/// rules for the common noun/verb and tense ambiguities.
#[derive(Debug, Clone)]
pub struct BaselineTagger {
    lexicon: Option<Lexicon>,
}

impl Default for BaselineTagger {
    fn default() -> Self {
        Self::new()
    }
}

const NOMINATIVE: &[&str] = &["i", "you", "we", "they", "he", "she", "it"];
const THIRD_SINGULAR: &[&str] = &["he", "she", "it", "this", "that", "what", "who", "which", "there"];
const HAVE_FORMS: &[&str] = &["have", "has", "had", "having", "'ve"];
const BE_FORMS: &[&str] = &["be", "is", "are", "am", "was", "were", "been", "being", "'re", "'m"];
const DO_FORMS: &[&str] = &["do", "does", "did"];
const LINKING: &[&str] = &["become", "becomes", "became", "seem", "seems", "seemed", "feel", "feels", "felt", "get", "gets", "got"];
const PARTICLES: &[&str] = &["up", "down", "out", "off"];
const ADJ_OR_ADV: &[&str] = &["late", "early", "fast", "hard", "long", "high", "low"];

impl BaselineTagger {
    pub fn new() -> Self {
        BaselineTagger { lexicon: None }
    }

    pub fn with_lexicon(lexicon: Lexicon) -> Self {
        BaselineTagger { lexicon: Some(lexicon) }
    }

    fn lex(&self) -> &Lexicon {
        self.lexicon.as_ref().unwrap_or_else(|| Lexicon::builtin())
    }

    fn candidates(&self, tok: &Token, first: bool) -> Vec<PosTag> {
        if tok.is_punct {
            return vec![punct_tag(&tok.surface)];
        }
        if tok.surface.starts_with(|c: char| c.is_ascii_digit()) {
            return vec![PosTag::of("CD")];
        }
        let lower = tok.lower.replace('\u{2019}', "'");
        let known = self.lex().tags(&lower);
        if !known.is_empty() {
            return known.to_vec();
        }
        if !first && tok.surface.starts_with(char::is_uppercase) {
            return vec![PosTag::of("NNP")];
        }
        if let Some((_, last)) = lower.rsplit_once('-') {
            let tail = self.lex().tags(last);
            if tail.iter().any(|t| t.is_adjective() || t.as_str() == "VBN") {
                return vec![PosTag::of("JJ")];
            }
            if !tail.is_empty() {
                return vec![PosTag::of("NN")];
            }
        }
        let guess = suffix_guess(&lower);
        if first && tok.surface.starts_with(char::is_uppercase) && guess[0].as_str() == "NN" {
            return vec![PosTag::of("NNP")];
        }
        guess
    }
}

fn suffix_guess(w: &str) -> Vec<PosTag> {
    let has = |suffixes: &[&str]| suffixes.iter().any(|s| w.len() > s.len() + 1 && w.ends_with(s));
    let tags: &[&str] = if has(&["ly"]) {
        &["RB"]
    } else if has(&["ing"]) {
        &["VBG", "NN"]
    } else if has(&["ed"]) {
        &["VBD", "VBN"]
    } else if has(&["tion", "sion", "ment", "ness", "ity", "ance", "ence", "ism", "ship", "hood"]) {
        &["NN"]
    } else if has(&["ous", "ful", "ive", "able", "ible", "al", "ic", "less", "ish", "ary", "ent", "ant"]) {
        &["JJ"]
    } else if has(&["ise", "ize", "ify", "ate"]) {
        &["VB"]
    } else if has(&["s"]) && !w.ends_with("ss") {
        &["NNS"]
    } else {
        &["NN"]
    };
    tags.iter().map(|t| PosTag::of(t)).collect()
}

fn punct_tag(surface: &str) -> PosTag {
    let tag = match surface {
        "." | "!" | "?" => ".",
        "," => ",",
        "(" | "[" | "{" => "-LRB-",
        ")" | "]" | "}" => "-RRB-",
        "`" | "``" | "\u{201c}" | "\u{2018}" => "``",
        "'" | "''" | "\u{201d}" | "\u{2019}" => "''",
        "\"" => "``",
        "$" => "$",
        "#" => "#",
        s if s.chars().all(|c| c == '.' || c == '?' || c == '!') => ".",
        _ => ":",
    };
    PosTag::of(tag)
}

struct Context<'a> {
    tokens: &'a [Token],
    cands: &'a [Vec<PosTag>],
    tags: &'a [PosTag],
}

impl Context<'_> {
    fn lower(&self, k: usize) -> &str {
        self.tokens.get(k).map(|t| t.lower.as_str()).unwrap_or("")
    }

    fn first_cand(&self, k: usize) -> Option<&'static str> {
        self.cands.get(k).and_then(|c| c.first()).map(|t| t.as_str())
    }

    /// Index of the closest decided token before `k` that is not an adverb.
    fn prev_content(&self, k: usize) -> Option<usize> {
        (0..k).rev().find(|&j| !self.tags[j].is_adverb())
    }

    /// Whether a modal, `to` or a form of `do` governs position `k`
    /// (skipping adverbs and, for inverted questions, pronouns).
    fn governed_by_auxiliary(&self, k: usize) -> bool {
        for j in (0..k).rev() {
            let t = self.tags[j].as_str();
            if t == "RB" || t == "PRP" {
                continue;
            }
            return t == "MD" || t == "TO" || DO_FORMS.contains(&self.lower(j));
        }
        false
    }

    fn last_verb_tag(&self, k: usize) -> Option<&'static str> {
        (0..k).rev().map(|j| self.tags[j].as_str()).find(|t| t.starts_with("VB"))
    }
}

impl Tagger for BaselineTagger {
    fn name(&self) -> &str {
        "baseline"
    }

    fn tag_sentence(&self, tokens: &[Token]) -> Vec<PosTag> {
        let cands: Vec<Vec<PosTag>> = tokens
            .iter()
            .enumerate()
            .map(|(k, t)| self.candidates(t, k == 0))
            .collect();
        let mut tags: Vec<PosTag> = Vec::with_capacity(tokens.len());
        let mut quote_open = false;
        for k in 0..tokens.len() {
            let tag = if tokens[k].surface == "\"" {
                quote_open = !quote_open;
                PosTag::of(if quote_open { "``" } else { "''" })
            } else {
                let ctx = Context { tokens, cands: &cands, tags: &tags };
                decide(&ctx, k, self.lex())
            };
            tags.push(tag);
        }
        tags
    }
}

fn decide(ctx: &Context<'_>, k: usize, lex: &Lexicon) -> PosTag {
    let cands = &ctx.cands[k];
    if ctx.tokens[k].is_punct {
        return cands[0];
    }
    if let Some(t) = special_word(ctx, k) {
        return PosTag::of(t);
    }
    let has = |t: &str| cands.iter().any(|c| c.as_str() == t);
    let can_noun = cands.iter().any(PosTag::is_noun);
    let noun_tag = cands.iter().copied().find(PosTag::is_noun);
    let prev = ctx.prev_content(k);
    let prev_tag = prev.map(|j| ctx.tags[j].as_str()).unwrap_or("");
    let prev_word = prev.map(|j| ctx.lower(j)).unwrap_or("");
    let raw_prev = if k > 0 { ctx.tags[k - 1].as_str() } else { "" };
    let subject_before = matches!(prev_tag, "NN" | "NNS" | "NNP" | "NNPS" | "WDT" | "WP" | "EX")
        || (prev_tag == "PRP" && NOMINATIVE.contains(&prev_word));
    let determiner_before = matches!(raw_prev, "DT" | "PRP$" | "POS" | "JJ" | "JJR" | "JJS" | "CD");

    // base verb forms
    if has("VB") {
        if ctx.governed_by_auxiliary(k) {
            return PosTag::of("VB");
        }
        if determiner_before || matches!(raw_prev, "IN") {
            if let Some(n) = noun_tag {
                return n;
            }
        }
        if matches!(raw_prev, "," | "CC") && k >= 2 {
            let before = ctx.tags[k - 2];
            if raw_prev == "CC" && before.is_noun() {
                if let Some(n) = noun_tag {
                    return n;
                }
            }
            if let Some(v) = ctx.last_verb_tag(k) {
                if v == "VB" || v == "VBP" {
                    return PosTag::of(v);
                }
            }
        }
        if prev_tag == "PRP" && !NOMINATIVE.contains(&prev_word) {
            return PosTag::of("VB");
        }
        if subject_before {
            if prev_tag == "NN" {
                if let Some(n) = noun_tag {
                    return n;
                }
            }
            return PosTag::of("VBP");
        }
        if let Some(n) = noun_tag {
            return n;
        }
        return PosTag::of("VB");
    }

    // third person singular
    if has("VBZ") {
        let third = matches!(prev_tag, "NN" | "NNP" | "WDT" | "WP" | "EX")
            || (matches!(prev_tag, "PRP" | "DT") && THIRD_SINGULAR.contains(&prev_word));
        if third || !has("NNS") {
            return PosTag::of("VBZ");
        }
        return PosTag::of("NNS");
    }

    // past tense vs participle
    if has("VBD") || has("VBN") {
        let aux = (0..k)
            .rev()
            .find(|&j| !ctx.tags[j].is_adverb())
            .map(|j| ctx.lower(j))
            .unwrap_or("");
        if HAVE_FORMS.contains(&aux) || BE_FORMS.contains(&aux) || matches!(aux, "get" | "got" | "gets") {
            return PosTag::of("VBN");
        }
        let subject = matches!(prev_tag, "NN" | "NNS" | "NNP" | "WDT" | "WP")
            || (prev_tag == "PRP" && NOMINATIVE.contains(&prev_word));
        if !subject && lex.is_adjective(&ctx.tokens[k].lower) {
            return PosTag::of("JJ");
        }
        if subject && has("VBD") {
            return PosTag::of("VBD");
        }
        if determiner_before || !has("VBD") {
            return PosTag::of("VBN");
        }
        return PosTag::of("VBD");
    }

    if has("VBG") {
        if determiner_before {
            if let Some(n) = noun_tag {
                return n;
            }
        }
        return PosTag::of("VBG");
    }

    let copula = k > 0 && (BE_FORMS.contains(&ctx.lower(k - 1)) || LINKING.contains(&ctx.lower(k - 1)));
    if ADJ_OR_ADV.contains(&ctx.lower(k)) && (raw_prev.starts_with("VB") || raw_prev == "RP") && !copula {
        let next_ends = ctx.first_cand(k + 1).is_none_or(|t| matches!(t, "." | "," | ":" | "CC"));
        if next_ends {
            return PosTag::of("RB");
        }
    }
    if can_noun && cands[0].is_adjective() && determiner_before && ctx.first_cand(k + 1).is_some_and(|t| t == "IN" || t == ".") {
        return noun_tag.unwrap();
    }
    cands[0]
}

/// Closed-class words whose tag depends on immediate context.
fn special_word(ctx: &Context<'_>, k: usize) -> Option<&'static str> {
    let w = ctx.lower(k);
    let raw_prev = if k > 0 { ctx.tags[k - 1].as_str() } else { "" };
    let next = ctx.first_cand(k + 1).unwrap_or("");
    let next_word = ctx.lower(k + 1);
    let adjectival = |t: &str| t.starts_with("JJ") || t.starts_with("RB");
    let t = match w {
        "that" => {
            if matches!(raw_prev, "NN" | "NNS" | "NNP") {
                "WDT"
            } else if raw_prev.starts_with("VB") || raw_prev.starts_with("JJ") || raw_prev.starts_with("RB") {
                "IN"
            } else if matches!(next, "NN" | "NNS") {
                "DT"
            } else {
                "IN"
            }
        }
        "so" => if adjectival(next) { "RB" } else { "IN" },
        "as" => {
            if adjectival(next) && ctx.lower(k + 2) == "as" {
                "RB"
            } else {
                "IN"
            }
        }
        "more" | "less" => {
            if matches!(next, "NN" | "NNS") {
                "JJR"
            } else {
                "RBR"
            }
        }
        "most" | "least" => {
            if next_word == "of" || matches!(raw_prev, "DT") || matches!(next, "NN" | "NNS") {
                "JJS"
            } else {
                "RBS"
            }
        }
        "much" | "long" if k > 0 && ctx.lower(k - 1) == "as" && next_word == "as" => "RB",
        "much" if matches!(ctx.lower(k.wrapping_sub(1)), "very" | "so" | "too" | "how") => "RB",
        "'s" | "\u{2019}s" => {
            if matches!(raw_prev, "PRP" | "WP" | "EX" | "WRB") || THIRD_SINGULAR.contains(&ctx.lower(k.wrapping_sub(1))) {
                "VBZ"
            } else {
                "POS"
            }
        }
        "her" => if matches!(next, "NN" | "NNS" | "JJ" | "JJR" | "JJS") { "PRP$" } else { "PRP" },
        "there" => {
            if matches!(next_word, "is" | "are" | "was" | "were" | "'s" | "be" | "seem" | "seems" | "will" | "may" | "might") {
                "EX"
            } else {
                "RB"
            }
        }
        "first" => if k == 0 { "RB" } else { "JJ" },
        "only" => if matches!(raw_prev, "DT" | "PRP$") { "JJ" } else { "RB" },
        "all" | "both" | "half" => {
            if matches!(next, "DT" | "PRP$") && next_word != "of" {
                "PDT"
            } else {
                "DT"
            }
        }
        "do" | "have" => {
            if ctx.governed_by_auxiliary(k) {
                "VB"
            } else {
                "VBP"
            }
        }
        "like" => {
            let prev = ctx.prev_content(k);
            let pw = prev.map(|j| ctx.lower(j)).unwrap_or("");
            let pt = prev.map(|j| ctx.tags[j].as_str()).unwrap_or("");
            if ctx.governed_by_auxiliary(k) {
                "VB"
            } else if (pt == "PRP" && NOMINATIVE.contains(&pw)) || pt == "NNS" {
                "VBP"
            } else {
                "IN"
            }
        }
        w if PARTICLES.contains(&w) && raw_prev.starts_with("VB") => {
            if matches!(next, "DT" | "PRP$" | "NN" | "NNS" | "CD" | "NNP") {
                "IN"
            } else {
                "RP"
            }
        }
        _ => return None,
    };
    Some(t)
}

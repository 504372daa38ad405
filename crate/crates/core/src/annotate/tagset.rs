use std::fmt;

use serde::{Deserialize, Serialize};

/// The 45-tag Penn Treebank inventory: 36 word tags and 9 punctuation/symbol tags.
pub const PTB_TAGS: [&str; 45] = [
    "CC", "CD", "DT", "EX", "FW", "IN", "JJ", "JJR", "JJS", "LS", "MD", "NN", "NNS", "NNP", "NNPS",
    "PDT", "POS", "PRP", "PRP$", "RB", "RBR", "RBS", "RP", "SYM", "TO", "UH", "VB", "VBD", "VBG",
    "VBN", "VBP", "VBZ", "WDT", "WP", "WP$", "WRB", "#", "$", ".", ",", ":", "-LRB-", "-RRB-", "``",
    "''",
];

pub const PUNCT_TAGS: [&str; 9] = ["#", "$", ".", ",", ":", "-LRB-", "-RRB-", "``", "''"];

/// A Penn Treebank part-of-speech tag, guaranteed to be in [`PTB_TAGS`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub struct PosTag(&'static str);

impl PosTag {
    pub fn new(tag: &str) -> Option<PosTag> {
        PTB_TAGS.iter().find(|t| **t == tag).map(|t| PosTag(t))
    }

    /// Panics on tags outside the inventory; for literals only.
    pub(crate) fn of(tag: &str) -> PosTag {
        Self::new(tag).unwrap_or_else(|| panic!("`{tag}` is not a PTB tag"))
    }

    pub fn as_str(&self) -> &'static str {
        self.0
    }

    pub fn is_punct(&self) -> bool {
        PUNCT_TAGS.contains(&self.0)
    }

    pub fn is_noun(&self) -> bool {
        self.0.starts_with("NN")
    }

    pub fn is_verb(&self) -> bool {
        self.0.starts_with("VB")
    }

    pub fn is_adjective(&self) -> bool {
        self.0.starts_with("JJ")
    }

    pub fn is_adverb(&self) -> bool {
        matches!(self.0, "RB" | "RBR" | "RBS")
    }
}

impl fmt::Display for PosTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.0)
    }
}

impl TryFrom<String> for PosTag {
    type Error = String;

    fn try_from(s: String) -> Result<Self, Self::Error> {
        PosTag::new(&s).ok_or_else(|| format!("`{s}` is not a Penn Treebank tag"))
    }
}

impl From<PosTag> for String {
    fn from(t: PosTag) -> String {
        t.0.to_string()
    }
}

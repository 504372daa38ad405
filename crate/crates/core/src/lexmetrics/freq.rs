use std::collections::HashSet;
use std::path::Path;
use std::sync::LazyLock;

use crate::{Error, Result};

const BUILTIN: &str = include_str!("../../data/freq_top2000.txt");

/// Ranked reference word list. Words among the top `cutoff` entries are
/// treated as common; everything else is sophisticated.
#[derive(Debug, Clone)]
pub struct FrequencyList {
    ranked_words: Vec<String>,
    cutoff: usize,
    common: HashSet<String>,
}

impl FrequencyList {
    pub const DEFAULT_CUTOFF: usize = 2000;

    pub fn new(words: impl IntoIterator<Item = impl AsRef<str>>, cutoff: usize) -> Result<Self> {
        let mut seen = HashSet::new();
        let mut ranked_words = Vec::new();
        for w in words {
            let w = w.as_ref().trim().to_lowercase();
            if !w.is_empty() && seen.insert(w.clone()) {
                ranked_words.push(w);
            }
        }
        if cutoff > ranked_words.len() {
            return Err(Error::InvalidConfig(format!(
                "frequency cutoff {cutoff} exceeds list length {}",
                ranked_words.len()
            )));
        }
        let common = ranked_words[..cutoff].iter().cloned().collect();
        Ok(FrequencyList { ranked_words, cutoff, common })
    }

    /// The bundled 2,000-word general English list.
    pub fn builtin() -> &'static FrequencyList {
        static LIST: LazyLock<FrequencyList> =
            LazyLock::new(|| FrequencyList::parse(BUILTIN, FrequencyList::DEFAULT_CUTOFF).expect("bundled list"));
        &LIST
    }

    /// One word per line in descending frequency; `#` lines are comments.
    pub fn parse(text: &str, cutoff: usize) -> Result<Self> {
        Self::new(text.lines().filter(|l| !l.trim_start().starts_with('#')), cutoff)
    }

    /// Loads a list, using the first `min(2000, len)` entries as the cutoff.
    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        let n = text.lines().filter(|l| !l.trim().is_empty() && !l.trim_start().starts_with('#')).count();
        Self::parse(&text, n.min(Self::DEFAULT_CUTOFF))
    }

    pub fn contains(&self, lower: &str) -> bool {
        self.common.contains(lower)
    }

    pub fn cutoff(&self) -> usize {
        self.cutoff
    }

    pub fn ranked_words(&self) -> &[String] {
        &self.ranked_words
    }

    /// The `k` highest-ranked words.
    pub fn top(&self, k: usize) -> &[String] {
        &self.ranked_words[..k.min(self.ranked_words.len())]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builtin_list() {
        let f = FrequencyList::builtin();
        assert_eq!(f.cutoff(), 2000);
        assert!(f.contains("the"));
        assert!(!f.contains("sophisticated"));
    }

    #[test]
    fn cutoff_limits_membership() {
        let f = FrequencyList::new(["a", "b", "c", "b"], 2).unwrap();
        assert_eq!(f.ranked_words().len(), 3);
        assert!(f.contains("b"));
        assert!(!f.contains("c"));
        assert!(FrequencyList::new(["a"], 2).is_err());
    }
}

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::ParseTree;

/// A non-lexical production, e.g. `S -> NP VP`. Labels are stripped of
/// function tags.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct CfgRule {
    pub lhs: String,
    pub rhs: Vec<String>,
}

impl fmt::Display for CfgRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} -> {}", self.lhs, self.rhs.join(" "))
    }
}

pub type RuleCounts = BTreeMap<CfgRule, usize>;

/// Counts one rule per internal node that has nonterminal children.
pub fn extract_cfg_rules<'a>(trees: impl IntoIterator<Item = &'a ParseTree>) -> RuleCounts {
    let mut counts = RuleCounts::new();
    for tree in trees {
        for node in tree.walk() {
            if node.children.is_empty() {
                continue;
            }
            let rule = CfgRule {
                lhs: node.base_label().to_string(),
                rhs: node.children.iter().map(|c| c.base_label().to_string()).collect(),
            };
            *counts.entry(rule).or_default() += 1;
        }
    }
    counts
}

#[cfg(test)]
mod tests {
    use super::super::parse_bracketed;
    use super::*;

    #[test]
    fn simple_rules() {
        let t = parse_bracketed("(S (NP (PRP I)) (VP (VBP run)))").unwrap();
        let r = extract_cfg_rules(&t);
        let shown: Vec<_> = r.iter().map(|(k, v)| format!("{k}:{v}")).collect();
        assert_eq!(shown, ["NP -> PRP:1", "S -> NP VP:1", "VP -> VBP:1"]);
        let doubled = extract_cfg_rules(t.iter().chain(t.iter()));
        assert!(doubled.values().all(|&v| v == 2));
        let leaf = parse_bracketed("(NN cat)").unwrap();
        assert!(extract_cfg_rules(&leaf).is_empty());
    }
}

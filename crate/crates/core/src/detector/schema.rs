use std::collections::{BTreeMap, HashMap};
use std::sync::{LazyLock, OnceLock};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{Granularity, Unit};
use crate::annotate::PTB_TAGS;
use crate::lexmetrics::FrequencyList;
use crate::syntax::extract_cfg_rules;
use crate::text::Author;
use crate::{Error, Result, Scalar};

pub const PUNCTUATION_MARKS: [&str; 14] = [".", ",", ";", ":", "!", "?", "'", "\"", "(", ")", "-", "—", "…", "/"];

static FUNCTION_WORDS: LazyLock<Vec<String>> = LazyLock::new(|| {
    include_str!("../../data/function_words.txt")
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
        .map(str::to_string)
        .collect()
});

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Family {
    Cfgr,
    FunctionWords,
    TopKWords,
    PosUnigrams,
    Punctuation,
    WordUnigrams,
}

impl Family {
    pub const ALL: [Family; 6] = [
        Family::Cfgr,
        Family::FunctionWords,
        Family::TopKWords,
        Family::PosUnigrams,
        Family::Punctuation,
        Family::WordUnigrams,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Family::Cfgr => "CFGR",
            Family::FunctionWords => "FUNCTION_WORDS",
            Family::TopKWords => "TOP_K_WORDS",
            Family::PosUnigrams => "POS_UNIGRAMS",
            Family::Punctuation => "PUNCTUATION",
            Family::WordUnigrams => "WORD_UNIGRAMS",
        }
    }

    pub fn parse(s: &str) -> Option<Family> {
        let norm = s.to_ascii_uppercase().replace('-', "_");
        Family::ALL.into_iter().find(|f| f.as_str() == norm)
    }
}

/// Parameters used when fitting a schema. The word lists default to the
/// bundled function-word inventory and frequency rank list.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FitParams {
    pub cfgr_threshold: usize,
    pub top_k: usize,
    pub unigram_min_count: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub function_words: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rank_list: Option<Vec<String>>,
}

impl Default for FitParams {
    fn default() -> Self {
        FitParams { cfgr_threshold: 10, top_k: 10, unigram_min_count: 3, function_words: None, rank_list: None }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct FeatureSchema {
    pub family: Family,
    pub feature_names: Vec<String>,
    pub params: FitParams,
    #[serde(skip)]
    index: OnceLock<HashMap<String, usize>>,
}

impl PartialEq for FeatureSchema {
    fn eq(&self, other: &Self) -> bool {
        self.family == other.family && self.feature_names == other.feature_names && self.params == other.params
    }
}

impl FeatureSchema {
    pub fn new(family: Family, feature_names: Vec<String>, params: FitParams) -> Self {
        FeatureSchema { family, feature_names, params, index: OnceLock::new() }
    }

    pub fn len(&self) -> usize {
        self.feature_names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.feature_names.is_empty()
    }

    pub fn position(&self, name: &str) -> Option<usize> {
        self.index
            .get_or_init(|| self.feature_names.iter().enumerate().map(|(i, n)| (n.clone(), i)).collect())
            .get(name)
            .copied()
    }
}

/// Sparse feature values for one unit. Absent names are zero.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FeatureVector<T> {
    pub doc_id: String,
    pub label: Author,
    pub granularity: Granularity,
    pub values: BTreeMap<String, T>,
}

impl<T: Scalar> FeatureVector<T> {
    pub fn get(&self, name: &str) -> T {
        self.values.get(name).copied().unwrap_or_else(T::zero)
    }

    /// Dense row in schema order.
    pub fn dense(&self, schema: &FeatureSchema) -> Vec<T> {
        let mut row = vec![T::zero(); schema.len()];
        for (name, &v) in &self.values {
            if let Some(i) = schema.position(name) {
                row[i] = v;
            }
        }
        row
    }
}

fn punctuation_key(surface: &str) -> Option<&'static str> {
    let key = match surface {
        "..." => "…",
        "--" | "–" => "—",
        "\u{2018}" | "\u{2019}" | "`" => "'",
        "\u{201c}" | "\u{201d}" | "``" | "''" => "\"",
        s => s,
    };
    PUNCTUATION_MARKS.iter().find(|m| **m == key).copied()
}

/// Fixes the feature space of one family from training units only.
pub fn fit_schema(train: &[Unit], family: Family, params: &FitParams) -> Result<FeatureSchema> {
    if train.is_empty() {
        return Err(Error::EmptyTrain);
    }
    let names: Vec<String> = match family {
        Family::FunctionWords => params.function_words.clone().unwrap_or_else(|| FUNCTION_WORDS.clone()),
        Family::PosUnigrams => PTB_TAGS.iter().map(|t| t.to_string()).collect(),
        Family::Punctuation => PUNCTUATION_MARKS.iter().map(|t| t.to_string()).collect(),
        Family::TopKWords => match &params.rank_list {
            Some(list) => list.iter().take(params.top_k).cloned().collect(),
            None => FrequencyList::builtin().top(params.top_k).to_vec(),
        },
        Family::WordUnigrams => {
            let mut counts: BTreeMap<&str, usize> = BTreeMap::new();
            for t in train.iter().flat_map(|u| &u.tokens).filter(|t| t.is_word) {
                *counts.entry(t.lower.as_str()).or_default() += 1;
            }
            counts
                .into_iter()
                .filter(|&(_, c)| c > params.unigram_min_count)
                .map(|(w, _)| w.to_string())
                .collect()
        }
        Family::Cfgr => {
            if let Some(u) = train.iter().find(|u| u.trees.is_empty()) {
                return Err(Error::MissingTrees(u.doc_id.clone()));
            }
            let rules = extract_cfg_rules(train.iter().flat_map(|u| &u.trees));
            let kept: Vec<String> = rules
                .into_iter()
                .filter(|&(_, c)| c > params.cfgr_threshold)
                .map(|(r, _)| r.to_string())
                .collect();
            if kept.is_empty() {
                log::warn!("empty schema: no rule occurs more than {} times", params.cfgr_threshold);
            }
            kept
        }
    };
    let mut seen = std::collections::HashSet::new();
    let names = names.into_iter().filter(|n| seen.insert(n.clone())).collect();
    Ok(FeatureSchema::new(family, names, params.clone()))
}

/// Relative frequencies of the schema's features in one unit.
pub fn featurize<T: Scalar>(unit: &Unit, schema: &FeatureSchema) -> FeatureVector<T> {
    let mut counts: BTreeMap<String, usize> = BTreeMap::new();
    let mut bump = |name: &str, n: usize| {
        if schema.position(name).is_some() {
            *counts.entry(name.to_string()).or_default() += n;
        }
    };
    let total = match schema.family {
        Family::FunctionWords | Family::TopKWords | Family::WordUnigrams => {
            for t in unit.tokens.iter().filter(|t| t.is_word) {
                bump(&t.lower, 1);
            }
            unit.word_count()
        }
        Family::PosUnigrams => {
            for tag in &unit.tags {
                bump(tag.as_str(), 1);
            }
            unit.tokens.len()
        }
        Family::Punctuation => {
            for t in &unit.tokens {
                if let Some(k) = punctuation_key(&t.surface) {
                    bump(k, 1);
                }
            }
            unit.tokens.len()
        }
        Family::Cfgr => {
            let mut retained = 0;
            for (rule, c) in extract_cfg_rules(&unit.trees) {
                let name = rule.to_string();
                if schema.position(&name).is_some() {
                    retained += c;
                    bump(&name, c);
                }
            }
            retained
        }
    };
    let values = if total == 0 {
        BTreeMap::new()
    } else {
        counts.into_iter().map(|(k, c)| (k, T::count(c) / T::count(total))).collect()
    };
    FeatureVector { doc_id: unit.doc_id.clone(), label: unit.label, granularity: unit.granularity, values }
}

pub fn featurize_all<T: Scalar>(units: &[Unit], schema: &FeatureSchema) -> Vec<FeatureVector<T>> {
    units.par_iter().map(|u| featurize(u, schema)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::annotate::PosTag;
    use crate::syntax::parse_bracketed;
    use crate::text::Token;

    fn unit(words: &str) -> Unit {
        let tokens: Vec<Token> = words.split_whitespace().map(Token::new).collect();
        let tags = tokens.iter().map(|_| PosTag::new("NN").unwrap()).collect();
        Unit { doc_id: "u".into(), label: Author::Human, granularity: Granularity::Doc, tokens, tags, trees: vec![] }
    }

    #[test]
    fn inventory_sizes() {
        let train = [unit("a b")];
        let p = FitParams::default();
        assert_eq!(fit_schema(&train, Family::FunctionWords, &p).unwrap().len(), 467);
        assert_eq!(fit_schema(&train, Family::PosUnigrams, &p).unwrap().len(), 45);
        assert_eq!(fit_schema(&train, Family::Punctuation, &p).unwrap().len(), 14);
        assert_eq!(fit_schema(&train, Family::TopKWords, &FitParams { top_k: 50, ..p.clone() }).unwrap().len(), 50);
        assert!(matches!(fit_schema(&[], Family::Punctuation, &p), Err(Error::EmptyTrain)));
        assert!(matches!(fit_schema(&train, Family::Cfgr, &p), Err(Error::MissingTrees(_))));
    }

    #[test]
    fn function_word_ratio() {
        let u = unit("the cat saw the dog near a big red barn");
        let schema = fit_schema(std::slice::from_ref(&u), Family::FunctionWords, &FitParams::default()).unwrap();
        let fv: FeatureVector<f64> = featurize(&u, &schema);
        assert_eq!(fv.get("the"), 0.2);
        let none: FeatureVector<f64> = featurize(&unit("cat dog barn"), &schema);
        assert!(none.values.is_empty());
        assert!(none.dense(&schema).iter().all(|v| *v == 0.0));
    }

    #[test]
    fn cfgr_ratio_and_threshold() {
        let mut u = unit("I run");
        u.trees = parse_bracketed("(S (NP (PRP I)) (VP (VBP run)))").unwrap();
        let p = FitParams { cfgr_threshold: 0, ..FitParams::default() };
        let schema = FeatureSchema::new(Family::Cfgr, vec!["S -> NP VP".into(), "NP -> PRP".into()], p.clone());
        let fv: FeatureVector<f64> = featurize(&u, &schema);
        assert_eq!(fv.get("S -> NP VP"), 0.5);
        assert_eq!(fv.get("NP -> PRP"), 0.5);
        let strict = FitParams { cfgr_threshold: 20, ..p };
        assert!(fit_schema(&[u], Family::Cfgr, &strict).unwrap().is_empty());
    }

    #[test]
    fn unigrams_above_min_count() {
        let u = unit("x x x x y y y z");
        let schema = fit_schema(&[u], Family::WordUnigrams, &FitParams::default()).unwrap();
        assert_eq!(schema.feature_names, vec!["x"]);
    }

    #[test]
    fn punctuation_variants() {
        let u = unit("wait ... yes -- no – “ ok ” .");
        let schema = fit_schema(std::slice::from_ref(&u), Family::Punctuation, &FitParams::default()).unwrap();
        let fv: FeatureVector<f64> = featurize(&u, &schema);
        assert_eq!(fv.get("…"), 0.1);
        assert_eq!(fv.get("—"), 0.2);
        assert_eq!(fv.get("."), 0.1);
        assert_eq!(fv.get("\""), 0.2);
    }
}

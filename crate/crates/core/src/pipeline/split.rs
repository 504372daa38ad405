use std::collections::BTreeMap;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::sample::{largest_remainder, shuffled};
use crate::text::{Author, Document, Level, Source, Split};
use crate::{Error, Result};

/// Held-out sizes for one source. Each held-out set is half human, half
/// machine (the odd essay, if any, goes to the machine side).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SplitSizes {
    pub dev: usize,
    pub test: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default)]
pub struct SplitSpec {
    pub sizes: BTreeMap<Source, SplitSizes>,
    /// Sources whose held-out human essays follow `level_ratio`.
    pub stratified: Vec<Source>,
    pub level_ratio: [usize; 3],
    /// Models never drawn into dev or test.
    pub excluded_models: Vec<String>,
    pub seed: u64,
}

impl Default for SplitSpec {
    fn default() -> Self {
        let sizes = [
            (Source::Weccl, SplitSizes { dev: 300, test: 300 }),
            (Source::Toefl, SplitSizes { dev: 300, test: 300 }),
            (Source::Gre, SplitSizes { dev: 100, test: 100 }),
        ]
        .into_iter()
        .collect();
        SplitSpec {
            sizes,
            stratified: vec![Source::Weccl, Source::Toefl],
            level_ratio: [1, 3, 1],
            excluded_models: vec!["text-davinci-001".into(), "text-davinci-002".into()],
            seed: 42,
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SplitSummary {
    /// `(source, split, author) -> count`
    pub counts: BTreeMap<String, usize>,
}

impl SplitSummary {
    pub fn get(&self, source: Source, split: Split, author: Author) -> usize {
        self.counts.get(&key(source, split, author)).copied().unwrap_or(0)
    }
}

fn key(source: Source, split: Split, author: Author) -> String {
    let s = match split {
        Split::Train => "TRAIN",
        Split::Dev => "DEV",
        Split::Test => "TEST",
    };
    format!("{}/{}/{}", source.as_str(), s, author.as_str())
}

fn shortage(source: Source, what: &str, needed: usize, available: usize) -> Error {
    Error::SpecExceedsCorpus(format!("{}: need {needed} {what}, corpus has {available}", source.as_str()))
}

/// Assigns TRAIN/DEV/TEST labels. Test sets are drawn first, then dev sets;
/// everything else is training data.
pub fn split(corpus: Vec<Document>, spec: &SplitSpec) -> Result<(Vec<Document>, SplitSummary)> {
    let mut assignment: BTreeMap<String, Split> = BTreeMap::new();
    for (stream, (&source, sizes)) in spec.sizes.iter().enumerate() {
        let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
        rng.set_stream(stream as u64);
        let of_source: Vec<&Document> = corpus.iter().filter(|d| d.source == source).collect();
        let needs = [(Split::Test, sizes.test), (Split::Dev, sizes.dev)];

        let machines: Vec<&Document> = of_source
            .iter()
            .copied()
            .filter(|d| d.author == Author::Machine)
            .filter(|d| !d.model_name.as_ref().is_some_and(|m| spec.excluded_models.contains(m)))
            .collect();
        let needed: usize = needs.iter().map(|(_, n)| n - n / 2).sum();
        if machines.len() < needed {
            return Err(shortage(source, "machine essays from eligible models", needed, machines.len()));
        }
        let mut pool = shuffled(machines, &mut rng).into_iter();
        for (label, n) in needs {
            for d in pool.by_ref().take(n - n / 2) {
                assignment.insert(d.id.clone(), label);
            }
        }

        let humans: Vec<&Document> = of_source.iter().copied().filter(|d| d.author == Author::Human).collect();
        if spec.stratified.contains(&source) {
            let mut pools: Vec<std::vec::IntoIter<&Document>> = Level::ALL
                .iter()
                .map(|&l| shuffled(humans.iter().copied().filter(|d| d.level == Some(l)).collect(), &mut rng).into_iter())
                .collect();
            for (label, n) in needs {
                for ((level, quota), pool) in Level::ALL.iter().zip(largest_remainder(n / 2, &spec.level_ratio)).zip(&mut pools) {
                    let picked: Vec<&Document> = pool.by_ref().take(quota).collect();
                    if picked.len() < quota {
                        return Err(shortage(source, &format!("{} human essays", level.as_str()), quota, picked.len()));
                    }
                    picked.into_iter().for_each(|d| {
                        assignment.insert(d.id.clone(), label);
                    });
                }
            }
        } else {
            let needed: usize = needs.iter().map(|(_, n)| n / 2).sum();
            if humans.len() < needed {
                return Err(shortage(source, "human essays", needed, humans.len()));
            }
            let mut pool = shuffled(humans, &mut rng).into_iter();
            for (label, n) in needs {
                for d in pool.by_ref().take(n / 2) {
                    assignment.insert(d.id.clone(), label);
                }
            }
        }
    }
    let mut summary = SplitSummary::default();
    let labeled: Vec<Document> = corpus
        .into_iter()
        .map(|d| {
            let label = assignment.get(&d.id).copied().unwrap_or(Split::Train);
            *summary.counts.entry(key(d.source, label, d.author)).or_default() += 1;
            d.with_split(label)
        })
        .collect();
    Ok((labeled, summary))
}

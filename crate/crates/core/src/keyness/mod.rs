//! N-gram extraction and log-likelihood keyness between two corpora.

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::io::Write;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::text::Document;
use crate::{Error, Result, Scalar};

pub const DEFAULT_MIN_COUNT: usize = 5;

/// Counts of case-folded word n-grams over a corpus.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NgramTable {
    pub n: usize,
    pub counts: BTreeMap<Vec<String>, u64>,
    pub total_tokens: u64,
}

impl NgramTable {
    pub fn get(&self, ngram: &[&str]) -> u64 {
        let key: Vec<String> = ngram.iter().map(|s| s.to_string()).collect();
        self.counts.get(&key).copied().unwrap_or(0)
    }
}

fn document_ngrams(doc: &Document, n: usize) -> (HashMap<Vec<String>, u64>, u64) {
    let mut counts = HashMap::new();
    let mut total = 0;
    for sentence in doc.sentences() {
        let mut run: Vec<&str> = Vec::new();
        let mut flush = |run: &mut Vec<&str>| {
            for w in run.windows(n) {
                *counts.entry(w.iter().map(|s| s.to_string()).collect()).or_insert(0) += 1;
            }
            run.clear();
        };
        for tok in &sentence.tokens {
            if tok.is_word {
                total += 1;
                run.push(&tok.lower);
            } else {
                flush(&mut run);
            }
        }
        flush(&mut run);
    }
    (counts, total)
}

/// Word n-grams that stay inside one sentence and never span punctuation.
pub fn extract_ngrams<'a>(docs: impl IntoParallelIterator<Item = &'a Document>, n: usize) -> Result<NgramTable> {
    if !(3..=5).contains(&n) {
        return Err(Error::BadN(n));
    }
    let (counts, total_tokens) = docs
        .into_par_iter()
        .map(|d| document_ngrams(d, n))
        .reduce(
            || (HashMap::new(), 0),
            |(mut a, ta), (b, tb)| {
                for (k, v) in b {
                    *a.entry(k).or_insert(0) += v;
                }
                (a, ta + tb)
            },
        );
    Ok(NgramTable { n, counts: counts.into_iter().collect(), total_tokens })
}

fn check(a: u64, b: u64, c: u64, d: u64) -> Result<()> {
    let problem = if c == 0 || d == 0 {
        "corpus sizes must be positive"
    } else if a + b == 0 {
        "observed counts are both zero"
    } else if a > c || b > d {
        "observed count exceeds corpus size"
    } else {
        return Ok(());
    };
    Err(Error::Domain(format!("{problem} (a={a}, b={b}, c={c}, d={d})")))
}

/// Expected frequencies `(e1, e2)` under the null hypothesis.
pub fn expected<T: Scalar>(a: u64, b: u64, c: u64, d: u64) -> (T, T) {
    let f = |x: u64| T::from_u64(x).expect("count representable");
    let (a, b, c, d) = (f(a), f(b), f(c), f(d));
    (c * (a + b) / (c + d), d * (a + b) / (c + d))
}

/// `2·(a·ln(a/e1) + b·ln(b/e2))`, with `0·ln 0 = 0`.
pub fn log_likelihood<T: Scalar>(a: u64, b: u64, c: u64, d: u64) -> Result<T> {
    check(a, b, c, d)?;
    let (e1, e2) = expected::<T>(a, b, c, d);
    let term = |o: u64, e: T| {
        if o == 0 {
            T::zero()
        } else {
            let o = T::from_u64(o).expect("count representable");
            o * (o / e).ln()
        }
    };
    let ll = T::lit(2.0) * (term(a, e1) + term(b, e2));
    Ok(ll.max(T::zero()))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Direction {
    AOveruse,
    BOveruse,
}

impl Direction {
    pub fn as_str(self) -> &'static str {
        match self {
            Direction::AOveruse => "A_OVERUSE",
            Direction::BOveruse => "B_OVERUSE",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(bound = "T: Scalar")]
pub struct KeynessEntry<T> {
    pub ngram: Vec<String>,
    pub a: u64,
    pub b: u64,
    pub c: u64,
    pub d: u64,
    pub e1: T,
    pub e2: T,
    pub ll: T,
    pub direction: Direction,
}

impl<T: Scalar> KeynessEntry<T> {
    pub fn new(ngram: Vec<String>, a: u64, b: u64, c: u64, d: u64) -> Result<Self> {
        let ll = log_likelihood(a, b, c, d)?;
        let (e1, e2) = expected(a, b, c, d);
        let direction = if (a as u128) * (d as u128) > (b as u128) * (c as u128) {
            Direction::AOveruse
        } else {
            Direction::BOveruse
        };
        Ok(KeynessEntry { ngram, a, b, c, d, e1, e2, ll, direction })
    }

    pub fn phrase(&self) -> String {
        self.ngram.join(" ")
    }
}

/// Scores every n-gram with `a + b >= min_count`, returning up to `top_k`
/// corpus-A-overused entries followed by up to `top_k` corpus-B-overused
/// entries, each block by descending log-likelihood.
pub fn keyness_rank<T: Scalar>(
    table_a: &NgramTable,
    table_b: &NgramTable,
    top_k: usize,
    min_count: usize,
) -> Result<Vec<KeynessEntry<T>>> {
    if table_a.n != table_b.n {
        return Err(Error::NMismatch(table_a.n, table_b.n));
    }
    let (c, d) = (table_a.total_tokens, table_b.total_tokens);
    let mut keys: Vec<&Vec<String>> = table_a.counts.keys().chain(table_b.counts.keys()).collect();
    keys.sort();
    keys.dedup();
    let mut a_over = Vec::new();
    let mut b_over = Vec::new();
    for key in keys {
        let a = table_a.counts.get(key).copied().unwrap_or(0);
        let b = table_b.counts.get(key).copied().unwrap_or(0);
        if ((a + b) as usize) < min_count.max(1) {
            continue;
        }
        let entry = KeynessEntry::new(key.clone(), a, b, c, d)?;
        match entry.direction {
            Direction::AOveruse => a_over.push(entry),
            Direction::BOveruse => b_over.push(entry),
        }
    }
    let order = |x: &KeynessEntry<T>, y: &KeynessEntry<T>| {
        y.ll.partial_cmp(&x.ll).unwrap_or(Ordering::Equal).then_with(|| x.ngram.cmp(&y.ngram))
    };
    a_over.sort_by(order);
    b_over.sort_by(order);
    a_over.truncate(top_k);
    b_over.truncate(top_k);
    a_over.extend(b_over);
    Ok(a_over)
}

/// CSV with header `ngram,a,b,ll,direction`.
pub fn write_keyness_csv<T: Scalar, W: Write>(entries: &[KeynessEntry<T>], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["ngram", "a", "b", "ll", "direction"])?;
    for e in entries {
        w.write_record([e.phrase(), e.a.to_string(), e.b.to_string(), format!("{:.4}", e.ll), e.direction.as_str().into()])?;
    }
    w.flush().map_err(|e| Error::io("<keyness>", e))?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::text::Source;

    fn doc(text: &str) -> Document {
        Document::human("d", Source::Other, "p", text)
    }

    #[test]
    fn trigram_extraction() {
        let t = extract_ngrams(&[doc("I believe that")], 3).unwrap();
        assert_eq!(t.get(&["i", "believe", "that"]), 1);
        assert_eq!(t.counts.len(), 1);
        let t = extract_ngrams(&[doc("a . b c d")], 3).unwrap();
        assert_eq!(t.counts.len(), 1);
        assert_eq!(t.get(&["b", "c", "d"]), 1);
        assert!(extract_ngrams(&[doc("two words")], 3).unwrap().counts.is_empty());
        assert!(matches!(extract_ngrams(&[doc("x")], 2), Err(Error::BadN(2))));
    }

    #[test]
    fn clitics_are_members() {
        let t = extract_ngrams(&[doc("What's more, it works.")], 3).unwrap();
        assert_eq!(t.get(&["what", "'s", "more"]), 1);
    }

    #[test]
    fn log_likelihood_values() {
        assert_eq!(log_likelihood::<f64>(7, 7, 100, 100).unwrap(), 0.0);
        let ll: f64 = log_likelihood(10, 0, 1000, 1000).unwrap();
        assert!((ll - 20.0 * 2f64.ln()).abs() < 1e-12);
        let ll: f64 = log_likelihood(2056, 207, 1_154_134, 1_295_656).unwrap();
        assert!((ll - 1987.2).abs() / 1987.2 < 0.02, "{ll}");
        assert!(matches!(log_likelihood::<f64>(0, 0, 10, 10), Err(Error::Domain(_))));
        assert!(matches!(log_likelihood::<f64>(11, 0, 10, 10), Err(Error::Domain(_))));
        assert!(matches!(log_likelihood::<f64>(1, 0, 0, 10), Err(Error::Domain(_))));
    }

    #[test]
    fn ranking() {
        let filler = "one two three four five six seven eight nine ten. ";
        let a = extract_ngrams(&[doc(&format!("{}{}", "x y z. ".repeat(10), filler.repeat(3)))], 3).unwrap();
        let b = extract_ngrams(&[doc(&format!("{}{}", "p q. ".repeat(15), filler.repeat(3)))], 3).unwrap();
        let ranked: Vec<KeynessEntry<f64>> = keyness_rank(&a, &b, 20, 2).unwrap();
        assert_eq!(ranked[0].ngram, ["x", "y", "z"]);
        assert_eq!(ranked[0].direction, Direction::AOveruse);
        let same: Vec<KeynessEntry<f64>> = keyness_rank(&a, &a, 20, 1).unwrap();
        assert!(same.iter().all(|e| e.ll == 0.0));
        let a4 = extract_ngrams(&[doc("a b c d")], 4).unwrap();
        assert!(matches!(keyness_rank::<f64>(&a, &a4, 20, 1), Err(Error::NMismatch(3, 4))));
    }
}

use serde::{Deserialize, Serialize};

use crate::text::Document;
use crate::{mean, Error, Result, Scalar};

/// Mean essay, paragraph and sentence lengths in words, and mean paragraph
/// and sentence counts per essay.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(bound = "T: Scalar")]
pub struct DescriptiveStats<T> {
    pub essay_len: T,
    pub para_len: T,
    pub sent_len: T,
    pub n_paras: T,
    pub n_sents: T,
}

pub fn descriptive_stats<T: Scalar>(docs: &[Document]) -> Result<DescriptiveStats<T>> {
    if docs.is_empty() {
        return Err(Error::EmptyGroup);
    }
    let mut essay = Vec::new();
    let mut para = Vec::new();
    let mut sent = Vec::new();
    let mut n_paras = Vec::new();
    let mut n_sents = Vec::new();
    for d in docs {
        essay.push(T::count(d.word_count()));
        n_paras.push(T::count(d.paragraphs().len()));
        n_sents.push(T::count(d.sentence_count()));
        let per_para: Vec<T> = d.paragraphs().iter().map(|p| T::count(p.word_count())).collect();
        let per_sent: Vec<T> = d.sentences().map(|s| T::count(s.word_count())).collect();
        para.extend(mean(&per_para));
        sent.extend(mean(&per_sent));
    }
    let m = |v: &[T]| mean(v).unwrap_or_else(T::zero);
    Ok(DescriptiveStats {
        essay_len: m(&essay),
        para_len: m(&para),
        sent_len: m(&sent),
        n_paras: m(&n_paras),
        n_sents: m(&n_sents),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::text::Source;

    fn doc(text: &str) -> Document {
        Document::human("d", Source::Other, "p", text)
    }

    #[test]
    fn essay_length_mean() {
        let ten = "one two three four five six seven eight nine ten.";
        let twenty = format!("{ten} {ten}");
        let s: DescriptiveStats<f64> = descriptive_stats(&[doc(ten), doc(&twenty)]).unwrap();
        assert_eq!(s.essay_len, 15.0);
    }

    #[test]
    fn paragraph_and_sentence_counts() {
        let s: DescriptiveStats<f64> = descriptive_stats(&[doc("A b. C d.\n\nE f. G h.")]).unwrap();
        assert_eq!(s.n_paras, 2.0);
        assert_eq!(s.n_sents, 4.0);
        assert_eq!(s.para_len, 4.0);
        assert_eq!(s.sent_len, 2.0);
    }

    #[test]
    fn empty_group() {
        assert!(matches!(descriptive_stats::<f64>(&[]), Err(Error::EmptyGroup)));
    }
}

use std::collections::HashSet;

use essaylens::pipeline::{filter_essay, sentence_similar, split, FilterConfig, FilterReason, SplitSizes, SplitSpec};
use essaylens::text::{Author, Document, Level, Source, Split};
use proptest::prelude::*;

fn sentence_text(words: &[u8]) -> String {
    let body: Vec<String> = words.iter().map(|w| format!("w{w}")).collect();
    format!("Start {}.", body.join(" "))
}

fn corpus(humans: [usize; 3], machines: usize, models: &[&str]) -> Vec<Document> {
    let mut out = Vec::new();
    for (level, n) in Level::ALL.into_iter().zip(humans) {
        for i in 0..n {
            out.push(Document::human(format!("h-{}-{i}", level.as_str()), Source::Weccl, "p", "Text.").with_level(level));
        }
    }
    for i in 0..machines {
        out.push(Document::machine(format!("m-{i}"), Source::Weccl, models[i % models.len()], "p", "Text."));
    }
    out
}

proptest! {
    #[test]
    fn similarity_is_symmetric_and_reflexive(a in prop::collection::vec(0u8..20, 1..15), b in prop::collection::vec(0u8..20, 1..15)) {
        let doc = Document::human("d", Source::Other, "p", format!("{} {}", sentence_text(&a), sentence_text(&b)));
        let s: Vec<_> = doc.sentences().collect();
        prop_assert_eq!(s.len(), 2);
        prop_assert!(sentence_similar(s[0], s[0]));
        prop_assert_eq!(sentence_similar(s[0], s[1]), sentence_similar(s[1], s[0]));
    }

    #[test]
    fn raising_min_words_never_unfilters(len in 1usize..300, low in 1usize..200, extra in 0usize..200) {
        let text = (0..len).map(|i| format!("v{i}")).collect::<Vec<_>>().join(" ");
        let doc = Document::machine("m", Source::Other, "gpt-4", "p", text);
        let at = |min_words| filter_essay(&doc, &[], &FilterConfig { min_words, ..Default::default() }).reason;
        if at(low) == FilterReason::Short {
            prop_assert_eq!(at(low + extra), FilterReason::Short);
        }
    }

    #[test]
    fn disjoint_sentences_are_never_repetitive(n in 1usize..30) {
        let text: Vec<String> = (0..n)
            .map(|i| format!("S{i}a {}.", (0..6).map(|j| format!("s{i}w{j}")).collect::<Vec<_>>().join(" ")))
            .collect();
        let doc = Document::machine("m", Source::Other, "gpt2-xl", "p", text.join(" "));
        let cfg = FilterConfig { min_words: 0, gpt2_min_words: 0, ..Default::default() };
        prop_assert_ne!(filter_essay(&doc, &[], &cfg).reason, FilterReason::Repetitive);
    }

    #[test]
    fn split_is_a_deterministic_partition(seed in any::<u64>(), extra in 0usize..20, size in 1usize..6) {
        let spec = SplitSpec {
            seed,
            sizes: [(Source::Weccl, SplitSizes { dev: size * 10, test: size * 10 })].into_iter().collect(),
            ..SplitSpec::default()
        };
        let docs = corpus([2 * size + extra, 6 * size + extra, 2 * size + extra], 20 * size + extra, &["gpt-4", "text-davinci-001", "gpt-3.5-turbo"]);
        let ids: Vec<String> = docs.iter().map(|d| d.id.clone()).collect();
        let (a, _) = split(docs.clone(), &spec).unwrap();
        let (b, _) = split(docs, &spec).unwrap();
        prop_assert_eq!(&a, &b);
        prop_assert_eq!(a.iter().map(|d| d.id.clone()).collect::<Vec<_>>(), ids);
        prop_assert!(a.iter().all(|d| d.split.is_some()));
        let unique: HashSet<_> = a.iter().map(|d| &d.id).collect();
        prop_assert_eq!(unique.len(), a.len());
        for label in [Split::Dev, Split::Test] {
            let held: Vec<_> = a.iter().filter(|d| d.split == Some(label)).collect();
            prop_assert_eq!(held.len(), size * 10);
            prop_assert_eq!(held.iter().filter(|d| d.author == Author::Human).count(), size * 5);
            prop_assert!(held.iter().all(|d| d.model_name.as_deref() != Some("text-davinci-001")));
        }
    }
}

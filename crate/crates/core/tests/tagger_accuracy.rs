use essaylens::annotate::{ingest_tagged, tag_with, BaselineTagger, Tagger, TaggedDocument};

fn gold() -> TaggedDocument {
    ingest_tagged(concat!(env!("CARGO_MANIFEST_DIR"), "/tests/fixtures/pos_gold.tsv")).unwrap()
}

#[test]
fn baseline_reaches_ninety_percent_on_gold_fixture() {
    let gold = gold();
    assert!(gold.len() >= 500);
    let tagger = BaselineTagger::new();
    let predicted = tag_with(gold.document(), &tagger);
    let mut errors = Vec::new();
    for ((tok, g), p) in gold.pairs().zip(predicted.tags()) {
        if g != *p {
            errors.push(format!("{}: gold {} got {}", tok.surface, g, p));
        }
    }
    let accuracy = 1.0 - errors.len() as f64 / gold.len() as f64;
    eprintln!("accuracy {accuracy:.4}\n{}", errors.join("\n"));
    assert!(accuracy >= 0.90, "accuracy {accuracy}");
}

#[test]
fn punctuation_tokens_get_punctuation_tags() {
    let gold = gold();
    let tagger = BaselineTagger::new();
    for sent in gold.document().sentences() {
        for (tok, tag) in sent.tokens.iter().zip(tagger.tag_sentence(&sent.tokens)) {
            assert_eq!(tok.is_punct, tag.is_punct(), "{}", tok.surface);
        }
    }
}

#[test]
fn lexical_tokens_never_exceed_word_tokens() {
    let gold = gold();
    let lexical = gold.word_classes().iter().filter(|c| c.is_lexical()).count();
    assert!(lexical <= gold.document().word_count());
    assert_eq!(gold.word_classes().len(), gold.len());
}

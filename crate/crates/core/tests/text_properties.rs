use essaylens::text::{normalize, read_jsonl_str, segment, tokenize, write_jsonl_string, Document, Source};
use proptest::prelude::*;

fn messy_text() -> impl Strategy<Value = String> {
    let piece = prop_oneof![
        4 => "[a-zA-Z]{1,8}",
        1 => Just("i".to_string()),
        1 => Just("don-t".to_string()),
        1 => Just("what's".to_string()),
        1 => prop::sample::select(vec![".", ",", "!", "?", ";", ":", "'", "\"", "(", ")", "-", "...", "U.S.", "3.5"]).prop_map(String::from),
        1 => prop::sample::select(vec![" ", "  ", "\n", "\n\n", "\t", " \n \n"]).prop_map(String::from),
        1 => Just("As an AI model".to_string()),
    ];
    prop::collection::vec(piece, 0..40).prop_map(|v| v.join(" "))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(512))]

    #[test]
    fn normalize_is_idempotent_on_unicode(s in "\\PC*", strip in any::<bool>()) {
        let once = normalize(&s, strip);
        prop_assert_eq!(normalize(&once, strip), once);
    }

    #[test]
    fn normalize_is_idempotent_on_messy_text(s in messy_text(), strip in any::<bool>()) {
        let once = normalize(&s, strip);
        prop_assert_eq!(normalize(&once, strip), once);
    }

    #[test]
    fn tokenization_only_drops_whitespace(s in "\\PC*") {
        let joined: String = tokenize(&s).iter().map(|t| t.surface.as_str()).collect();
        let expected: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        prop_assert_eq!(joined, expected);
    }

    #[test]
    fn normalized_tokens_have_no_whitespace(s in "\\PC*") {
        for t in tokenize(&normalize(&s, false)) {
            prop_assert!(!t.surface.chars().any(char::is_whitespace));
            prop_assert!(t.is_word != t.is_punct);
            prop_assert_eq!(&t.lower, &t.surface.to_lowercase());
        }
    }

    #[test]
    fn segmentation_covers_every_token(s in messy_text()) {
        let flat: Vec<String> = segment(&s)
            .iter()
            .flat_map(|p| p.sentences.iter().flat_map(|x| x.tokens.iter().map(|t| t.surface.clone())))
            .collect();
        let direct: Vec<String> = tokenize(&s).into_iter().map(|t| t.surface).collect();
        prop_assert_eq!(flat, direct);
        for (pi, p) in segment(&s).iter().enumerate() {
            prop_assert_eq!(p.index, pi);
            prop_assert!(!p.sentences.is_empty());
            for (si, sent) in p.sentences.iter().enumerate() {
                prop_assert_eq!(sent.index, si);
                prop_assert!(!sent.tokens.is_empty());
            }
        }
    }

    #[test]
    fn jsonl_round_trip_preserves_structure(s in messy_text()) {
        let doc = Document::human("d", Source::Weccl, "p", s);
        let back = read_jsonl_str(&write_jsonl_string([&doc])).unwrap();
        prop_assert_eq!(back[0].word_count(), doc.word_count());
        prop_assert_eq!(back[0].paragraphs(), doc.paragraphs());
    }
}

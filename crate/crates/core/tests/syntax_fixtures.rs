mod oracles;

use essaylens::syntax::{
    count_units, extract_cfg_rules, parse_bracketed, read_tree_file, syntactic_profile, ParseTree,
    SyntacticCounts, SyntacticProfile, TreeSection,
};
use oracles::syntactic::{profile_oracle, reference, HAND_COUNTS};
use proptest::prelude::*;

fn fixtures() -> Vec<TreeSection> {
    read_tree_file(concat!(env!("CARGO_MANIFEST_DIR"), "/tests/fixtures/trees.mrg")).unwrap()
}

#[test]
fn fixture_trees_match_hand_counts() {
    let sections = fixtures();
    assert_eq!(sections.len(), HAND_COUNTS.len());
    for (section, &(id, words, clauses, t_units, cp, cn)) in sections.iter().zip(&HAND_COUNTS) {
        assert_eq!(section.id, id);
        let got = count_units(&section.trees);
        let want = SyntacticCounts {
            words,
            sentences: 1,
            clauses,
            t_units,
            coord_phrases: cp,
            complex_nominals: cn,
        };
        assert_eq!(got, want, "{id}");
    }
}

#[test]
fn fixture_trees_match_reference_counter() {
    for section in fixtures() {
        assert_eq!(count_units(&section.trees), reference(&section.trees), "{}", section.id);
    }
}

#[test]
fn profile_matches_ratio_oracle() {
    let sections = fixtures();
    let all: Vec<ParseTree> = sections.iter().flat_map(|s| s.trees.clone()).collect();
    for trees in sections.iter().map(|s| s.trees.as_slice()).chain([all.as_slice()]) {
        let counts = count_units(trees);
        let got: SyntacticProfile<f64> = syntactic_profile(&counts);
        for ((name, g), (wname, w)) in got.values().iter().zip(profile_oracle(&reference(trees))) {
            assert_eq!(*name, wname);
            match (g, w) {
                (Some(g), Some(w)) => assert!((g - w).abs() < 1e-9, "{name}: {g} vs {w}"),
                (None, None) => {}
                _ => panic!("{name}: {g:?} vs {w:?}"),
            }
        }
    }
}

#[test]
fn counts_are_additive_over_documents() {
    let sections = fixtures();
    let all: Vec<ParseTree> = sections.iter().flat_map(|s| s.trees.clone()).collect();
    let summed = sections.iter().fold(SyntacticCounts::default(), |acc, s| acc + count_units(&s.trees));
    assert_eq!(count_units(&all), summed);
    assert_eq!(summed.words, 57);
    assert_eq!(summed.clauses, 13);
    assert_eq!(summed.t_units, 10);
}

fn internal_with_nonterminal_children(t: &ParseTree) -> usize {
    usize::from(!t.children.is_empty()) + t.children.iter().map(internal_with_nonterminal_children).sum::<usize>()
}

fn arb_tree() -> impl Strategy<Value = ParseTree> {
    let word = prop::sample::select(vec!["I", "run", "cats", "and", ",", ".", "the", "old"]);
    let tag = prop::sample::select(vec!["PRP", "VBP", "VBD", "NNS", "CC", ",", ".", "DT", "JJ", "MD", "VBG", "TO"]);
    let leaf = (tag, word).prop_map(|(t, w)| ParseTree::preterminal(t, w));
    leaf.prop_recursive(5, 48, 4, |inner| {
        let label = prop::sample::select(vec!["S", "NP", "VP", "SBAR", "PP", "ADJP", "SQ", "FRAG", "NP-SBJ"]);
        (label, prop::collection::vec(inner, 1..4)).prop_map(|(l, c)| ParseTree::node(l, c))
    })
}

proptest! {
    #[test]
    fn serialize_parse_round_trip(t in arb_tree()) {
        let parsed = parse_bracketed(&t.to_bracketed()).unwrap();
        prop_assert_eq!(parsed, vec![t]);
    }

    #[test]
    fn rule_total_equals_internal_nodes(t in arb_tree()) {
        let total: usize = extract_cfg_rules([&t]).values().sum();
        prop_assert_eq!(total, internal_with_nonterminal_children(&t));
    }

    #[test]
    fn counter_matches_reference(t in arb_tree()) {
        let trees = vec![t];
        let got = count_units(&trees);
        prop_assert_eq!(got, reference(&trees));
        prop_assert!(got.t_units <= got.clauses + got.sentences);
    }

    #[test]
    fn profile_values_nonnegative(t in arb_tree()) {
        let counts = count_units([&t]);
        let p: SyntacticProfile<f64> = syntactic_profile(&counts);
        for (_, v) in p.values() {
            prop_assert!(v.is_none_or(|x| x >= 0.0));
        }
        if counts.t_units <= counts.clauses {
            if let (Some(mlt), Some(mlc)) = (p.mlt, p.mlc) {
                prop_assert!(mlt >= mlc);
            }
        }
    }
}

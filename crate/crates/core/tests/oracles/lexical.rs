use std::collections::HashSet;

use essaylens::annotate::{classify_word, ingest_tagged_str, AuxLexicon, Lexicon, TaggedDocument, WordClass};
use essaylens::lexmetrics::FrequencyList;
use rand::seq::index;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub const VOCAB: &[(&str, &str)] = &[
    ("the", "DT"), ("people", "NNS"), ("think", "VBP"), ("is", "VBZ"), ("quickly", "RB"), ("very", "RB"),
    ("happy", "JJ"), ("ubiquitous", "JJ"), ("elucidate", "VB"), ("paradigm", "NN"), (".", "."), (",", ","),
    ("can", "MD"), ("'s", "POS"), ("2020", "CD"), ("well", "RB"), ("analyze", "VB"), ("substantially", "RB"),
    ("Cat", "NN"), ("cat", "NN"), ("run", "VB"), ("ran", "VBD"), ("have", "VBP"), ("meticulous", "JJ"),
    ("meticulously", "RB"), ("life", "NN"), ("young", "JJ"), ("enjoy", "VBP"), ("and", "CC"), ("of", "IN"),
    ("perseverance", "NN"), ("flourish", "VB"), ("good", "JJ"), ("time", "NN"), ("make", "VB"), ("early", "RB"),
];

pub fn synthetic(seed: u64) -> TaggedDocument {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let len = rng.gen_range(20..260);
    let mut tsv = String::new();
    for i in 0..len {
        let (w, t) = VOCAB[rng.gen_range(0..VOCAB.len())];
        tsv.push_str(&format!("{w}\t{t}\n"));
        if i % 17 == 16 {
            tsv.push('\n');
        }
    }
    ingest_tagged_str(&format!("syn{seed}"), &tsv).unwrap()
}

/// Direct transcription of the measure table, in f64.
pub fn oracle(doc: &TaggedDocument, freq: &FrequencyList, seed: u64) -> Vec<(&'static str, Option<f64>)> {
    let aux = AuxLexicon::default();
    let lex = Lexicon::builtin();
    let mut words = Vec::new();
    let mut classes = Vec::new();
    for (tok, tag) in doc.pairs() {
        if tok.is_word {
            words.push(tok.lower.clone());
            classes.push(classify_word(tok, tag, &aux, lex));
        }
    }
    let soph = |w: &str| {
        w.chars().next().unwrap().is_alphabetic()
            && w.chars().last().unwrap().is_alphabetic()
            && w.chars().all(|c| c.is_alphabetic() || c == '-' || c == '\'')
            && !freq.contains(w)
    };
    let distinct = |pred: &dyn Fn(usize) -> bool| {
        (0..words.len()).filter(|&i| pred(i)).map(|i| words[i].as_str()).collect::<HashSet<_>>().len() as f64
    };
    let count = |pred: &dyn Fn(usize) -> bool| (0..words.len()).filter(|&i| pred(i)).count() as f64;
    let lexical = |i: usize| classes[i] != WordClass::Other;
    let verb = |i: usize| classes[i] == WordClass::VerbLexical;
    let n = words.len() as f64;
    let t = distinct(&|_| true);
    let n_lex = count(&lexical);
    let t_lex = distinct(&lexical);
    let n_slex = count(&|i| lexical(i) && soph(&words[i]));
    let t_s = distinct(&|i| soph(&words[i]));
    let n_verb = count(&verb);
    let t_verb = distinct(&verb);
    let t_sverb = distinct(&|i| verb(i) && soph(&words[i]));
    let t_noun = distinct(&|i| classes[i] == WordClass::Noun);
    let t_adj = distinct(&|i| classes[i] == WordClass::Adj);
    let t_adv = distinct(&|i| classes[i] == WordClass::AdvLexical);
    let div = |a: f64, b: f64| if b == 0.0 { None } else { Some(a / b) };
    let types = |ws: &[&String]| ws.iter().collect::<HashSet<_>>().len() as f64;

    let (mut ndw50, mut ndwer50, mut ndwes50, mut msttr50) = (None, None, None, None);
    if words.len() >= 50 {
        let refs: Vec<&String> = words.iter().collect();
        ndw50 = Some(types(&refs[..50]));
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut total = 0.0;
        for _ in 0..10 {
            let picked: Vec<&String> = index::sample(&mut rng, words.len(), 50).iter().map(|i| &words[i]).collect();
            total += types(&picked);
        }
        ndwer50 = Some(total / 10.0);
        let mut total = 0.0;
        for _ in 0..10 {
            let s = rng.gen_range(0..=words.len() - 50);
            total += types(&refs[s..s + 50]);
        }
        ndwes50 = Some(total / 10.0);
        let segs = words.len() / 50;
        let sum: f64 = (0..segs).map(|k| types(&refs[k * 50..k * 50 + 50]) / 50.0).sum();
        msttr50 = Some(sum / segs as f64);
    }

    vec![
        ("ld", div(n_lex, n)),
        ("ls1", div(n_slex, n_lex)),
        ("ls2", div(t_s, t)),
        ("vs1", div(t_sverb, n_verb)),
        ("vs2", div(t_sverb * t_sverb, n_verb)),
        ("cvs1", div(t_sverb, (2.0 * n_verb).sqrt())),
        ("ndw", Some(t)),
        ("ndw50", ndw50),
        ("ndwer50", ndwer50),
        ("ndwes50", ndwes50),
        ("ttr", div(t, n)),
        ("msttr50", msttr50),
        ("cttr", div(t, (2.0 * n).sqrt())),
        ("rttr", div(t, n.sqrt())),
        ("logttr", div(t.ln(), n.ln())),
        ("uber", div(n.ln().powi(2), (n / t).ln())),
        ("lv", div(t_lex, n_lex)),
        ("vv1", div(t_verb, n_verb)),
        ("svv1", div(t_verb * t_verb, n_verb)),
        ("cvv1", div(t_verb, (2.0 * n_verb).sqrt())),
        ("vv2", div(t_verb, n_lex)),
        ("nv", div(t_noun, n_lex)),
        ("adjv", div(t_adj, n_lex)),
        ("advv", div(t_adv, n_lex)),
        ("modv", div(t_adj + t_adv, n_lex)),
    ]
}

use std::collections::HashSet;

use rand::seq::index;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{lexical_counts, FrequencyList, LexicalCounts};
use crate::annotate::TaggedDocument;
use crate::scalar::ratio;
use crate::{Result, Scalar};

pub const DEFAULT_SEED: u64 = 42;

const WINDOW: usize = 50;
const DRAWS: usize = 10;

macro_rules! profile_struct {
    ($($name:ident),* $(,)?) => {
        /// The 25 lexical measures. `None` marks an undefined value.
        #[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
        #[serde(bound = "T: Scalar")]
        pub struct LexicalProfile<T> {
            $(pub $name: Option<T>,)*
        }

        impl<T: Scalar> LexicalProfile<T> {
            pub const NAMES: [&'static str; 25] = [$(stringify!($name)),*];

            pub fn values(&self) -> [(&'static str, Option<T>); 25] {
                [$((stringify!($name), self.$name)),*]
            }
        }
    };
}

profile_struct!(
    ld, ls1, ls2, vs1, vs2, cvs1, ndw, ndw50, ndwer50, ndwes50, ttr, msttr50, cttr, rttr, logttr, uber, lv, vv1, svv1,
    cvv1, vv2, nv, adjv, advv, modv,
);

fn types_in<'a>(words: impl IntoIterator<Item = &'a str>) -> usize {
    words.into_iter().collect::<HashSet<_>>().len()
}

/// Applies the 25 formulas to `counts`; the 50-word measures read the word
/// sequence of `doc` and draw samples from a ChaCha8 stream seeded with `seed`.
pub fn lexical_profile<T: Scalar>(counts: &LexicalCounts, doc: &TaggedDocument, seed: u64) -> LexicalProfile<T> {
    let c = |n: usize| T::count(n);
    let two = T::lit(2.0);
    let n = c(counts.n);
    let t = c(counts.t);
    let n_lex = c(counts.n_lex);
    let n_verb = c(counts.n_verb);
    let t_verb = c(counts.t_verb);
    let t_sverb = c(counts.t_sverb);

    let words: Vec<&str> = doc.document().words().map(|w| w.lower.as_str()).collect();
    let mut p = LexicalProfile {
        ld: ratio(n_lex, n),
        ls1: ratio(c(counts.n_slex), n_lex),
        ls2: ratio(c(counts.t_s), t),
        vs1: ratio(t_sverb, n_verb),
        vs2: ratio(t_sverb * t_sverb, n_verb),
        cvs1: ratio(t_sverb, (two * n_verb).sqrt()),
        ndw: Some(t),
        ttr: ratio(t, n),
        cttr: ratio(t, (two * n).sqrt()),
        rttr: ratio(t, n.sqrt()),
        logttr: ratio(t.ln(), n.ln()),
        uber: ratio(n.ln() * n.ln(), (n / t).ln()),
        lv: ratio(c(counts.t_lex), n_lex),
        vv1: ratio(t_verb, n_verb),
        svv1: ratio(t_verb * t_verb, n_verb),
        cvv1: ratio(t_verb, (two * n_verb).sqrt()),
        vv2: ratio(t_verb, n_lex),
        nv: ratio(c(counts.t_noun), n_lex),
        adjv: ratio(c(counts.t_adj), n_lex),
        advv: ratio(c(counts.t_adv), n_lex),
        modv: ratio(c(counts.t_adj + counts.t_adv), n_lex),
        ..Default::default()
    };
    if words.len() >= WINDOW {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let random: Vec<T> = (0..DRAWS)
            .map(|_| c(types_in(index::sample(&mut rng, words.len(), WINDOW).iter().map(|i| words[i]))))
            .collect();
        let contiguous: Vec<T> = (0..DRAWS)
            .map(|_| {
                let start = rng.gen_range(0..=words.len() - WINDOW);
                c(types_in(words[start..start + WINDOW].iter().copied()))
            })
            .collect();
        let segments: Vec<T> = words
            .chunks_exact(WINDOW)
            .map(|seg| c(types_in(seg.iter().copied())) / c(WINDOW))
            .collect();
        p.ndw50 = Some(c(types_in(words[..WINDOW].iter().copied())));
        p.ndwer50 = crate::mean(&random);
        p.ndwes50 = crate::mean(&contiguous);
        p.msttr50 = crate::mean(&segments);
    }
    p
}

/// Counts and profiles a single document.
pub fn profile_document<T: Scalar>(doc: &TaggedDocument, freq: &FrequencyList, seed: u64) -> Result<LexicalProfile<T>> {
    let counts = lexical_counts(doc, freq)?;
    Ok(lexical_profile(&counts, doc, seed))
}

/// Profiles documents in parallel, preserving input order.
pub fn profile_corpus<T: Scalar>(
    docs: &[TaggedDocument],
    freq: &FrequencyList,
    seed: u64,
) -> Vec<Result<LexicalProfile<T>>> {
    docs.par_iter().map(|d| profile_document(d, freq, seed)).collect()
}

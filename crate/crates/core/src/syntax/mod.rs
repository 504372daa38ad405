//! Constituency trees, production-unit counts and the six syntactic
//! complexity ratios.

mod rules;
mod tree;
mod units;

pub use rules::{extract_cfg_rules, CfgRule, RuleCounts};
pub use tree::{parse_bracketed, parse_tree_file_str, read_tree_file, ParseTree, TreeSection};
pub use units::{count_units, SyntacticCounts};

use serde::{Deserialize, Serialize};

use crate::scalar::ratio;
use crate::Scalar;

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
#[serde(bound = "T: Scalar")]
pub struct SyntacticProfile<T> {
    /// Mean length of clause.
    pub mlc: Option<T>,
    /// Mean length of T-unit.
    pub mlt: Option<T>,
    pub cp_c: Option<T>,
    pub cp_t: Option<T>,
    pub cn_c: Option<T>,
    pub cn_t: Option<T>,
}

impl<T: Scalar> SyntacticProfile<T> {
    pub const NAMES: [&'static str; 6] = ["mlc", "mlt", "cp_c", "cp_t", "cn_c", "cn_t"];

    pub fn values(&self) -> [(&'static str, Option<T>); 6] {
        [
            ("mlc", self.mlc),
            ("mlt", self.mlt),
            ("cp_c", self.cp_c),
            ("cp_t", self.cp_t),
            ("cn_c", self.cn_c),
            ("cn_t", self.cn_t),
        ]
    }
}

pub fn syntactic_profile<T: Scalar>(counts: &SyntacticCounts) -> SyntacticProfile<T> {
    let c = |n: usize| T::count(n);
    let clauses = c(counts.clauses);
    let t_units = c(counts.t_units);
    SyntacticProfile {
        mlc: ratio(c(counts.words), clauses),
        mlt: ratio(c(counts.words), t_units),
        cp_c: ratio(c(counts.coord_phrases), clauses),
        cp_t: ratio(c(counts.coord_phrases), t_units),
        cn_c: ratio(c(counts.complex_nominals), clauses),
        cn_t: ratio(c(counts.complex_nominals), t_units),
    }
}

use std::ops::{Add, AddAssign};

use serde::{Deserialize, Serialize};

use super::ParseTree;

/// Raw production-unit tallies over a set of sentence trees.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct SyntacticCounts {
    pub words: usize,
    pub sentences: usize,
    pub clauses: usize,
    pub t_units: usize,
    pub coord_phrases: usize,
    pub complex_nominals: usize,
}

impl Add for SyntacticCounts {
    type Output = SyntacticCounts;

    fn add(self, o: SyntacticCounts) -> SyntacticCounts {
        SyntacticCounts {
            words: self.words + o.words,
            sentences: self.sentences + o.sentences,
            clauses: self.clauses + o.clauses,
            t_units: self.t_units + o.t_units,
            coord_phrases: self.coord_phrases + o.coord_phrases,
            complex_nominals: self.complex_nominals + o.complex_nominals,
        }
    }
}

impl AddAssign for SyntacticCounts {
    fn add_assign(&mut self, o: SyntacticCounts) {
        *self = *self + o;
    }
}

const S_LIKE: &[&str] = &["S", "SINV", "SQ", "SBARQ"];
const FINITE: &[&str] = &["VBD", "VBP", "VBZ", "MD"];
const COORDINABLE: &[&str] = &["ADJP", "ADVP", "NP", "VP"];
const NP_MODIFIERS: &[&str] = &["JJ", "JJR", "JJS", "POS", "PP", "S", "SBAR", "VBG", "VBN"];

fn is_s_like(t: &ParseTree) -> bool {
    !t.is_preterminal() && S_LIKE.contains(&t.base_label())
}

/// A finite verb reached through the node's own children or, recursively,
/// through its VP children (which also covers coordinated VPs).
fn has_finite_head(t: &ParseTree) -> bool {
    t.children.iter().any(|c| {
        let l = c.base_label();
        (c.is_preterminal() && FINITE.contains(&l)) || (l == "VP" && !c.is_preterminal() && has_finite_head(c))
    })
}

fn is_clause(t: &ParseTree) -> bool {
    is_s_like(t) && has_finite_head(t)
}

fn t_units_at_root(root: &ParseTree) -> usize {
    if root.base_label() == "ROOT" {
        return root.children.iter().map(t_units_at_root).sum();
    }
    if !is_s_like(root) {
        return 0;
    }
    let conjuncts = root.children.iter().filter(|c| is_clause(c)).count();
    conjuncts.max(1)
}

fn is_coordinate_phrase(t: &ParseTree) -> bool {
    if t.is_preterminal() || !COORDINABLE.contains(&t.base_label()) {
        return false;
    }
    let kids = &t.children;
    kids.iter().enumerate().any(|(i, c)| {
        matches!(c.base_label(), "CC" | "CONJP")
            && kids[..i].iter().any(|s| !s.is_punct())
            && kids[i + 1..].iter().any(|s| !s.is_punct())
    })
}

fn dominates(t: &ParseTree, pred: &dyn Fn(&ParseTree) -> bool) -> bool {
    t.children.iter().any(|c| pred(c) || dominates(c, pred))
}

fn has_appositive(t: &ParseTree) -> bool {
    let kids = &t.children;
    let direct = kids.iter().enumerate().any(|(i, c)| {
        c.base_label() == "NP"
            && kids.get(i + 1).is_none_or(|n| n.base_label() != "CC")
            && kids[i + 1..].iter().any(|s| s.base_label() == "NP")
    });
    direct || t.children.iter().any(has_appositive)
}

fn complex_np(t: &ParseTree) -> bool {
    dominates(t, &|d: &ParseTree| NP_MODIFIERS.contains(&d.base_label())) || has_appositive(t)
}

fn nominal_clause(t: &ParseTree, parent: Option<&ParseTree>, next: Option<&ParseTree>) -> bool {
    let introduced = match t.children.first() {
        Some(first) => {
            let l = first.base_label();
            l == "WHNP"
                || l == "S"
                || (l == "IN" && first.leaf.as_deref().is_some_and(|w| w.eq_ignore_ascii_case("that") || w.eq_ignore_ascii_case("for")))
        }
        None => false,
    };
    let position = next.is_some_and(|n| n.base_label() == "VP") || parent.is_some_and(|p| p.base_label() == "VP");
    introduced && position
}

fn verbal_subject(t: &ParseTree, next: Option<&ParseTree>) -> bool {
    let headed = t.children.iter().any(|c| {
        c.base_label() == "VP" && c.children.first().is_some_and(|h| matches!(h.base_label(), "VBG" | "TO"))
    });
    headed && next.is_some_and(|n| n.base_label() == "VP")
}

fn visit(t: &ParseTree, parent: Option<&ParseTree>, next: Option<&ParseTree>, c: &mut SyntacticCounts) {
    if t.is_preterminal() {
        return;
    }
    if is_clause(t) {
        c.clauses += 1;
    }
    if is_coordinate_phrase(t) {
        c.coord_phrases += 1;
    }
    let label = t.base_label();
    let under_np = parent.is_some_and(|p| p.base_label() == "NP");
    if (label == "NP" && !under_np && complex_np(t))
        || (label == "SBAR" && nominal_clause(t, parent, next))
        || (label == "S" && verbal_subject(t, next))
    {
        c.complex_nominals += 1;
    }
    for (i, child) in t.children.iter().enumerate() {
        visit(child, Some(t), t.children.get(i + 1), c);
    }
}

/// Counts words, clauses, T-units, coordinate phrases and complex nominals.
/// Each tree is one sentence.
pub fn count_units<'a>(trees: impl IntoIterator<Item = &'a ParseTree>) -> SyntacticCounts {
    let mut c = SyntacticCounts::default();
    for tree in trees {
        c.sentences += 1;
        c.words += tree.word_count();
        c.t_units += t_units_at_root(tree);
        visit(tree, None, None, &mut c);
    }
    c
}

use essaylens::syntax::{ParseTree, SyntacticCounts};

// (id, words, clauses, t_units, coord_phrases, complex_nominals), counted by hand
pub const HAND_COUNTS: [(&str, usize, usize, usize, usize, usize); 10] = [
    ("t01", 2, 1, 1, 0, 0),
    ("t02", 4, 1, 1, 1, 0),
    ("t03", 5, 2, 2, 0, 0),
    ("t04", 8, 2, 1, 0, 2),
    ("t05", 9, 2, 1, 0, 1),
    ("t06", 5, 1, 1, 0, 1),
    ("t07", 6, 1, 1, 1, 1),
    ("t08", 5, 1, 1, 1, 0),
    ("t09", 3, 0, 0, 0, 1),
    ("t10", 10, 2, 1, 0, 3),
];

/// Flattened view of a tree: every node with its parent and next sibling.
pub struct Flat<'a> {
    nodes: Vec<&'a ParseTree>,
    parent: Vec<Option<usize>>,
    next: Vec<Option<usize>>,
}

pub fn flatten(root: &ParseTree) -> Flat<'_> {
    let mut f = Flat { nodes: vec![], parent: vec![], next: vec![] };
    fn go<'a>(t: &'a ParseTree, parent: Option<usize>, f: &mut Flat<'a>) -> usize {
        let me = f.nodes.len();
        f.nodes.push(t);
        f.parent.push(parent);
        f.next.push(None);
        let mut prev: Option<usize> = None;
        for c in &t.children {
            let id = go(c, Some(me), f);
            if let Some(p) = prev {
                f.next[p] = Some(id);
            }
            prev = Some(id);
        }
        me
    }
    go(root, None, &mut f);
    f
}

pub fn label(t: &ParseTree) -> &str {
    if t.label.starts_with('-') {
        &t.label
    } else {
        t.label.split(['-', '=']).next().unwrap()
    }
}

pub fn descendants(t: &ParseTree) -> Vec<&ParseTree> {
    let mut out = vec![];
    for c in &t.children {
        out.push(c);
        out.extend(descendants(c));
    }
    out
}

pub fn finite(t: &ParseTree) -> bool {
    for c in &t.children {
        match label(c) {
            "VBD" | "VBP" | "VBZ" | "MD" if c.leaf.is_some() => return true,
            "VP" if c.leaf.is_none() && finite(c) => return true,
            _ => {}
        }
    }
    false
}

pub fn s_like(t: &ParseTree) -> bool {
    t.leaf.is_none() && ["S", "SINV", "SQ", "SBARQ"].contains(&label(t))
}

pub fn reference(trees: &[ParseTree]) -> SyntacticCounts {
    let mut c = SyntacticCounts::default();
    for tree in trees {
        c.sentences += 1;
        let f = flatten(tree);
        for (i, &n) in f.nodes.iter().enumerate() {
            if let Some(w) = &n.leaf {
                if n.label != "-NONE-" && w.chars().any(|ch| ch.is_alphanumeric()) {
                    c.words += 1;
                }
                continue;
            }
            if s_like(n) && finite(n) {
                c.clauses += 1;
            }
            if ["ADJP", "ADVP", "NP", "VP"].contains(&label(n)) {
                let k = &n.children;
                for j in 0..k.len() {
                    if (label(&k[j]) == "CC" || label(&k[j]) == "CONJP")
                        && k[..j].iter().any(|s| !is_punct(s))
                        && k[j + 1..].iter().any(|s| !is_punct(s))
                    {
                        c.coord_phrases += 1;
                        break;
                    }
                }
            }
            let parent = f.parent[i].map(|p| f.nodes[p]);
            let next = f.next[i].map(|x| f.nodes[x]);
            let cn = match label(n) {
                "NP" => {
                    parent.is_none_or(|p| label(p) != "NP")
                        && (descendants(n).iter().any(|d| {
                            ["JJ", "JJR", "JJS", "POS", "PP", "S", "SBAR", "VBG", "VBN"].contains(&label(d))
                        }) || std::iter::once(n).chain(descendants(n)).any(|d| {
                            let k = &d.children;
                            (0..k.len()).any(|j| {
                                label(&k[j]) == "NP"
                                    && k.get(j + 1).is_none_or(|x| label(x) != "CC")
                                    && k[j + 1..].iter().any(|x| label(x) == "NP")
                            })
                        }))
                }
                "SBAR" => {
                    let first = n.children.first().unwrap();
                    let intro = label(first) == "WHNP"
                        || label(first) == "S"
                        || (label(first) == "IN"
                            && matches!(first.leaf.as_deref().map(str::to_lowercase).as_deref(), Some("that" | "for")));
                    intro && (next.is_some_and(|x| label(x) == "VP") || parent.is_some_and(|p| label(p) == "VP"))
                }
                "S" => {
                    n.children.iter().any(|v| {
                        label(v) == "VP"
                            && v.children.first().is_some_and(|h| label(h) == "VBG" || label(h) == "TO")
                    }) && next.is_some_and(|x| label(x) == "VP")
                }
                _ => false,
            };
            if cn {
                c.complex_nominals += 1;
            }
        }
        let roots: Vec<&ParseTree> = if tree.label == "ROOT" { tree.children.iter().collect() } else { vec![tree] };
        for r in roots {
            if s_like(r) {
                let conj = r.children.iter().filter(|x| s_like(x) && finite(x)).count();
                c.t_units += conj.max(1);
            }
        }
    }
    c
}

pub fn is_punct(t: &ParseTree) -> bool {
    t.leaf.is_some() && ["#", "$", ".", ",", ":", "-LRB-", "-RRB-", "``", "''"].contains(&t.label.as_str())
}

/// The six ratio measures computed straight from the unit counts.
pub fn profile_oracle(c: &SyntacticCounts) -> [(&'static str, Option<f64>); 6] {
    let div = |a: usize, b: usize| if b == 0 { None } else { Some(a as f64 / b as f64) };
    [
        ("mlc", div(c.words, c.clauses)),
        ("mlt", div(c.words, c.t_units)),
        ("cp_c", div(c.coord_phrases, c.clauses)),
        ("cp_t", div(c.coord_phrases, c.t_units)),
        ("cn_c", div(c.complex_nominals, c.clauses)),
        ("cn_t", div(c.complex_nominals, c.t_units)),
    ]
}

use std::fmt;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::annotate::PUNCT_TAGS;
use crate::{Error, Result};

/// A labeled constituency tree. Preterminals carry `leaf` and no children.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ParseTree {
    pub label: String,
    pub children: Vec<ParseTree>,
    pub leaf: Option<String>,
}

impl ParseTree {
    pub fn node(label: impl Into<String>, children: Vec<ParseTree>) -> Self {
        ParseTree { label: label.into(), children, leaf: None }
    }

    pub fn preterminal(label: impl Into<String>, word: impl Into<String>) -> Self {
        ParseTree { label: label.into(), children: Vec::new(), leaf: Some(word.into()) }
    }

    pub fn is_preterminal(&self) -> bool {
        self.leaf.is_some()
    }

    /// Label with any function tags or indices removed (`NP-SBJ-1` → `NP`).
    pub fn base_label(&self) -> &str {
        base_label(&self.label)
    }

    pub fn is_punct(&self) -> bool {
        self.is_preterminal() && PUNCT_TAGS.contains(&self.label.as_str())
    }

    /// Leaf surfaces in order.
    pub fn leaves(&self) -> Vec<&str> {
        let mut out = Vec::new();
        self.collect_leaves(&mut out);
        out
    }

    fn collect_leaves<'a>(&'a self, out: &mut Vec<&'a str>) {
        match &self.leaf {
            Some(w) => out.push(w),
            None => self.children.iter().for_each(|c| c.collect_leaves(out)),
        }
    }

    /// Leaves that are words: contain an alphanumeric character and are not
    /// empty elements.
    pub fn word_count(&self) -> usize {
        match &self.leaf {
            Some(w) => usize::from(self.label != "-NONE-" && w.chars().any(char::is_alphanumeric)),
            None => self.children.iter().map(ParseTree::word_count).sum(),
        }
    }

    /// Pre-order traversal.
    pub fn walk(&self) -> Vec<&ParseTree> {
        let mut out = vec![self];
        let mut i = 0;
        while i < out.len() {
            let n = out[i];
            let at = i + 1;
            out.splice(at..at, n.children.iter());
            i += 1;
        }
        out
    }

    /// Bracketed serialization, re-parseable by [`parse_bracketed`].
    pub fn to_bracketed(&self) -> String {
        self.to_string()
    }
}

pub(crate) fn base_label(label: &str) -> &str {
    if label.starts_with('-') {
        return label;
    }
    let end = label.find(['-', '=']).unwrap_or(label.len());
    &label[..end]
}

impl fmt::Display for ParseTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}", self.label)?;
        if let Some(w) = &self.leaf {
            write!(f, " {w}")?;
        }
        for c in &self.children {
            write!(f, " {c}")?;
        }
        f.write_str(")")
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
enum Tok<'a> {
    Open,
    Close,
    Atom(&'a str),
}

fn lex(text: &str) -> Vec<(usize, Tok<'_>)> {
    let mut out = Vec::new();
    let mut start = None;
    for (i, c) in text.char_indices() {
        if c == '(' || c == ')' || c.is_whitespace() {
            if let Some(s) = start.take() {
                out.push((s, Tok::Atom(&text[s..i])));
            }
            if c == '(' {
                out.push((i, Tok::Open));
            } else if c == ')' {
                out.push((i, Tok::Close));
            }
        } else if start.is_none() {
            start = Some(i);
        }
    }
    if let Some(s) = start {
        out.push((s, Tok::Atom(&text[s..])));
    }
    out
}

/// Parses zero or more bracketed trees. A `ROOT`, `TOP` or unlabeled wrapper
/// around a single tree is removed.
pub fn parse_bracketed(text: &str) -> Result<Vec<ParseTree>> {
    let toks = lex(text);
    let mut pos = 0;
    let mut trees = Vec::new();
    while pos < toks.len() {
        match toks[pos] {
            (_, Tok::Open) => {
                let tree = parse_node(&toks, &mut pos)?;
                trees.push(unwrap_root(tree));
            }
            (at, Tok::Close) => return Err(Error::UnbalancedBrackets { position: at }),
            (at, Tok::Atom(_)) => return Err(Error::UnexpectedAtom { position: at }),
        }
    }
    Ok(trees)
}

fn unwrap_root(mut tree: ParseTree) -> ParseTree {
    let wrapper = tree.label.is_empty() || tree.label == "ROOT" || tree.label == "TOP";
    if wrapper && tree.children.len() == 1 {
        return tree.children.pop().unwrap();
    }
    if tree.label.is_empty() {
        tree.label = "ROOT".into();
    }
    tree
}

fn parse_node(toks: &[(usize, Tok<'_>)], pos: &mut usize) -> Result<ParseTree> {
    let open_at = toks[*pos].0;
    *pos += 1;
    let unbalanced = Error::UnbalancedBrackets { position: open_at };
    let label = match toks.get(*pos) {
        Some((_, Tok::Atom(a))) => {
            *pos += 1;
            a.to_string()
        }
        Some(_) => String::new(),
        None => return Err(unbalanced),
    };
    match toks.get(*pos) {
        None => Err(unbalanced),
        Some((_, Tok::Close)) => Err(Error::EmptyConstituent { position: open_at }),
        Some((at, Tok::Atom(word))) => {
            *pos += 1;
            if label.is_empty() {
                return Err(Error::EmptyConstituent { position: open_at });
            }
            match toks.get(*pos) {
                Some((_, Tok::Close)) => {
                    *pos += 1;
                    Ok(ParseTree::preterminal(label, *word))
                }
                Some((next, Tok::Atom(_))) => Err(Error::UnexpectedAtom { position: *next }),
                Some((_, Tok::Open)) => Err(Error::UnexpectedAtom { position: *at }),
                None => Err(unbalanced),
            }
        }
        Some((_, Tok::Open)) => {
            let mut children = Vec::new();
            loop {
                match toks.get(*pos) {
                    Some((_, Tok::Open)) => children.push(parse_node(toks, pos)?),
                    Some((_, Tok::Close)) => {
                        *pos += 1;
                        break;
                    }
                    Some((at, Tok::Atom(_))) => return Err(Error::UnexpectedAtom { position: *at }),
                    None => return Err(unbalanced),
                }
            }
            Ok(ParseTree::node(label, children))
        }
    }
}

/// Trees belonging to one document of a tree file.
#[derive(Debug, Clone, PartialEq)]
pub struct TreeSection {
    pub id: String,
    pub trees: Vec<ParseTree>,
}

/// Parses a tree file whose documents are introduced by `%%doc <id>` lines.
/// Trees before the first header belong to a section with an empty id.
pub fn parse_tree_file_str(text: &str) -> Result<Vec<TreeSection>> {
    let mut sections = Vec::new();
    let mut id = String::new();
    let mut body = String::new();
    let mut seen_header = false;
    let flush = |id: &str, body: &str, sections: &mut Vec<TreeSection>| -> Result<()> {
        let trees = parse_bracketed(body)?;
        if !id.is_empty() || !trees.is_empty() {
            sections.push(TreeSection { id: id.to_string(), trees });
        }
        Ok(())
    };
    for line in text.lines() {
        if let Some(rest) = line.trim_start().strip_prefix("%%doc") {
            if seen_header || !body.trim().is_empty() {
                flush(&id, &body, &mut sections)?;
            }
            seen_header = true;
            id = rest.trim().to_string();
            body.clear();
        } else {
            body.push_str(line);
            body.push('\n');
        }
    }
    if seen_header || !body.trim().is_empty() {
        flush(&id, &body, &mut sections)?;
    }
    Ok(sections)
}

pub fn read_tree_file(path: impl AsRef<Path>) -> Result<Vec<TreeSection>> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    parse_tree_file_str(&text)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_simple_tree() {
        let t = parse_bracketed("(S (NP (PRP I)) (VP (VBP run)))").unwrap();
        assert_eq!(t.len(), 1);
        assert_eq!(t[0].leaves(), ["I", "run"]);
        assert_eq!(t[0].to_string(), "(S (NP (PRP I)) (VP (VBP run)))");
    }

    #[test]
    fn absorbs_root_wrappers() {
        let a = parse_bracketed("(ROOT (S (NP (PRP I)) (VP (VBP run))))").unwrap();
        let b = parse_bracketed("( (S (NP (PRP I)) (VP (VBP run))))").unwrap();
        assert_eq!(a, b);
        assert_eq!(a[0].label, "S");
    }

    #[test]
    fn errors() {
        assert!(matches!(parse_bracketed("((S (X (Y a))"), Err(Error::UnbalancedBrackets { .. })));
        assert!(matches!(parse_bracketed("(S (NP))"), Err(Error::EmptyConstituent { position: 3 })));
        assert!(matches!(parse_bracketed("(S a))"), Err(Error::UnbalancedBrackets { position: 5 })));
        assert!(matches!(parse_bracketed("(NN a b)"), Err(Error::UnexpectedAtom { .. })));
        assert!(parse_bracketed("").unwrap().is_empty());
    }

    #[test]
    fn base_labels() {
        assert_eq!(base_label("NP-SBJ-1"), "NP");
        assert_eq!(base_label("-LRB-"), "-LRB-");
        assert_eq!(base_label("S=2"), "S");
    }

    #[test]
    fn tree_file_sections() {
        let text = "%%doc a\n(S (NP (PRP I)) (VP (VBP run)))\n(NP (NN cat))\n%%doc b\n(NP (NN dog))\n";
        let s = parse_tree_file_str(text).unwrap();
        assert_eq!(s.len(), 2);
        assert_eq!(s[0].id, "a");
        assert_eq!(s[0].trees.len(), 2);
        assert_eq!(s[1].trees[0].leaves(), ["dog"]);
    }
}

use std::ops::Range;

use super::Token;

/// Abbreviations whose trailing period stays attached to the word.
const ABBREVIATIONS: &[&str] = &[
    "dr", "mr", "mrs", "ms", "prof", "st", "jr", "sr", "vs", "etc", "inc", "ltd", "mt", "fig",
    "approx", "dept", "univ",
];

const CLITICS: &[&str] = &["s", "m", "d", "re", "ve", "ll"];

pub(crate) fn is_apostrophe(c: char) -> bool {
    c == '\'' || c == '\u{2019}'
}

/// Splits text into word and punctuation tokens using Penn Treebank
/// conventions: clitics (`'s`, `n't`, `'re`, ...) are separate tokens and
/// every punctuation mark is its own token (`...` and `--` runs are kept
/// together). Only whitespace is dropped.
pub fn tokenize(text: &str) -> Vec<Token> {
    tokenize_spans(text)
        .into_iter()
        .map(|r| Token::new(&text[r]))
        .collect()
}

/// Byte ranges of the tokens of `text`.
pub(crate) fn tokenize_spans(text: &str) -> Vec<Range<usize>> {
    let mut out = Vec::new();
    let mut start = None;
    for (i, c) in text.char_indices() {
        if c.is_whitespace() {
            if let Some(s) = start.take() {
                split_chunk(text, s, i, &mut out);
            }
        } else if start.is_none() {
            start = Some(i);
        }
    }
    if let Some(s) = start {
        split_chunk(text, s, text.len(), &mut out);
    }
    out
}

fn split_chunk(text: &str, begin: usize, end: usize, out: &mut Vec<Range<usize>>) {
    let chunk = &text[begin..end];
    let chars: Vec<(usize, char)> = chunk.char_indices().collect();
    let n = chars.len();
    let byte_at = |k: usize| if k < n { chars[k].0 } else { chunk.len() };
    let alnum = |k: usize| k < n && chars[k].1.is_alphanumeric();
    let digit = |k: usize| k < n && chars[k].1.is_numeric();

    let mut k = 0;
    while k < n {
        let c = chars[k].1;
        let piece_start = k == 0 || !alnum(k - 1);

        if piece_start && c.is_alphabetic() {
            if let Some(len) = abbreviation_len(&chars, k) {
                out.push(begin + byte_at(k)..begin + byte_at(k + len));
                k += len;
                continue;
            }
        }

        if c.is_alphanumeric() || (is_apostrophe(c) && piece_start && clitic_at(&chars, k + 1)) {
            let s = k;
            k += 1;
            while k < n {
                let c = chars[k].1;
                let joins = if c.is_alphanumeric() {
                    true
                } else if is_apostrophe(c) || c == '-' {
                    alnum(k - 1) && alnum(k + 1)
                } else if c == '.' || c == ',' {
                    digit(k - 1) && digit(k + 1)
                } else {
                    false
                };
                if !joins {
                    break;
                }
                k += 1;
            }
            split_word(chunk, begin, byte_at(s), byte_at(k), out);
            continue;
        }

        // punctuation: `...` and `--` runs stay together, everything else is one mark
        let s = k;
        k += 1;
        if c == '.' || c == '-' {
            while k < n && chars[k].1 == c {
                k += 1;
            }
        }
        out.push(begin + byte_at(s)..begin + byte_at(k));
    }
}

/// Whether `chars[k..]` spells a clitic suffix ending at a word boundary.
fn clitic_at(chars: &[(usize, char)], k: usize) -> bool {
    let mut end = k;
    while end < chars.len() && chars[end].1.is_alphanumeric() {
        end += 1;
    }
    if end == k {
        return false;
    }
    let word: String = chars[k..end].iter().flat_map(|(_, c)| c.to_lowercase()).collect();
    CLITICS.contains(&word.as_str())
}

/// Length in chars of an abbreviation starting at `k` (initialisms such as
/// `U.S.` or `e.g.`, and listed titles such as `Dr.`).
fn abbreviation_len(chars: &[(usize, char)], k: usize) -> Option<usize> {
    let n = chars.len();
    let boundary = |j: usize| j >= n || !chars[j].1.is_alphanumeric();

    let mut j = k;
    let mut groups = 0;
    while j + 1 < n && chars[j].1.is_alphabetic() && chars[j + 1].1 == '.' && (j == k || chars[j - 1].1 == '.') {
        groups += 1;
        j += 2;
    }
    if groups >= 2 && boundary(j) {
        return Some(j - k);
    }

    let mut j = k;
    while j < n && chars[j].1.is_alphabetic() {
        j += 1;
    }
    if j < n && chars[j].1 == '.' && boundary(j + 1) && !(j + 1 < n && chars[j + 1].1 == '.') {
        let word: String = chars[k..j].iter().flat_map(|(_, c)| c.to_lowercase()).collect();
        if ABBREVIATIONS.contains(&word.as_str()) {
            return Some(j + 1 - k);
        }
    }
    None
}

/// Emits a word piece, splitting off clitics.
fn split_word(chunk: &str, begin: usize, s: usize, e: usize, out: &mut Vec<Range<usize>>) {
    let piece = &chunk[s..e];
    let lower = piece.to_lowercase();
    // clitics alone (e.g. an already tokenized "'s") stay whole
    if piece.starts_with(is_apostrophe) || lower.len() != piece.len() {
        out.push(begin + s..begin + e);
        return;
    }
    for suffix in ["n't", "n\u{2019}t"] {
        if lower.len() > suffix.len() && lower.ends_with(suffix) {
            let cut = e - suffix.len();
            out.push(begin + s..begin + cut);
            out.push(begin + cut..begin + e);
            return;
        }
    }
    if let Some((pos, a)) = piece.char_indices().find(|&(_, c)| is_apostrophe(c)) {
        let rest = piece[pos + a.len_utf8()..].to_lowercase();
        if pos > 0 && CLITICS.contains(&rest.as_str()) {
            out.push(begin + s..begin + s + pos);
            out.push(begin + s + pos..begin + e);
            return;
        }
    }
    if lower == "cannot" {
        out.push(begin + s..begin + s + 3);
        out.push(begin + s + 3..begin + e);
        return;
    }
    out.push(begin + s..begin + e);
}

#[cfg(test)]
mod tests {
    use super::*;

    fn surfaces(text: &str) -> Vec<String> {
        tokenize(text).into_iter().map(|t| t.surface).collect()
    }

    #[test]
    fn empty_text() {
        assert!(tokenize("").is_empty());
        assert!(tokenize(" \n\t ").is_empty());
    }

    #[test]
    fn clitics_are_split() {
        assert_eq!(surfaces("what's more"), ["what", "'s", "more"]);
        assert_eq!(surfaces("don't"), ["do", "n't"]);
        assert_eq!(surfaces("can't"), ["ca", "n't"]);
        assert_eq!(surfaces("I'm sure they'll"), ["I", "'m", "sure", "they", "'ll"]);
        assert_eq!(surfaces("what 's more"), ["what", "'s", "more"]);
        assert_eq!(surfaces("we cannot"), ["we", "can", "not"]);
        assert_eq!(surfaces("it\u{2019}s"), ["it", "\u{2019}s"]);
    }

    #[test]
    fn punctuation_is_separate() {
        let toks = tokenize("I run, you run.");
        let s: Vec<_> = toks.iter().map(|t| t.surface.as_str()).collect();
        assert_eq!(s, ["I", "run", ",", "you", "run", "."]);
        let punct: Vec<bool> = toks.iter().map(|t| t.is_punct).collect();
        assert_eq!(punct, [false, false, true, false, false, true]);
        assert!(toks.iter().all(|t| t.is_word != t.is_punct));
    }

    #[test]
    fn word_internal_marks() {
        assert_eq!(surfaces("well-known 3.5 1,000 O'Brien"), ["well-known", "3.5", "1,000", "O'Brien"]);
        assert_eq!(surfaces("(students') wait..."), ["(", "students", "'", ")", "wait", "..."]);
        assert_eq!(surfaces("think.i"), ["think", ".", "i"]);
        assert_eq!(surfaces("so -- yes"), ["so", "--", "yes"]);
    }

    #[test]
    fn abbreviations_keep_their_period() {
        assert_eq!(surfaces("Dr. Smith in the U.S. today."), ["Dr.", "Smith", "in", "the", "U.S.", "today", "."]);
        assert_eq!(surfaces("e.g., apples"), ["e.g.", ",", "apples"]);
    }

    #[test]
    fn lower_is_case_folded() {
        let t = Token::new("What");
        assert_eq!(t.lower, "what");
        assert!(t.is_word);
    }
}

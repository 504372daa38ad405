use std::sync::LazyLock;

use regex::Regex;

use super::segment::{paragraph_spans, sentence_spans};

static AI_DISCLAIMER: LazyLock<Regex> =
    LazyLock::new(|| Regex::new(r"(?i)^\W*as an ai( language)? model\b").unwrap());

static HYPHEN_NOT: LazyLock<Regex> = LazyLock::new(|| {
    Regex::new(
        r"(?i)\b(don|doesn|didn|isn|aren|wasn|weren|haven|hasn|hadn|won|wouldn|shouldn|couldn|can|mustn|needn|ain)-t\b",
    )
    .unwrap()
});

static HYPHEN_CLITIC: LazyLock<Regex> = LazyLock::new(|| {
    Regex::new(r"(?i)\b(i|you|we|they|he|she|it|that|what|there|who|let|here|where)-(s|m|d|re|ve|ll)\b")
        .unwrap()
});

const SPACE_AFTER: &[char] = &[',', '.', ';', ':', '!', '?'];
const NO_SPACE_BEFORE: &[char] = &[',', '.', ';', ':', '!', '?', ')', ']', '}', '\u{2026}'];
const APOSTROPHE_VARIANTS: &[char] = &['\u{2018}', '\u{2019}', '`', '\u{b4}'];

/// Cleans up essay text so that human and machine essays share the same
/// surface conventions:
///
/// * optionally drops sentences opening with "As an AI (language) model";
/// * capitalizes sentence-initial letters and the pronoun "i";
/// * one space after punctuation and between words, no leading spaces,
///   paragraphs separated by exactly one blank line;
/// * apostrophe variants in contractions become `'` (`don-t` -> `don't`).
///
/// The function is idempotent.
pub fn normalize(text: &str, strip_ai_disclaimer: bool) -> String {
    let text = text.replace("\r\n", "\n").replace('\r', "\n");
    let mut paragraphs = Vec::new();
    for block in paragraph_spans(&text) {
        let joined = text[block].split_whitespace().collect::<Vec<_>>().join(" ");
        let fixed = fix_apostrophes(&joined);
        let spaced = fix_spacing(&fixed);
        let cased = capitalize_pronoun(&spaced);
        let sentences: Vec<String> = sentence_spans(&cased)
            .into_iter()
            .filter_map(|toks| {
                let (first, last) = (toks.first()?, toks.last()?);
                let sentence = &cased[first.start..last.end];
                if strip_ai_disclaimer && AI_DISCLAIMER.is_match(sentence) {
                    None
                } else {
                    Some(capitalize_first(sentence))
                }
            })
            .collect();
        if !sentences.is_empty() {
            paragraphs.push(sentences.join(" "));
        }
    }
    paragraphs.join("\n\n")
}

fn fix_apostrophes(s: &str) -> String {
    let chars: Vec<char> = s.chars().collect();
    let mut out = String::with_capacity(s.len());
    for (k, &c) in chars.iter().enumerate() {
        let inside = k > 0
            && chars[k - 1].is_alphabetic()
            && chars.get(k + 1).is_some_and(|n| n.is_alphabetic());
        if inside && APOSTROPHE_VARIANTS.contains(&c) {
            out.push('\'');
        } else {
            out.push(c);
        }
    }
    let out = HYPHEN_NOT.replace_all(&out, "${1}'t");
    HYPHEN_CLITIC.replace_all(&out, "${1}'${2}").into_owned()
}

/// Expects single-space separated input.
fn fix_spacing(s: &str) -> String {
    let chars: Vec<char> = s.chars().collect();
    let mut tight: Vec<char> = Vec::with_capacity(chars.len());
    for (k, &c) in chars.iter().enumerate() {
        if c == ' ' && chars.get(k + 1).is_some_and(|n| NO_SPACE_BEFORE.contains(n)) {
            continue;
        }
        tight.push(c);
    }
    let mut out = String::with_capacity(s.len() + 8);
    for (k, &c) in tight.iter().enumerate() {
        out.push(c);
        let next_is_letter = tight.get(k + 1).is_some_and(|n| n.is_alphabetic());
        if SPACE_AFTER.contains(&c) && next_is_letter && !(c == '.' && is_initialism_dot(&tight, k)) {
            out.push(' ');
        }
    }
    out.trim().to_string()
}

/// `.` at `k` sits inside an initialism like `U.S.` or `e.g.`.
fn is_initialism_dot(chars: &[char], k: usize) -> bool {
    let single_letter_before = k >= 1
        && chars[k - 1].is_alphabetic()
        && (k == 1 || !chars[k - 2].is_alphanumeric());
    let letter_dot_after = chars.get(k + 1).is_some_and(|c| c.is_alphabetic()) && chars.get(k + 2) == Some(&'.');
    single_letter_before && letter_dot_after
}

fn capitalize_pronoun(s: &str) -> String {
    let chars: Vec<char> = s.chars().collect();
    let mut out = String::with_capacity(s.len());
    for (k, &c) in chars.iter().enumerate() {
        if c == 'i' && standalone_i(&chars, k) {
            out.push('I');
        } else {
            out.push(c);
        }
    }
    out
}

fn standalone_i(chars: &[char], k: usize) -> bool {
    if k > 0 && chars[k - 1].is_alphanumeric() {
        return false;
    }
    match chars.get(k + 1) {
        None => true,
        Some(&n) if n.is_alphanumeric() => false,
        Some('.') | Some('-') => !chars.get(k + 2).is_some_and(|c| c.is_alphanumeric()),
        Some(_) => true,
    }
}

fn capitalize_first(sentence: &str) -> String {
    let Some((pos, c)) = sentence.char_indices().find(|(_, c)| c.is_alphanumeric()) else {
        return sentence.to_string();
    };
    if !c.is_lowercase() {
        return sentence.to_string();
    }
    let mut out = String::with_capacity(sentence.len() + 2);
    out.push_str(&sentence[..pos]);
    out.extend(c.to_uppercase());
    out.push_str(&sentence[pos + c.len_utf8()..]);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::text::tokenize;

    #[test]
    fn apostrophes() {
        assert_eq!(normalize("don-t", false), "Don't");
        assert_eq!(normalize("We don-t know", false), "We don't know");
        assert_eq!(normalize("It\u{2019}s fine, isn`t it", false), "It's fine, isn't it");
        assert_eq!(normalize("A well-known fact", false), "A well-known fact");
    }

    #[test]
    fn capitalization_and_spacing() {
        assert_eq!(normalize("i think.i agree.", false), "I think. I agree.");
        assert_eq!(normalize("  hello ,world !  i'm here", false), "Hello, world! I'm here");
        assert_eq!(normalize("e.g.the U.S. is big, i.e. large", false), "E.g. the U.S. is big, i.e. large");
        assert_eq!(normalize("It costs 3.5 dollars, or 1,000 cents.", false), "It costs 3.5 dollars, or 1,000 cents.");
    }

    #[test]
    fn paragraphs() {
        assert_eq!(normalize("  First one.\nStill first.\n\n\n   second.  \n", false), "First one. Still first.\n\nSecond.");
        assert_eq!(normalize("", false), "");
        assert_eq!(normalize(" \n\n ", false), "");
    }

    #[test]
    fn strips_ai_disclaimer() {
        let text = "As an AI language model, I cannot. Cats are good.";
        assert_eq!(normalize(text, true), "Cats are good.");
        assert_eq!(normalize(text, false), text);
        assert_eq!(normalize("As an AI model I refuse.\n\nFine. As an ai model, no.", true), "Fine.");
    }

    #[test]
    fn idempotent_on_samples() {
        for s in [
            "i think.i agree.",
            "what 's more , he said \"no.\" then left",
            "As an AI model. x. i y",
            "(a)b.c!d?e;f:g",
            "U.S.A is big.i.e. ok",
        ] {
            let once = normalize(s, true);
            assert_eq!(normalize(&once, true), once, "input {s:?}");
        }
    }

    #[test]
    fn no_whitespace_in_tokens() {
        let out = normalize("a\u{a0}b\u{2003}c . d", false);
        assert!(tokenize(&out).iter().all(|t| !t.surface.chars().any(char::is_whitespace)));
    }
}

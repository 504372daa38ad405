use std::fmt::Write as _;
use std::path::Path;

use super::{PosTag, TaggedDocument};
use crate::text::{Document, Token};
use crate::{Error, Result};

/// Reads a `surface<TAB>tag` file. One blank line ends a sentence, two or
/// more end a paragraph. The document id is the file stem.
pub fn ingest_tagged(path: impl AsRef<Path>) -> Result<TaggedDocument> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    let id = path.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
    ingest_tagged_str(&id, &text)
}

pub fn ingest_tagged_str(id: &str, text: &str) -> Result<TaggedDocument> {
    let mut paragraphs: Vec<Vec<Vec<Token>>> = vec![vec![vec![]]];
    let mut tags = Vec::new();
    let mut blanks = 0;
    for (i, line) in text.lines().enumerate() {
        let line_no = i + 1;
        if line.trim().is_empty() {
            blanks += 1;
            continue;
        }
        if blanks > 0 {
            let para = paragraphs.last_mut().unwrap();
            if blanks >= 2 {
                paragraphs.push(vec![vec![]]);
            } else if !para.last().unwrap().is_empty() {
                para.push(vec![]);
            }
            blanks = 0;
        }
        let (surface, tag) = line.split_once('\t').ok_or_else(|| Error::MalformedLine {
            line: line_no,
            reason: "expected `surface<TAB>tag`".into(),
        })?;
        let tag = tag.trim();
        if surface.is_empty() || surface.chars().any(char::is_whitespace) || tag.is_empty() || tag.contains('\t') {
            return Err(Error::MalformedLine {
                line: line_no,
                reason: "expected `surface<TAB>tag`".into(),
            });
        }
        let tag = PosTag::new(tag).ok_or_else(|| Error::TagNotInInventory {
            line: line_no,
            tag: tag.to_string(),
        })?;
        paragraphs.last_mut().unwrap().last_mut().unwrap().push(Token::new(surface));
        tags.push(tag);
    }
    TaggedDocument::new(Document::from_structure(id, paragraphs), tags)
}

/// Serializes in the format read by [`ingest_tagged`].
pub fn export_string(doc: &TaggedDocument) -> String {
    let mut out = String::new();
    let mut tags = doc.tags().iter();
    for (pi, para) in doc.document().paragraphs().iter().enumerate() {
        if pi > 0 {
            out.push_str("\n\n");
        }
        for (si, sent) in para.sentences.iter().enumerate() {
            if si > 0 {
                out.push('\n');
            }
            for tok in &sent.tokens {
                let _ = writeln!(out, "{}\t{}", tok.surface, tags.next().unwrap());
            }
        }
    }
    out
}

pub fn export(doc: &TaggedDocument, path: impl AsRef<Path>) -> Result<()> {
    let path = path.as_ref();
    std::fs::write(path, export_string(doc)).map_err(|e| Error::io(path, e))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reads_single_sentence() {
        let doc = ingest_tagged_str("x", "I\tPRP\nrun\tVBP\n.\t.").unwrap();
        assert_eq!(doc.document().sentence_count(), 1);
        assert_eq!(doc.len(), 3);
    }

    #[test]
    fn empty_file_is_empty_document() {
        let doc = ingest_tagged_str("x", "").unwrap();
        assert!(doc.is_empty());
        assert_eq!(doc.document().paragraphs().len(), 0);
    }

    #[test]
    fn missing_tag_is_malformed() {
        assert!(matches!(ingest_tagged_str("x", "run"), Err(Error::MalformedLine { line: 1, .. })));
        assert!(matches!(
            ingest_tagged_str("x", "I\tPRP\nrun\tVERB"),
            Err(Error::TagNotInInventory { line: 2, .. })
        ));
    }

    #[test]
    fn blank_lines_separate_sentences_and_paragraphs() {
        let text = "A\tDT\n.\t.\n\nB\tNN\n.\t.\n\n\nC\tNN\n.\t.\n";
        let doc = ingest_tagged_str("x", text).unwrap();
        let paras = doc.document().paragraphs();
        assert_eq!(paras.len(), 2);
        assert_eq!(paras[0].sentences.len(), 2);
        assert_eq!(paras[1].sentences.len(), 1);
        let again = ingest_tagged_str("x", &export_string(&doc)).unwrap();
        assert_eq!(again, doc);
    }
}

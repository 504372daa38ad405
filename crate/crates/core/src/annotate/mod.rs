//! Part-of-speech tagging and lexical word classes.

mod lexicon;
mod tagged_file;
mod tagger;
mod tagset;
mod wordclass;

pub use lexicon::Lexicon;
pub use tagged_file::{export, export_string, ingest_tagged, ingest_tagged_str};
pub use tagger::{tag, tag_with, BaselineTagger, Tagger, TaggerChoice};
pub use tagset::{PosTag, PTB_TAGS, PUNCT_TAGS};
pub use wordclass::{classify_word, AuxLexicon, WordClass};

use crate::text::{Document, Token};
use crate::{Error, Result};

/// A document whose tokens each carry one tag, in document order.
#[derive(Debug, Clone, PartialEq)]
pub struct TaggedDocument {
    document: Document,
    tags: Vec<PosTag>,
}

impl TaggedDocument {
    pub fn new(document: Document, tags: Vec<PosTag>) -> Result<Self> {
        let n = document.tokens().count();
        if n != tags.len() {
            return Err(Error::InvalidDocument(format!(
                "{}: {} tokens but {} tags",
                document.id,
                n,
                tags.len()
            )));
        }
        Ok(TaggedDocument { document, tags })
    }

    pub fn document(&self) -> &Document {
        &self.document
    }

    pub fn into_document(self) -> Document {
        self.document
    }

    pub fn tags(&self) -> &[PosTag] {
        &self.tags
    }

    pub fn len(&self) -> usize {
        self.tags.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tags.is_empty()
    }

    /// Token/tag pairs in document order.
    pub fn pairs(&self) -> impl Iterator<Item = (&Token, PosTag)> + '_ {
        self.document.tokens().zip(self.tags.iter().copied())
    }

    /// Token/tag pairs grouped by sentence.
    pub fn sentences(&self) -> Vec<Vec<(&Token, PosTag)>> {
        let mut offset = 0;
        self.document
            .sentences()
            .map(|s| {
                let pairs = s.tokens.iter().zip(self.tags[offset..].iter().copied()).collect();
                offset += s.tokens.len();
                pairs
            })
            .collect()
    }

    /// Word classes of every token, using the default auxiliary list.
    pub fn word_classes(&self) -> Vec<WordClass> {
        let aux = AuxLexicon::default();
        let lex = Lexicon::builtin();
        self.pairs().map(|(t, g)| classify_word(t, g, &aux, lex)).collect()
    }
}

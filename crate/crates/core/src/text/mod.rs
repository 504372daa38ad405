//! Tokens, sentences, paragraphs and documents, plus the deterministic
//! text pipeline that derives them from raw essay text.

mod corpus;
mod normalize;
mod segment;
mod tokenize;

use serde::{Deserialize, Serialize};

pub use corpus::{read_jsonl, read_jsonl_str, write_jsonl, write_jsonl_string, DocumentRecord};
pub use normalize::normalize;
pub use segment::segment;
pub use tokenize::tokenize;


#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Source {
    Weccl,
    Toefl,
    Gre,
    Other,
}

impl Source {
    pub const ALL: [Source; 4] = [Source::Weccl, Source::Toefl, Source::Gre, Source::Other];

    pub fn as_str(self) -> &'static str {
        match self {
            Source::Weccl => "WECCL",
            Source::Toefl => "TOEFL",
            Source::Gre => "GRE",
            Source::Other => "OTHER",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Author {
    Human,
    Machine,
}

impl Author {
    pub fn as_str(self) -> &'static str {
        match self {
            Author::Human => "HUMAN",
            Author::Machine => "MACHINE",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Level {
    Low,
    Mid,
    High,
}

impl Level {
    pub const ALL: [Level; 3] = [Level::Low, Level::Mid, Level::High];

    pub fn as_str(self) -> &'static str {
        match self {
            Level::Low => "LOW",
            Level::Mid => "MID",
            Level::High => "HIGH",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Split {
    Train,
    Dev,
    Test,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Token {
    pub surface: String,
    pub lower: String,
    pub is_word: bool,
    pub is_punct: bool,
}

impl Token {
    pub fn new(surface: impl Into<String>) -> Self {
        let surface = surface.into();
        let lower = surface.to_lowercase();
        let is_word = surface.chars().any(char::is_alphanumeric);
        Token {
            surface,
            lower,
            is_word,
            is_punct: !is_word,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Sentence {
    pub tokens: Vec<Token>,
    pub index: usize,
}

impl Sentence {
    pub fn words(&self) -> impl Iterator<Item = &Token> {
        self.tokens.iter().filter(|t| t.is_word)
    }

    pub fn word_count(&self) -> usize {
        self.words().count()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Paragraph {
    pub sentences: Vec<Sentence>,
    pub index: usize,
}

impl Paragraph {
    pub fn tokens(&self) -> impl Iterator<Item = &Token> {
        self.sentences.iter().flat_map(|s| s.tokens.iter())
    }

    pub fn word_count(&self) -> usize {
        self.sentences.iter().map(Sentence::word_count).sum()
    }
}

/// One essay and its metadata. Paragraphs, sentences and tokens are derived
/// from `raw_text` and never persisted.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(into = "DocumentRecord", try_from = "DocumentRecord")]
pub struct Document {
    pub id: String,
    pub source: Source,
    pub author: Author,
    pub model_name: Option<String>,
    pub prompt_id: String,
    pub level: Option<Level>,
    pub score: Option<f64>,
    pub split: Option<Split>,
    raw_text: String,
    paragraphs: Vec<Paragraph>,
}

impl Document {
    /// A human-written document segmented from `raw_text`.
    pub fn human(id: impl Into<String>, source: Source, prompt_id: impl Into<String>, raw_text: impl Into<String>) -> Self {
        Self::build(id.into(), source, Author::Human, None, prompt_id.into(), raw_text.into())
    }

    /// A machine-generated document segmented from `raw_text`.
    pub fn machine(
        id: impl Into<String>,
        source: Source,
        model_name: impl Into<String>,
        prompt_id: impl Into<String>,
        raw_text: impl Into<String>,
    ) -> Self {
        Self::build(
            id.into(),
            source,
            Author::Machine,
            Some(model_name.into()),
            prompt_id.into(),
            raw_text.into(),
        )
    }

    fn build(
        id: String,
        source: Source,
        author: Author,
        model_name: Option<String>,
        prompt_id: String,
        raw_text: String,
    ) -> Self {
        let paragraphs = segment(&raw_text);
        Document {
            id,
            source,
            author,
            model_name,
            prompt_id,
            level: None,
            score: None,
            split: None,
            raw_text,
            paragraphs,
        }
    }

    /// Builds a document whose structure is supplied explicitly (e.g. from a
    /// pre-tagged file). `raw_text` is reconstructed from the tokens.
    pub fn from_structure(id: impl Into<String>, paragraphs: Vec<Vec<Vec<Token>>>) -> Self {
        let paragraphs: Vec<Paragraph> = paragraphs
            .into_iter()
            .filter(|p| p.iter().any(|s| !s.is_empty()))
            .enumerate()
            .map(|(pi, sents)| Paragraph {
                index: pi,
                sentences: sents
                    .into_iter()
                    .filter(|s| !s.is_empty())
                    .enumerate()
                    .map(|(si, tokens)| Sentence { tokens, index: si })
                    .collect(),
            })
            .collect();
        let raw_text = paragraphs
            .iter()
            .map(|p| {
                p.tokens()
                    .map(|t| t.surface.as_str())
                    .collect::<Vec<_>>()
                    .join(" ")
            })
            .collect::<Vec<_>>()
            .join("\n\n");
        Document {
            id: id.into(),
            source: Source::Other,
            author: Author::Human,
            model_name: None,
            prompt_id: String::new(),
            level: None,
            score: None,
            split: None,
            raw_text,
            paragraphs,
        }
    }

    pub fn raw_text(&self) -> &str {
        &self.raw_text
    }

    /// Replaces the text and re-derives the structure.
    pub fn set_text(&mut self, raw_text: impl Into<String>) {
        self.raw_text = raw_text.into();
        self.paragraphs = segment(&self.raw_text);
    }

    pub fn with_level(mut self, level: Level) -> Self {
        self.level = Some(level);
        self
    }

    pub fn with_split(mut self, split: Split) -> Self {
        self.split = Some(split);
        self
    }

    pub fn paragraphs(&self) -> &[Paragraph] {
        &self.paragraphs
    }

    pub fn sentences(&self) -> impl Iterator<Item = &Sentence> {
        self.paragraphs.iter().flat_map(|p| p.sentences.iter())
    }

    pub fn tokens(&self) -> impl Iterator<Item = &Token> {
        self.sentences().flat_map(|s| s.tokens.iter())
    }

    pub fn words(&self) -> impl Iterator<Item = &Token> {
        self.tokens().filter(|t| t.is_word)
    }

    pub fn word_count(&self) -> usize {
        self.words().count()
    }

    pub fn punct_count(&self) -> usize {
        self.tokens().filter(|t| t.is_punct).count()
    }

    pub fn sentence_count(&self) -> usize {
        self.sentences().count()
    }

    /// Checks the metadata invariants.
    pub fn validate(&self) -> crate::Result<()> {
        match (self.author, &self.model_name) {
            (Author::Machine, None) => Err(crate::Error::InvalidDocument(format!(
                "{}: machine document without model_name",
                self.id
            ))),
            (Author::Human, Some(m)) => Err(crate::Error::InvalidDocument(format!(
                "{}: human document with model_name `{m}`",
                self.id
            ))),
            _ => Ok(()),
        }
    }
}

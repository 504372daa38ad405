use std::path::PathBuf;

use thiserror::Error;

use crate::text::Level;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Coarse classification used by the command-line front end to pick an exit code.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorClass {
    Usage,
    Data,
    Endpoint,
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("unknown tagger `{0}`")]
    UnknownTagger(String),
    #[error("malformed line {line}: {reason}")]
    MalformedLine { line: usize, reason: String },
    #[error("line {line}: tag `{tag}` is not in the Penn Treebank inventory")]
    TagNotInInventory { line: usize, tag: String },
    #[error("unbalanced brackets at byte {position}")]
    UnbalancedBrackets { position: usize },
    #[error("empty constituent at byte {position}")]
    EmptyConstituent { position: usize },
    #[error("unexpected bare token at byte {position}")]
    UnexpectedAtom { position: usize },
    #[error("document `{0}` has no word tokens")]
    EmptyDocument(String),
    #[error("empty group")]
    EmptyGroup,
    #[error("n-gram order {0} outside 3..=5")]
    BadN(usize),
    #[error("log-likelihood domain error: {0}")]
    Domain(String),
    #[error("n-gram tables have different orders ({0} vs {1})")]
    NMismatch(usize, usize),
    #[error("prompt template has no essay prompt")]
    MissingEssayPrompt,
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
    #[error("endpoint rejected credentials (HTTP {0})")]
    AuthFailed(u16),
    #[error("endpoint unreachable: {0}")]
    EndpointUnreachable(String),
    #[error("not enough {level:?} documents: need {needed}, have {available}")]
    InsufficientStratum {
        level: Level,
        needed: usize,
        available: usize,
    },
    #[error("split request exceeds corpus: {0}")]
    SpecExceedsCorpus(String),
    #[error("score {score} outside the {scale} range")]
    OutOfRange { score: f64, scale: &'static str },
    #[error("parse trees missing: {0}")]
    MissingTrees(String),
    #[error("no training documents")]
    EmptyTrain,
    #[error("training data contains a single class")]
    SingleClass,
    #[error("feature matrix contains a non-finite value at row {row}, column {col}")]
    NonFiniteFeature { row: usize, col: usize },
    #[error("no test units")]
    EmptyTest,
    #[error("invalid document: {0}")]
    InvalidDocument(String),
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("line {line}: {source}")]
    Json {
        line: usize,
        #[source]
        source: serde_json::Error,
    },
    #[error(transparent)]
    Csv(#[from] csv::Error),
}

impl Error {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }

    pub fn class(&self) -> ErrorClass {
        match self {
            Error::UnknownTagger(_) | Error::InvalidConfig(_) | Error::BadN(_) => {
                ErrorClass::Usage
            }
            Error::AuthFailed(_) | Error::EndpointUnreachable(_) => ErrorClass::Endpoint,
            _ => ErrorClass::Data,
        }
    }
}

use std::fs::File;
use std::io::{BufRead, BufReader, BufWriter, Write};
use std::path::Path;

use serde::{Deserialize, Serialize};

use super::{Author, Document, Level, Source, Split};
use crate::{Error, Result};

/// On-disk form of a [`Document`]: exactly these fields, in this order.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DocumentRecord {
    pub id: String,
    pub source: Source,
    pub author: Author,
    pub model_name: Option<String>,
    pub prompt_id: String,
    pub level: Option<Level>,
    pub score: Option<f64>,
    pub split: Option<Split>,
    pub text: String,
}

impl From<Document> for DocumentRecord {
    fn from(d: Document) -> Self {
        DocumentRecord {
            id: d.id,
            source: d.source,
            author: d.author,
            model_name: d.model_name,
            prompt_id: d.prompt_id,
            level: d.level,
            score: d.score,
            split: d.split,
            text: d.raw_text,
        }
    }
}

impl TryFrom<DocumentRecord> for Document {
    type Error = Error;

    fn try_from(r: DocumentRecord) -> Result<Self> {
        let mut doc = Document::build(r.id, r.source, r.author, r.model_name, r.prompt_id, r.text);
        doc.level = r.level;
        doc.score = r.score;
        doc.split = r.split;
        doc.validate()?;
        Ok(doc)
    }
}

pub fn read_jsonl(path: impl AsRef<Path>) -> Result<Vec<Document>> {
    let path = path.as_ref();
    let file = File::open(path).map_err(|e| Error::io(path, e))?;
    let mut docs = Vec::new();
    for (i, line) in BufReader::new(file).lines().enumerate() {
        let line = line.map_err(|e| Error::io(path, e))?;
        if let Some(doc) = parse_line(&line, i + 1)? {
            docs.push(doc);
        }
    }
    Ok(docs)
}

pub fn read_jsonl_str(s: &str) -> Result<Vec<Document>> {
    s.lines()
        .enumerate()
        .filter_map(|(i, line)| parse_line(line, i + 1).transpose())
        .collect()
}

fn parse_line(line: &str, number: usize) -> Result<Option<Document>> {
    if line.trim().is_empty() {
        return Ok(None);
    }
    let record: DocumentRecord =
        serde_json::from_str(line).map_err(|source| Error::Json { line: number, source })?;
    Document::try_from(record).map(Some)
}

pub fn write_jsonl_string<'a>(docs: impl IntoIterator<Item = &'a Document>) -> String {
    let mut out = String::new();
    for d in docs {
        out.push_str(&serde_json::to_string(d).expect("document serializes"));
        out.push('\n');
    }
    out
}

pub fn write_jsonl<'a>(path: impl AsRef<Path>, docs: impl IntoIterator<Item = &'a Document>) -> Result<()> {
    let path = path.as_ref();
    let file = File::create(path).map_err(|e| Error::io(path, e))?;
    let mut w = BufWriter::new(file);
    for d in docs {
        serde_json::to_writer(&mut w, d).expect("document serializes");
        w.write_all(b"\n").map_err(|e| Error::io(path, e))?;
    }
    w.flush().map_err(|e| Error::io(path, e))
}

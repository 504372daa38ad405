use std::collections::HashMap;
use std::fs::File;
use std::io::{BufRead, BufReader, BufWriter, Write};
use std::path::Path;

use essaylens::annotate::{tag, TaggedDocument, TaggerChoice};
use essaylens::detector::{explode, Family, Granularity, Unit};
use essaylens::syntax::{read_tree_file, ParseTree};
use essaylens::text::{read_jsonl, Document, Split};
use essaylens::{Error, FeatureVector};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::{CliError, CliResult};

/// One line of a features file: a vector plus its document's split.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct FeatureRow {
    #[serde(default)]
    pub split: Option<Split>,
    #[serde(flatten)]
    pub vector: FeatureVector,
}

pub fn require_file(path: &Path) -> CliResult<()> {
    if path.is_file() {
        Ok(())
    } else {
        Err(CliError::Usage(format!("input file {} does not exist", path.display())))
    }
}

pub fn read_corpus(path: &Path) -> CliResult<Vec<Document>> {
    require_file(path)?;
    Ok(read_jsonl(path)?)
}

pub fn read_trees(path: Option<&Path>) -> CliResult<HashMap<String, Vec<ParseTree>>> {
    let Some(path) = path else { return Ok(HashMap::new()) };
    require_file(path)?;
    Ok(read_tree_file(path)?.into_iter().map(|s| (s.id, s.trees)).collect())
}

pub fn parse_split(s: Option<&str>) -> CliResult<Option<Split>> {
    match s.map(str::to_ascii_lowercase).as_deref() {
        None => Ok(None),
        Some("train") => Ok(Some(Split::Train)),
        Some("dev") => Ok(Some(Split::Dev)),
        Some("test") => Ok(Some(Split::Test)),
        Some(other) => Err(CliError::Usage(format!("unknown split `{other}`"))),
    }
}

pub fn parse_granularity(s: &str) -> CliResult<Granularity> {
    Granularity::parse(s).ok_or_else(|| CliError::Usage(format!("unknown granularity `{s}`")))
}

pub fn tagger_choice(name: &str, lexicon: Option<&Path>) -> CliResult<TaggerChoice> {
    let choice = TaggerChoice::from_name(name)?;
    Ok(match lexicon {
        Some(p) => {
            require_file(p)?;
            TaggerChoice::BaselineWithLexicon(p.to_path_buf())
        }
        None => choice,
    })
}

pub fn tag_all(docs: &[Document], choice: &TaggerChoice) -> CliResult<Vec<TaggedDocument>> {
    Ok(docs.par_iter().map(|d| tag(d, choice)).collect::<essaylens::Result<_>>()?)
}

/// Tags and explodes documents into units, each paired with its document's split.
pub fn build_units(
    docs: &[Document],
    granularity: Granularity,
    trees: &HashMap<String, Vec<ParseTree>>,
    family: Option<Family>,
    choice: &TaggerChoice,
) -> CliResult<Vec<(Option<Split>, Unit)>> {
    let needs_trees = family == Some(Family::Cfgr);
    if needs_trees && trees.is_empty() {
        return Err(Error::MissingTrees("--trees is required for the CFGR family".into()).into());
    }
    let tagged = tag_all(docs, choice)?;
    let mut out = Vec::new();
    for (doc, t) in docs.iter().zip(&tagged) {
        let doc_trees = trees.get(&doc.id).map(Vec::as_slice);
        if needs_trees && doc_trees.is_none() {
            return Err(Error::MissingTrees(format!("no parse trees for document {}", doc.id)).into());
        }
        out.extend(explode(t, doc_trees, granularity)?.into_iter().map(|u| (doc.split, u)));
    }
    Ok(out)
}

pub fn write_feature_rows(path: &Path, rows: &[FeatureRow]) -> CliResult<()> {
    let file = File::create(path).map_err(|e| io_error(path, e))?;
    let mut w = BufWriter::new(file);
    for r in rows {
        serde_json::to_writer(&mut w, r).expect("feature row serializes");
        w.write_all(b"\n").map_err(|e| io_error(path, e))?;
    }
    w.flush().map_err(|e| io_error(path, e))
}

pub fn read_feature_rows(path: &Path) -> CliResult<Vec<FeatureRow>> {
    require_file(path)?;
    let file = File::open(path).map_err(|e| io_error(path, e))?;
    let mut rows = Vec::new();
    for (i, line) in BufReader::new(file).lines().enumerate() {
        let line = line.map_err(|e| io_error(path, e))?;
        if line.trim().is_empty() {
            continue;
        }
        let row: FeatureRow =
            serde_json::from_str(&line).map_err(|source| Error::Json { line: i + 1, source })?;
        rows.push(row);
    }
    Ok(rows)
}

pub fn read_json<T: serde::de::DeserializeOwned>(path: &Path) -> CliResult<T> {
    require_file(path)?;
    let text = std::fs::read_to_string(path).map_err(|e| io_error(path, e))?;
    Ok(serde_json::from_str(&text).map_err(|source| Error::Json { line: source.line(), source })?)
}

pub fn write_text(path: &Path, text: &str) -> CliResult<()> {
    std::fs::write(path, text).map_err(|e| io_error(path, e))
}

pub fn create(path: &Path) -> CliResult<BufWriter<File>> {
    Ok(BufWriter::new(File::create(path).map_err(|e| io_error(path, e))?))
}

pub fn io_error(path: &Path, e: std::io::Error) -> CliError {
    CliError::Core(Error::Io { path: path.to_path_buf(), source: e })
}

pub fn read_lines(path: &Path) -> CliResult<Vec<String>> {
    require_file(path)?;
    let text = std::fs::read_to_string(path).map_err(|e| io_error(path, e))?;
    Ok(text
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
        .map(str::to_string)
        .collect())
}

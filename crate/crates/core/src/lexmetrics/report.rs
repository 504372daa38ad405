use std::collections::BTreeMap;
use std::io::Write;

use serde::Serialize;

use super::LexicalProfile;
use crate::syntax::SyntacticProfile;
use crate::{mean, Result, Scalar};

/// Anything that exposes a fixed list of named, possibly undefined values.
pub trait Measures<T> {
    fn measures(&self) -> Vec<(&'static str, Option<T>)>;
}

impl<T: Scalar> Measures<T> for LexicalProfile<T> {
    fn measures(&self) -> Vec<(&'static str, Option<T>)> {
        self.values().to_vec()
    }
}

impl<T: Scalar> Measures<T> for SyntacticProfile<T> {
    fn measures(&self) -> Vec<(&'static str, Option<T>)> {
        self.values().to_vec()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(bound = "T: Scalar")]
pub struct GroupRow<T> {
    pub group: String,
    pub measure: String,
    pub mean: Option<T>,
    pub coverage_n: usize,
    pub total_n: usize,
}

/// Per-group mean of every measure, skipping undefined values.
pub fn group_report<T: Scalar, P: Measures<T>>(groups: &BTreeMap<String, Vec<P>>) -> Vec<GroupRow<T>> {
    let mut rows = Vec::new();
    for (group, profiles) in groups {
        let Some(first) = profiles.first() else { continue };
        let names: Vec<&str> = first.measures().iter().map(|(n, _)| *n).collect();
        let table: Vec<Vec<Option<T>>> =
            profiles.iter().map(|p| p.measures().into_iter().map(|(_, v)| v).collect()).collect();
        for (k, name) in names.iter().enumerate() {
            let defined: Vec<T> = table.iter().filter_map(|row| row[k]).collect();
            rows.push(GroupRow {
                group: group.clone(),
                measure: name.to_string(),
                mean: mean(&defined),
                coverage_n: defined.len(),
                total_n: profiles.len(),
            });
        }
    }
    rows
}

/// CSV with header `group,measure,mean,coverage_n,total_n`; an undefined
/// mean is an empty field.
pub fn write_group_report<T: Scalar, W: Write>(rows: &[GroupRow<T>], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    for row in rows {
        w.serialize(row)?;
    }
    w.flush().map_err(|e| crate::Error::io("<report>", e))?;
    Ok(())
}

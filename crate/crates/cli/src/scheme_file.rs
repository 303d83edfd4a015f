//! The JSON scheme file:
//!
//! ```json
//! {
//!   "rank": 2,
//!   "objects": ["a"],
//!   "reflections": { "1": { "a": "a" }, "2": { "a": "a" } },
//!   "cartan": { "a": [[2, -1], [-1, 2]] }
//! }
//! ```
//!
//! Parsing is structural only; the Cartan scheme axioms are checked later.

use std::fs;
use std::path::Path;

use indexmap::IndexMap;
use serde::{Deserialize, Serialize};
use thiserror::Error;
use weyl_core::RawScheme;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SchemeFile {
    pub rank: usize,
    pub objects: Vec<String>,
    /// Index label (`"1"`, `"2"`, ...) to the table `object -> ρ_i(object)`.
    pub reflections: IndexMap<String, IndexMap<String, String>>,
    /// Object to its Cartan matrix, as a list of rows.
    pub cartan: IndexMap<String, Vec<Vec<i64>>>,
}

#[derive(Debug, Error)]
pub enum ParseError {
    #[error("cannot read {path}: {source}")]
    Io { path: String, source: std::io::Error },
    /// serde_json reports line and column.
    #[error("{0}")]
    Json(#[from] serde_json::Error),
    #[error("field `reflections`: key `{0}` is not an index label 1..={1}")]
    BadIndexLabel(String, usize),
    #[error("field `reflections`: missing table for index {0}")]
    MissingIndex(usize),
    #[error("field `cartan.{object}`: expected a {rank}x{rank} matrix, found {found}")]
    DimensionMismatch { object: String, rank: usize, found: String },
}

impl SchemeFile {
    pub fn from_json(text: &str) -> Result<Self, ParseError> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("scheme files serialize")
    }

    /// Converts to positional scheme data. Matrix shapes are checked here
    /// so that the error names the offending object.
    pub fn to_raw(&self) -> Result<RawScheme, ParseError> {
        let mut reflections = vec![None; self.rank];
        for (key, table) in &self.reflections {
            let label: usize = key
                .parse()
                .ok()
                .filter(|l| (1..=self.rank).contains(l))
                .ok_or_else(|| ParseError::BadIndexLabel(key.clone(), self.rank))?;
            reflections[label - 1] = Some(table.iter().map(|(a, b)| (a.clone(), b.clone())).collect());
        }
        let reflections = reflections
            .into_iter()
            .enumerate()
            .map(|(i, t)| t.ok_or(ParseError::MissingIndex(i + 1)))
            .collect::<Result<_, _>>()?;
        for (object, rows) in &self.cartan {
            if rows.len() != self.rank || rows.iter().any(|r| r.len() != self.rank) {
                let widths: Vec<String> = rows.iter().map(|r| r.len().to_string()).collect();
                return Err(ParseError::DimensionMismatch {
                    object: object.clone(),
                    rank: self.rank,
                    found: format!("{} rows of lengths [{}]", rows.len(), widths.join(", ")),
                });
            }
        }
        Ok(RawScheme {
            rank: self.rank,
            objects: self.objects.clone(),
            reflections,
            cartan: self.cartan.iter().map(|(o, m)| (o.clone(), m.clone())).collect(),
        })
    }

    pub fn from_raw(raw: &RawScheme) -> Self {
        SchemeFile {
            rank: raw.rank,
            objects: raw.objects.clone(),
            reflections: raw
                .reflections
                .iter()
                .enumerate()
                .map(|(i, t)| ((i + 1).to_string(), t.iter().cloned().collect()))
                .collect(),
            cartan: raw.cartan.iter().cloned().collect(),
        }
    }
}

pub fn parse_scheme_file(path: &Path) -> Result<RawScheme, ParseError> {
    let text = fs::read_to_string(path).map_err(|source| ParseError::Io {
        path: path.display().to_string(),
        source,
    })?;
    SchemeFile::from_json(&text)?.to_raw()
}

//! Knot tables: CSV with header `name,u,c4,g4`, blank meaning unknown.

use std::path::Path;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::theorems::clasp_chain;

#[derive(Debug, Error)]
pub enum KnotDataError {
    #[error("cannot read {path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("{path}: expected header `name,u,c4,g4`, found `{found}`")]
    Header { path: String, found: String },
    #[error("{path}: {source}")]
    Csv { path: String, source: csv::Error },
}

/// Upper bounds for one knot. After loading, `c4_upper <= u_upper` and
/// `g4_upper <= c4_upper` wherever both sides are known.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct KnotRecord {
    pub name: String,
    pub u_upper: Option<u32>,
    pub c4_upper: Option<u32>,
    pub g4_upper: Option<u32>,
    pub source: String,
}

impl KnotRecord {
    pub fn new(name: impl Into<String>, u: Option<u32>, c4: Option<u32>, g4: Option<u32>) -> Self {
        Self { name: name.into(), u_upper: u, c4_upper: c4, g4_upper: g4, source: "inline".into() }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RejectedRow {
    pub source: String,
    pub reason: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct KnotTable {
    pub records: Vec<KnotRecord>,
    pub rejects: Vec<RejectedRow>,
}

fn bound(field: &str, column: &str) -> Result<Option<u32>, String> {
    let t = field.trim();
    if t.is_empty() {
        return Ok(None);
    }
    match t.parse::<i64>() {
        Ok(v) if v < 0 => Err(format!("{column} is negative ({v})")),
        Ok(v) => u32::try_from(v).map(Some).map_err(|_| format!("{column} is too large ({v})")),
        Err(_) => Err(format!("{column} is not an integer (`{t}`)")),
    }
}

pub fn load_knot_csv(path: impl AsRef<Path>) -> Result<KnotTable, KnotDataError> {
    let path = path.as_ref();
    let shown = path.display().to_string();
    let text = std::fs::read_to_string(path).map_err(|source| KnotDataError::Io { path: shown.clone(), source })?;
    parse_knot_csv(&text, &shown)
}

/// Parses CSV text; `origin` prefixes every provenance string.
pub fn parse_knot_csv(text: &str, origin: &str) -> Result<KnotTable, KnotDataError> {
    let mut reader = csv::ReaderBuilder::new().flexible(true).has_headers(true).from_reader(text.as_bytes());
    let header = reader.headers().map_err(|source| KnotDataError::Csv { path: origin.into(), source })?.clone();
    let found: Vec<&str> = header.iter().map(str::trim).collect();
    if found != ["name", "u", "c4", "g4"] {
        return Err(KnotDataError::Header { path: origin.into(), found: found.join(",") });
    }
    let mut table = KnotTable::default();
    for row in reader.records() {
        let row = row.map_err(|source| KnotDataError::Csv { path: origin.into(), source })?;
        let line = row.position().map(|p| p.line()).unwrap_or(0);
        let source = format!("{origin}:{line}");
        match parse_row(&row, &source) {
            Ok(r) => table.records.push(r),
            Err(reason) => table.rejects.push(RejectedRow { source, reason }),
        }
    }
    Ok(table)
}

fn parse_row(row: &csv::StringRecord, source: &str) -> Result<KnotRecord, String> {
    if row.len() != 4 {
        return Err(format!("expected 4 columns, found {}", row.len()));
    }
    let name = row[0].trim();
    if name.is_empty() {
        return Err("empty name".into());
    }
    let record = KnotRecord {
        name: name.to_string(),
        u_upper: bound(&row[1], "u")?,
        c4_upper: bound(&row[2], "c4")?,
        g4_upper: bound(&row[3], "g4")?,
        source: source.to_string(),
    };
    let chain = clasp_chain(&record).map_err(|e| e.to_string())?;
    Ok(KnotRecord { u_upper: chain.u_upper, c4_upper: chain.c4_upper, g4_upper: chain.g4_upper, ..record })
}

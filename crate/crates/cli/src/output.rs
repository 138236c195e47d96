//! Record types and table emission. JSON is an array of objects with a
//! fixed key order; CSV has a fixed header per record kind.

use anyhow::Result;
use clap::ValueEnum;
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SymbolInfo {
    /// Set for unitary rows: the partition whose symbol this is.
    pub partition: Option<String>,
    pub symbol: String,
    pub rank: u32,
    pub defect: i32,
    pub delta: u32,
    pub upsilon: String,
    pub cuspidal: bool,
    /// `sp`, `o+`, `o-`, `u`, or empty when the defect fits no series.
    pub series: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairRow {
    pub left: String,
    pub right: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FirstOccurrenceRow {
    pub source: String,
    pub target: String,
    pub closed_partner: String,
    pub closed_dimension: u32,
    pub oracle_partner: String,
    pub oracle_dimension: u32,
    /// Every oracle partner at the minimal dimension, `;`-separated.
    pub witnesses: String,
    pub agree: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CharacterFirstRow {
    pub character: String,
    pub target: String,
    pub closed_dimension: u32,
    pub oracle_dimension: u32,
    pub oracle_partner: String,
    pub agree: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PreservationRow {
    pub character: String,
    pub targets: String,
    pub first: u32,
    pub second: u32,
    pub lhs: i64,
    pub rhs: i64,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyRow {
    pub suite: String,
    pub check: String,
    pub parameters: String,
    pub expected: String,
    pub actual: String,
    pub pass: bool,
}

pub fn render<T: Serialize>(rows: &[T], format: Format) -> Result<String> {
    match format {
        Format::Json => {
            let mut out = serde_json::to_string_pretty(rows)?;
            out.push('\n');
            Ok(out)
        }
        Format::Csv => to_csv(rows),
        Format::Text => {
            // one line per record, fields in declaration order
            let table = to_csv(rows)?;
            let mut reader = csv::Reader::from_reader(table.as_bytes());
            let headers = reader.headers()?.clone();
            let mut out = String::new();
            for record in reader.records() {
                let record = record?;
                let line: Vec<String> = headers
                    .iter()
                    .zip(record.iter())
                    .map(|(k, v)| format!("{k}={}", if v.is_empty() { "-" } else { v }))
                    .collect();
                out.push_str(&line.join("  "));
                out.push('\n');
            }
            Ok(out)
        }
    }
}

fn to_csv<T: Serialize>(rows: &[T]) -> Result<String> {
    let mut writer = csv::Writer::from_writer(Vec::new());
    for row in rows {
        writer.serialize(row)?;
    }
    Ok(String::from_utf8(writer.into_inner()?)?)
}

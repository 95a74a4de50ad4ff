//! Census rows and the three output formats.

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CensusRow {
    pub name: String,
    pub order: u64,
    pub subgroups: u64,
    pub abelian_subgroups: u64,
    pub r1: u64,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub r2: Option<u64>,
    pub truncated: bool,
    pub flags: Vec<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Tsv,
    Csv,
    Json,
}

const HEADER: [&str; 8] = [
    "name",
    "order",
    "subgroups",
    "abelian_subgroups",
    "r1",
    "r2",
    "truncated",
    "flags",
];

fn cells(row: &CensusRow) -> [String; 8] {
    [
        row.name.clone(),
        row.order.to_string(),
        row.subgroups.to_string(),
        row.abelian_subgroups.to_string(),
        row.r1.to_string(),
        row.r2.map(|v| v.to_string()).unwrap_or_default(),
        row.truncated.to_string(),
        row.flags.join("|"),
    ]
}

/// Renders census rows in the chosen format. Output is byte-deterministic
/// for identical inputs.
pub fn render_rows(rows: &[CensusRow], format: Format) -> String {
    match format {
        Format::Json => serde_json::to_string(rows).expect("rows serialize"),
        Format::Tsv => delimited(rows, '\t'),
        Format::Csv => delimited(rows, ','),
    }
}

fn delimited(rows: &[CensusRow], sep: char) -> String {
    let mut out = String::new();
    out.push_str(&HEADER.join(&sep.to_string()));
    out.push('\n');
    for row in rows {
        out.push_str(&cells(row).join(&sep.to_string()));
        out.push('\n');
    }
    out
}

/// Renders a flat value sequence (for `sequence` and `cylinders` output).
pub fn render_values(values: &[String], format: Format) -> String {
    match format {
        Format::Json => serde_json::to_string(values).expect("values serialize"),
        Format::Tsv => values.join(" "),
        Format::Csv => values.join(","),
    }
}

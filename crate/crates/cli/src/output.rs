//! The record printed by every command, as JSON or CSV.

use num_bigint::BigUint;
use serde_json::{json, Map, Value};

use apcover::{CoverageCounts, CoverageHistogram};

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

/// One invocation's output. Big integers are always decimal strings.
#[derive(Debug, Clone)]
pub struct OutputRecord {
    pub command: &'static str,
    pub inputs: Map<String, Value>,
    pub results: Map<String, Value>,
    pub timing_ms: Option<f64>,
    /// CSV rendering: header plus rows.
    pub table: Table,
}

#[derive(Debug, Clone, Default)]
pub struct Table {
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn single(header: Vec<String>, row: Vec<String>) -> Self {
        Table {
            header,
            rows: vec![row],
        }
    }
}

impl OutputRecord {
    pub fn to_json(&self) -> String {
        let value = json!({
            "command": self.command,
            "inputs": self.inputs,
            "results": self.results,
            "timing_ms": self.timing_ms,
        });
        let mut out = serde_json::to_string_pretty(&value).expect("record serializes");
        out.push('\n');
        out
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        push_csv_row(&mut out, &self.table.header);
        for row in &self.table.rows {
            push_csv_row(&mut out, row);
        }
        out
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => self.to_json(),
            Format::Csv => self.to_csv(),
        }
    }
}

fn push_csv_row(out: &mut String, fields: &[String]) {
    let escaped: Vec<String> = fields
        .iter()
        .map(|f| {
            if f.contains([',', '"', '\n']) {
                format!("\"{}\"", f.replace('"', "\"\""))
            } else {
                f.clone()
            }
        })
        .collect();
    out.push_str(&escaped.join(","));
    out.push('\n');
}

pub fn dec(v: &BigUint) -> Value {
    Value::String(v.to_string())
}

pub fn dec_list<T: ToString>(values: &[T]) -> Value {
    Value::Array(values.iter().map(|v| Value::String(v.to_string())).collect())
}

pub fn counts_json(c: &CoverageCounts) -> Map<String, Value> {
    let mut m = Map::new();
    m.insert("available".into(), dec(c.available()));
    m.insert("free".into(), dec(c.free()));
    m.insert("occupied".into(), dec(c.occupied()));
    m.insert("product".into(), dec(c.product()));
    m
}

pub fn counts_fields(c: &CoverageCounts) -> Vec<String> {
    [c.available(), c.free(), c.occupied(), c.product()]
        .iter()
        .map(|v| v.to_string())
        .collect()
}

pub fn histogram_json(h: &CoverageHistogram) -> Value {
    dec_list(h.counts())
}

/// Column names `j0..jk` for a histogram over `k` moduli.
pub fn histogram_header(k: usize) -> Vec<String> {
    (0..=k).map(|j| format!("j{j}")).collect()
}

pub fn histogram_fields(h: Option<&CoverageHistogram>, k: usize) -> Vec<String> {
    match h {
        Some(h) => h.counts().iter().map(|c| c.to_string()).collect(),
        None => vec![String::new(); k + 1],
    }
}

pub fn join_list<T: ToString>(values: &[T]) -> String {
    values.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(",")
}

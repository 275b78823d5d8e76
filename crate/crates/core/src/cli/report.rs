//! Report envelope and the three output formats.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use serde_json::Value;

/// Significant digits kept in every emitted number.
pub const SIGNIFICANT_DIGITS: usize = 12;

/// Round to [`SIGNIFICANT_DIGITS`]; `-0` becomes `0`.
pub fn round_sig(x: f64) -> f64 {
    if x == 0.0 || !x.is_finite() {
        return if x == 0.0 { 0.0 } else { x };
    }
    let r: f64 = format!("{:.*e}", SIGNIFICANT_DIGITS - 1, x).parse().expect("formatted float parses");
    if r == 0.0 {
        0.0
    } else {
        r
    }
}

/// Text form of an already rounded number.
pub fn fmt_num(x: f64) -> String {
    let x = round_sig(x);
    if x.is_finite() && x != 0.0 && (x.abs() < 1e-4 || x.abs() >= 1e15) {
        format!("{x:e}")
    } else {
        format!("{x}")
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Envelope {
    pub command: String,
    pub version: String,
    pub input: Value,
    pub conventions: Vec<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub warnings: Vec<String>,
    pub payload: Value,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Table {
    pub name: String,
    pub headers: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new(name: &str, headers: &[&str]) -> Self {
        Table { name: name.to_string(), headers: headers.iter().map(|h| h.to_string()).collect(), rows: Vec::new() }
    }

    pub fn push(&mut self, row: Vec<String>) {
        self.rows.push(row);
    }
}

/// A finished command result: the structured envelope plus its tabular view.
#[derive(Clone, Debug)]
pub struct Report {
    pub envelope: Envelope,
    pub tables: Vec<Table>,
}

impl Report {
    pub fn json(&self) -> String {
        let mut s = serde_json::to_string_pretty(&self.envelope).expect("envelope serializes");
        s.push('\n');
        s
    }

    pub fn text(&self) -> String {
        let mut out = String::new();
        let e = &self.envelope;
        let _ = writeln!(out, "qunit {} ({})", e.command, e.version);
        for c in &e.conventions {
            let _ = writeln!(out, "  convention: {c}");
        }
        for w in &e.warnings {
            let _ = writeln!(out, "  warning: {w}");
        }
        for table in &self.tables {
            out.push('\n');
            let _ = writeln!(out, "[{}]", table.name);
            let mut widths: Vec<usize> = table.headers.iter().map(|h| h.chars().count()).collect();
            for row in &table.rows {
                for (k, cell) in row.iter().enumerate() {
                    if k < widths.len() {
                        widths[k] = widths[k].max(cell.chars().count());
                    }
                }
            }
            let line = |cells: &[String]| {
                let padded: Vec<String> =
                    cells.iter().zip(&widths).map(|(c, w)| format!("{c:<w$}", w = *w)).collect();
                padded.join("  ").trim_end().to_string()
            };
            let _ = writeln!(out, "{}", line(&table.headers));
            for row in &table.rows {
                let _ = writeln!(out, "{}", line(row));
            }
        }
        out
    }

    /// Every record starts with the table name; each table opens with its header.
    pub fn csv(&self) -> String {
        let mut w = csv::WriterBuilder::new().flexible(true).from_writer(Vec::new());
        for table in &self.tables {
            let mut header = vec!["table".to_string()];
            header.extend(table.headers.iter().cloned());
            w.write_record(&header).expect("write to memory");
            for row in &table.rows {
                let mut record = vec![table.name.clone()];
                record.extend(row.iter().cloned());
                w.write_record(&record).expect("write to memory");
            }
        }
        String::from_utf8(w.into_inner().expect("flush to memory")).expect("csv is utf-8")
    }
}

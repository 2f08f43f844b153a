//! CSV and JSON rendering. Column sets are fixed: `x,y,value` for samples,
//! `check,max_error,tolerance,pass` for verification reports.

use std::io::Write;
use std::path::Path;

use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

/// A rectangular table that renders as CSV or as a JSON array of objects.
#[derive(Debug, Clone, Default)]
pub struct Table {
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<Cell>>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(untagged)]
pub enum Cell {
    Num(f64),
    Int(usize),
    Text(String),
    Bool(bool),
}

impl Cell {
    fn csv(&self) -> String {
        match self {
            Cell::Num(v) => format_float(*v),
            Cell::Int(v) => v.to_string(),
            Cell::Text(s) if s.contains([',', '"', '\n']) => {
                format!("\"{}\"", s.replace('"', "\"\""))
            }
            Cell::Text(s) => s.clone(),
            Cell::Bool(b) => b.to_string(),
        }
    }

    fn json(&self) -> serde_json::Value {
        match self {
            // JSON has no infinities; they become strings
            Cell::Num(v) if !v.is_finite() => serde_json::Value::String(format_float(*v)),
            other => serde_json::to_value(other).expect("cells serialize"),
        }
    }
}

/// Shortest representation that round-trips.
pub fn format_float(v: f64) -> String {
    if v.is_nan() {
        "nan".into()
    } else if v.is_infinite() {
        if v > 0.0 {
            "inf".into()
        } else {
            "-inf".into()
        }
    } else {
        format!("{v:?}")
    }
}

impl Table {
    pub fn new(columns: &[&'static str]) -> Self {
        Table {
            columns: columns.to_vec(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    pub fn to_csv(&self) -> String {
        let mut s = self.columns.join(",");
        s.push('\n');
        for r in &self.rows {
            s.push_str(&r.iter().map(Cell::csv).collect::<Vec<_>>().join(","));
            s.push('\n');
        }
        s
    }

    pub fn to_json_value(&self) -> serde_json::Value {
        serde_json::Value::Array(
            self.rows
                .iter()
                .map(|r| {
                    let obj = self
                        .columns
                        .iter()
                        .map(|c| c.to_string())
                        .zip(r.iter().map(Cell::json))
                        .collect();
                    serde_json::Value::Object(obj)
                })
                .collect(),
        )
    }
}

/// Named tables plus scalar notes, rendered as one document.
#[derive(Debug, Clone, Default)]
pub struct Report {
    pub sections: Vec<(&'static str, Table)>,
    pub notes: Vec<(&'static str, Cell)>,
}

impl Report {
    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Csv => {
                let mut out = String::new();
                for (i, (_, t)) in self.sections.iter().enumerate() {
                    if i > 0 {
                        out.push('\n');
                    }
                    out.push_str(&t.to_csv());
                }
                for (k, v) in &self.notes {
                    out.push_str(&format!("# {k}: {}\n", v.csv()));
                }
                out
            }
            Format::Json => {
                let mut obj = serde_json::Map::new();
                for (name, t) in &self.sections {
                    obj.insert(name.to_string(), t.to_json_value());
                }
                for (k, v) in &self.notes {
                    obj.insert(k.to_string(), v.json());
                }
                let mut s = serde_json::to_string_pretty(&serde_json::Value::Object(obj))
                    .expect("valid json");
                s.push('\n');
                s
            }
        }
    }
}

pub fn emit(text: &str, out: Option<&Path>) -> std::io::Result<()> {
    match out {
        Some(path) => std::fs::write(path, text),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(text.as_bytes())?;
            stdout.flush()
        }
    }
}

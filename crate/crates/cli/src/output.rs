//! Reports: a JSON record plus a text rendering.

use std::fmt::Display;

use schemelink_core::Poly;
use serde_json::Value;

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Clone, Debug)]
pub struct Report {
    pub json: Value,
    pub text: String,
}

impl Report {
    pub fn new(json: Value, text: String) -> Report {
        Report { json, text }
    }

    /// Keys come out sorted (serde_json's default map is ordered), so equal
    /// reports serialize to identical bytes.
    pub fn emit(&self, format: Format) -> String {
        match format {
            Format::Json => {
                let mut s = serde_json::to_string_pretty(&self.json).expect("reports are plain JSON");
                s.push('\n');
                s
            }
            Format::Text => {
                let mut s = self.text.clone();
                if !s.ends_with('\n') {
                    s.push('\n');
                }
                s
            }
        }
    }
}

/// `0:1 1:3 2:6`.
pub fn hf_line(values: &[usize]) -> String {
    values.iter().enumerate().map(|(i, h)| format!("{i}:{h}")).collect::<Vec<_>>().join(" ")
}

pub fn strings<T: Display>(items: &[T]) -> Vec<String> {
    items.iter().map(|t| t.to_string()).collect()
}

pub fn poly_opt(p: &Option<Poly>) -> Value {
    match p {
        Some(p) => Value::String(p.to_string()),
        None => Value::Null,
    }
}

pub fn opt<T: Display>(v: Option<T>) -> String {
    match v {
        Some(v) => v.to_string(),
        None => "-".into(),
    }
}

/// Left-aligned columns separated by two spaces.
pub fn table(header: &[&str], rows: &[Vec<String>]) -> String {
    let mut widths: Vec<usize> = header.iter().map(|h| h.len()).collect();
    for row in rows {
        for (w, cell) in widths.iter_mut().zip(row) {
            *w = (*w).max(cell.len());
        }
    }
    let line = |cells: Vec<&str>| {
        let padded: Vec<String> = cells.iter().zip(&widths).map(|(c, w)| format!("{c:<w$}")).collect();
        padded.join("  ").trim_end().to_string()
    };
    let mut out = vec![line(header.to_vec())];
    out.extend(rows.iter().map(|r| line(r.iter().map(String::as_str).collect())));
    out.join("\n")
}

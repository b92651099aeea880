use std::fmt::Write as _;
use std::fs;
use std::io::{self, Write};
use std::path::Path;

use clap::ValueEnum;
use serde_json::Value;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Table,
}

/// What a command produces: a table of rows or a structured document.
pub enum Output {
    Rows {
        headers: Vec<String>,
        rows: Vec<Vec<String>>,
    },
    Doc(Value),
}

impl Output {
    pub fn rows<S: Into<String>>(headers: impl IntoIterator<Item = S>, rows: Vec<Vec<String>>) -> Self {
        Output::Rows {
            headers: headers.into_iter().map(Into::into).collect(),
            rows,
        }
    }

    pub fn doc(v: impl serde::Serialize) -> Self {
        // serde_json's default map is a BTreeMap, so keys come out sorted
        Output::Doc(serde_json::to_value(v).expect("output is serializable"))
    }

    pub fn render(&self, format: Format) -> String {
        match (self, format) {
            (Output::Doc(v), Format::Json) => pretty(v),
            (Output::Rows { headers, rows }, Format::Json) => {
                let items = rows
                    .iter()
                    .map(|r| {
                        Value::Object(
                            headers
                                .iter()
                                .zip(r)
                                .map(|(h, c)| (h.clone(), Value::String(c.clone())))
                                .collect(),
                        )
                    })
                    .collect();
                pretty(&Value::Array(items))
            }
            (Output::Rows { headers, rows }, Format::Csv) => csv(headers, rows),
            (Output::Rows { headers, rows }, Format::Table) => table(headers, rows),
            (Output::Doc(v), f) => {
                let mut rows = Vec::new();
                flatten("", v, &mut rows);
                let headers = vec!["key".to_string(), "value".to_string()];
                if f == Format::Csv {
                    csv(&headers, &rows)
                } else {
                    table(&headers, &rows)
                }
            }
        }
    }
}

fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("json values serialize");
    s.push('\n');
    s
}

fn flatten(prefix: &str, v: &Value, out: &mut Vec<Vec<String>>) {
    let join = |k: &str| if prefix.is_empty() { k.to_string() } else { format!("{prefix}.{k}") };
    match v {
        Value::Object(m) => m.iter().for_each(|(k, v)| flatten(&join(k), v, out)),
        Value::Array(a) => a.iter().enumerate().for_each(|(i, v)| flatten(&join(&i.to_string()), v, out)),
        Value::String(s) => out.push(vec![prefix.to_string(), s.clone()]),
        other => out.push(vec![prefix.to_string(), other.to_string()]),
    }
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

fn csv(headers: &[String], rows: &[Vec<String>]) -> String {
    let mut out = String::new();
    for line in std::iter::once(headers).chain(rows.iter().map(Vec::as_slice)) {
        let fields: Vec<String> = line.iter().map(|f| csv_field(f)).collect();
        out.push_str(&fields.join(","));
        out.push('\n');
    }
    out
}

fn table(headers: &[String], rows: &[Vec<String>]) -> String {
    let mut widths: Vec<usize> = headers.iter().map(|h| h.chars().count()).collect();
    for r in rows {
        for (w, c) in widths.iter_mut().zip(r) {
            *w = (*w).max(c.chars().count());
        }
    }
    let mut out = String::new();
    let mut line = |cells: &[String]| {
        let padded: Vec<String> = cells
            .iter()
            .zip(&widths)
            .map(|(c, &w)| format!("{c:<w$}"))
            .collect();
        let _ = writeln!(out, "{}", padded.join("  ").trim_end());
    };
    line(headers);
    line(&widths.iter().map(|&w| "-".repeat(w)).collect::<Vec<_>>());
    for r in rows {
        line(r);
    }
    out
}

pub fn emit(text: &str, out: Option<&Path>) -> io::Result<()> {
    match out {
        Some(p) => fs::write(p, text),
        None => io::stdout().lock().write_all(text.as_bytes()),
    }
}

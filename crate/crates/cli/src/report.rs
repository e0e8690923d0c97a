//! Rendering of command results as JSON, CSV or plain text.

use std::fmt::Write as _;

use clap::ValueEnum;
use lspac::certificate::Certificate;
use lspac::exact::{to_decimal, Interval, Rational};
use serde_json::{json, Map, Value};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Clone, Debug)]
pub enum Field {
    Rational(Rational),
    Interval(Interval),
    Integer(u64),
    Text(String),
    Digits(Vec<u32>),
    Json(Value),
}

impl From<Rational> for Field {
    fn from(v: Rational) -> Self {
        Field::Rational(v)
    }
}

impl From<&Rational> for Field {
    fn from(v: &Rational) -> Self {
        Field::Rational(v.clone())
    }
}

impl From<Interval> for Field {
    fn from(v: Interval) -> Self {
        Field::Interval(v)
    }
}

impl From<u64> for Field {
    fn from(v: u64) -> Self {
        Field::Integer(v)
    }
}

impl From<usize> for Field {
    fn from(v: usize) -> Self {
        Field::Integer(v as u64)
    }
}

impl From<u32> for Field {
    fn from(v: u32) -> Self {
        Field::Integer(v as u64)
    }
}

impl From<String> for Field {
    fn from(v: String) -> Self {
        Field::Text(v)
    }
}

impl From<&str> for Field {
    fn from(v: &str) -> Self {
        Field::Text(v.to_string())
    }
}

impl From<Vec<u32>> for Field {
    fn from(v: Vec<u32>) -> Self {
        Field::Digits(v)
    }
}

impl From<Value> for Field {
    fn from(v: Value) -> Self {
        Field::Json(v)
    }
}

/// A command result: named fields, an optional certificate and an optional
/// CSV table used by `--format csv`.
#[derive(Clone, Debug, Default)]
pub struct Report {
    fields: Vec<(String, Field)>,
    certificate: Option<Certificate>,
    table: Option<String>,
}

impl Report {
    pub fn new() -> Self {
        Report::default()
    }

    pub fn field(mut self, key: &str, value: impl Into<Field>) -> Self {
        self.fields.push((key.to_string(), value.into()));
        self
    }

    pub fn certificate(mut self, cert: Certificate) -> Self {
        self.certificate = Some(cert);
        self
    }

    pub fn table(mut self, csv: String) -> Self {
        self.table = Some(csv);
        self
    }

    pub fn verified(&self) -> bool {
        self.certificate.as_ref().is_none_or(|c| c.verified)
    }

    pub fn render(&self, format: Format, decimals: Option<usize>) -> String {
        match format {
            Format::Json => self.render_json(decimals),
            Format::Csv => self.render_csv(decimals),
            Format::Text => self.render_text(decimals),
        }
    }

    fn render_json(&self, decimals: Option<usize>) -> String {
        let mut map = Map::new();
        for (key, field) in &self.fields {
            map.insert(key.clone(), field_json(field));
            if let (Some(d), Field::Rational(r)) = (decimals, field) {
                map.insert(format!("{key}_decimal"), Value::String(to_decimal(r, d)));
            }
        }
        if let Some(cert) = &self.certificate {
            if let Value::Object(c) = serde_json::to_value(cert).expect("certificates serialize") {
                map.extend(c);
            }
        }
        let mut out = serde_json::to_string_pretty(&Value::Object(map)).expect("json values serialize");
        out.push('\n');
        out
    }

    fn render_csv(&self, decimals: Option<usize>) -> String {
        if let Some(table) = &self.table {
            return table.clone();
        }
        let mut out = String::from("key,value\n");
        for (key, field) in &self.fields {
            let _ = writeln!(out, "{key},{}", csv_cell(&field_text(field, decimals)));
        }
        if let Some(cert) = &self.certificate {
            let _ = writeln!(out, "verified,{}", cert.verified);
            for w in &cert.witnesses {
                let _ = writeln!(out, "{},{}", csv_cell(&w.label), csv_cell(&w.value.to_string()));
            }
        }
        out
    }

    fn render_text(&self, decimals: Option<usize>) -> String {
        let mut out = String::new();
        for (key, field) in &self.fields {
            let _ = writeln!(out, "{key}: {}", field_text(field, decimals));
        }
        if let Some(cert) = &self.certificate {
            let status = if cert.verified { "verified" } else { "FAILED" };
            let _ = writeln!(out, "{}: {status}", cert.name);
            for w in &cert.witnesses {
                let _ = writeln!(out, "  {} = {}", w.label, w.value);
            }
            if !cert.notes.is_empty() {
                let _ = writeln!(out, "  note: {}", cert.notes);
            }
        }
        out
    }
}

fn field_json(field: &Field) -> Value {
    match field {
        Field::Rational(r) => Value::String(r.to_string()),
        Field::Interval(i) => json!({ "lo": i.lo().to_string(), "hi": i.hi().to_string() }),
        Field::Integer(n) => json!(n),
        Field::Text(s) => Value::String(s.clone()),
        Field::Digits(d) => json!(d),
        Field::Json(v) => v.clone(),
    }
}

fn field_text(field: &Field, decimals: Option<usize>) -> String {
    match (field, decimals) {
        (Field::Rational(r), Some(d)) => format!("{r} ({})", to_decimal(r, d)),
        (Field::Rational(r), None) => r.to_string(),
        (Field::Interval(i), Some(d)) => format!("{i} ({}, {})", to_decimal(i.lo(), d), to_decimal(i.hi(), d)),
        (Field::Interval(i), None) => i.to_string(),
        (Field::Integer(n), _) => n.to_string(),
        (Field::Text(s), _) => s.clone(),
        (Field::Digits(d), _) => d.iter().map(u32::to_string).collect::<Vec<_>>().join(","),
        (Field::Json(v), _) => v.to_string(),
    }
}

fn csv_cell(text: &str) -> String {
    if text.contains([',', '"', '\n']) {
        format!("\"{}\"", text.replace('"', "\"\""))
    } else {
        text.to_string()
    }
}

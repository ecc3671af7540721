//! Record output as CSV or JSON lines.
//!
//! Floats are printed with 17 significant digits so they round-trip.

use std::io::Write;

use clap::ValueEnum;
use serde::Deserialize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    Csv,
    Jsonl,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Value {
    Num(f64),
    Int(i64),
    Text(String),
    Bool(bool),
}

impl From<f64> for Value {
    fn from(x: f64) -> Self {
        Value::Num(x)
    }
}

impl From<i64> for Value {
    fn from(x: i64) -> Self {
        Value::Int(x)
    }
}

impl From<usize> for Value {
    fn from(x: usize) -> Self {
        Value::Int(x as i64)
    }
}

impl From<&str> for Value {
    fn from(s: &str) -> Self {
        Value::Text(s.to_string())
    }
}

impl From<bool> for Value {
    fn from(b: bool) -> Self {
        Value::Bool(b)
    }
}

pub fn fmt_num(x: f64) -> String {
    format!("{x:.16e}")
}

/// One output record: ordered `(column, value)` pairs.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Record(pub Vec<(&'static str, Value)>);

impl Record {
    pub fn new() -> Self {
        Record(Vec::new())
    }

    pub fn with(mut self, key: &'static str, v: impl Into<Value>) -> Self {
        self.0.push((key, v.into()));
        self
    }

    fn csv_fields(&self) -> Vec<String> {
        self.0
            .iter()
            .map(|(_, v)| match v {
                Value::Num(x) => fmt_num(*x),
                Value::Int(i) => i.to_string(),
                Value::Text(s) => s.clone(),
                Value::Bool(b) => b.to_string(),
            })
            .collect()
    }

    fn json_line(&self) -> String {
        let body: Vec<String> = self
            .0
            .iter()
            .map(|(k, v)| {
                let val = match v {
                    Value::Num(x) if x.is_finite() => fmt_num(*x),
                    Value::Num(_) => "null".to_string(),
                    Value::Int(i) => i.to_string(),
                    Value::Text(s) => serde_json::Value::String(s.clone()).to_string(),
                    Value::Bool(b) => b.to_string(),
                };
                format!("{}:{}", serde_json::Value::String((*k).to_string()), val)
            })
            .collect();
        format!("{{{}}}", body.join(","))
    }
}

/// Write records with a header row (CSV) or one object per line (JSONL).
/// `trailer` lines are appended verbatim after the records.
pub fn write_records(
    out: &mut dyn Write,
    format: OutputFormat,
    records: &[Record],
    trailer: &[String],
) -> std::io::Result<()> {
    match format {
        OutputFormat::Csv => {
            let mut w = csv::WriterBuilder::new()
                .terminator(csv::Terminator::Any(b'\n'))
                .from_writer(&mut *out);
            if let Some(first) = records.first() {
                w.write_record(first.0.iter().map(|(k, _)| *k))?;
            }
            for r in records {
                w.write_record(r.csv_fields())?;
            }
            w.flush()?;
        }
        OutputFormat::Jsonl => {
            for r in records {
                writeln!(out, "{}", r.json_line())?;
            }
        }
    }
    for line in trailer {
        writeln!(out, "{line}")?;
    }
    out.flush()
}

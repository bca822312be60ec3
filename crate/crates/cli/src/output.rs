//! Dataset container and CSV/JSON writers. Every emitted file is
//! reproducible bit-for-bit for a fixed configuration: row order, column
//! order, and float formatting (shortest round-trip) are all deterministic.

use std::io::Write;

use serde::Serialize;
use serde_json::{json, Value};

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Serialize)]
pub struct Meta {
    pub command: String,
    pub version: String,
    pub s_min: f64,
    pub s_max: f64,
    pub n: usize,
    #[serde(skip_serializing_if = "Value::is_null")]
    pub params: Value,
}

#[derive(Debug)]
pub struct Dataset {
    pub meta: Meta,
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<Value>>,
}

impl Dataset {
    pub fn new(meta: Meta, columns: Vec<&'static str>) -> Self {
        Dataset {
            meta,
            columns,
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<Value>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    pub fn write(&self, format: Format, out: &mut dyn Write) -> std::io::Result<()> {
        match format {
            Format::Csv => self.write_csv(out),
            Format::Json => self.write_json(out),
        }
    }

    fn write_csv(&self, out: &mut dyn Write) -> std::io::Result<()> {
        writeln!(out, "{}", self.columns.join(","))?;
        for row in &self.rows {
            let cells: Vec<String> = row.iter().map(cell_to_csv).collect();
            writeln!(out, "{}", cells.join(","))?;
        }
        Ok(())
    }

    fn write_json(&self, out: &mut dyn Write) -> std::io::Result<()> {
        let doc = json!({
            "meta": self.meta,
            "columns": self.columns,
            "rows": self.rows,
        });
        serde_json::to_writer_pretty(&mut *out, &doc)?;
        writeln!(out)
    }
}

fn cell_to_csv(v: &Value) -> String {
    match v {
        Value::Null => String::new(),
        Value::Number(n) => n.to_string(),
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

/// A float as a JSON value; non-finite values map to null.
pub fn num(v: f64) -> Value {
    serde_json::Number::from_f64(v).map_or(Value::Null, Value::Number)
}

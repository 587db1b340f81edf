use serde_json::Value;
use supersinglet_core::protocols::TRANSCRIPT_SCHEMA_VERSION;
use supersinglet_core::{Error, Result};

use crate::cli::Format;

/// What a command produced: a JSON document, an optional flat table, and a one-line summary.
pub struct Report {
    pub json: Value,
    pub table: Option<Table>,
    pub summary: String,
}

pub struct Table {
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new<S: Into<String>>(header: impl IntoIterator<Item = S>) -> Self {
        Table {
            header: header.into_iter().map(Into::into).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<String>) {
        self.rows.push(row);
    }
}

/// Top-level fields every JSON document carries.
pub fn envelope(command: &str, seed: u64, body: Value) -> Value {
    let mut doc = serde_json::json!({
        "schema_version": TRANSCRIPT_SCHEMA_VERSION,
        "command": command,
        "seed": seed,
        "rng": supersinglet_core::rng::RNG_ALGORITHM,
    });
    if let (Value::Object(head), Value::Object(rest)) = (&mut doc, body) {
        head.extend(rest);
    }
    doc
}

pub fn render(report: &Report, format: Format) -> Result<String> {
    match format {
        Format::Json => {
            let mut s = serde_json::to_string(&report.json)
                .map_err(|e| Error::Internal(e.to_string()))?;
            s.push('\n');
            Ok(s)
        }
        Format::Csv => {
            let table = report
                .table
                .as_ref()
                .ok_or_else(|| Error::InvalidInput("this command has no CSV form".into()))?;
            let mut w = csv::Writer::from_writer(Vec::new());
            let io = |e: csv::Error| Error::Internal(e.to_string());
            w.write_record(&table.header).map_err(io)?;
            for row in &table.rows {
                w.write_record(row).map_err(io)?;
            }
            let bytes = w.into_inner().map_err(|e| Error::Internal(e.to_string()))?;
            String::from_utf8(bytes).map_err(|e| Error::Internal(e.to_string()))
        }
    }
}

/// Space-separated list, for CSV cells.
pub fn joined<T: ToString>(xs: &[T]) -> String {
    xs.iter().map(ToString::to_string).collect::<Vec<_>>().join(" ")
}

/// Shortest round-tripping decimal form, with an exponent where that is shorter.
pub fn num(x: f64) -> String {
    serde_json::to_string(&x).unwrap_or_else(|_| x.to_string())
}

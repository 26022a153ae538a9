use std::io::Write;

use anyhow::Result;
use serde::ser::{Serialize, SerializeMap, Serializer};
use serde_json::Value;

use crate::cli::Format;

/// A report: either rows with a fixed header or a free JSON document.
pub enum Report {
    Table(Table),
    Document { json: Value, summary: Table },
}

pub struct Table {
    pub header: Vec<String>,
    pub rows: Vec<Vec<Value>>,
}

impl Table {
    pub fn new(header: &[&str]) -> Self {
        Self::with_header(header.iter().map(|h| h.to_string()).collect())
    }

    pub fn with_header(header: Vec<String>) -> Self {
        Self { header, rows: Vec::new() }
    }

    pub fn push(&mut self, row: Vec<Value>) {
        debug_assert_eq!(row.len(), self.header.len());
        self.rows.push(row);
    }
}

struct Row<'a> {
    header: &'a [String],
    cells: &'a [Value],
}

impl Serialize for Row<'_> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut map = s.serialize_map(Some(self.header.len()))?;
        for (k, v) in self.header.iter().zip(self.cells) {
            map.serialize_entry(k, v)?;
        }
        map.end()
    }
}

fn cell_text(v: &Value) -> String {
    match v {
        Value::Null => String::new(),
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

fn write_csv(table: &Table, out: &mut dyn Write) -> Result<()> {
    let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(out);
    w.write_record(&table.header)?;
    for row in &table.rows {
        w.write_record(row.iter().map(cell_text))?;
    }
    w.flush()?;
    Ok(())
}

fn write_json(value: &impl Serialize, out: &mut dyn Write) -> Result<()> {
    serde_json::to_writer_pretty(&mut *out, value)?;
    out.write_all(b"\n")?;
    Ok(())
}

pub fn write(report: &Report, format: Format, out: &mut dyn Write) -> Result<()> {
    match (report, format) {
        (Report::Table(t), Format::Csv) | (Report::Document { summary: t, .. }, Format::Csv) => {
            write_csv(t, out)
        }
        (Report::Table(t), Format::Json) => {
            let rows: Vec<Row> = t.rows.iter().map(|cells| Row { header: &t.header, cells }).collect();
            write_json(&rows, out)
        }
        (Report::Document { json, .. }, Format::Json) => write_json(json, out),
    }
}

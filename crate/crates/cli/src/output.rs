//! Rendering command results as JSON, CSV or plain text.

use clap::ValueEnum;
use serde_json::Value;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Pretty,
}

/// What a command produced, in every format it supports.
pub struct Report {
    pub json: Value,
    /// Header and rows for CSV; commands without a natural table leave it empty.
    pub table: Option<(Vec<String>, Vec<Vec<String>>)>,
    pub pretty: String,
    /// False when a verification ran and failed.
    pub ok: bool,
}

impl Report {
    pub fn new(json: Value, pretty: String) -> Self {
        Report {
            json,
            table: None,
            pretty,
            ok: true,
        }
    }

    pub fn with_table(mut self, header: &[&str], rows: Vec<Vec<String>>) -> Self {
        self.table = Some((header.iter().map(|h| h.to_string()).collect(), rows));
        self
    }

    pub fn failed_if(mut self, failed: bool) -> Self {
        self.ok = !failed;
        self
    }

    pub fn render(&self, format: Format) -> Result<String, String> {
        match format {
            Format::Json => serde_json::to_string_pretty(&self.json).map_err(|e| e.to_string()),
            Format::Pretty => Ok(self.pretty.clone()),
            Format::Csv => {
                let Some((header, rows)) = &self.table else {
                    return Err("this command has no tabular output; use --format json or pretty".into());
                };
                let mut w = csv::Writer::from_writer(Vec::new());
                w.write_record(header).map_err(|e| e.to_string())?;
                for r in rows {
                    w.write_record(r).map_err(|e| e.to_string())?;
                }
                let bytes = w.into_inner().map_err(|e| e.to_string())?;
                String::from_utf8(bytes).map_err(|e| e.to_string())
            }
        }
    }
}

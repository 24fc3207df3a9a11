use std::io::{self, Write};

use serde_json::{Map, Value};

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
}

/// A finished command: parameters and results in insertion order.
pub struct Report {
    pub command: &'static str,
    pub parameters: Map<String, Value>,
    pub results: Map<String, Value>,
}

impl Report {
    pub fn new(command: &'static str) -> Self {
        Report {
            command,
            parameters: Map::new(),
            results: Map::new(),
        }
    }

    pub fn param(mut self, key: &str, v: impl Into<Value>) -> Self {
        self.parameters.insert(key.to_string(), v.into());
        self
    }

    pub fn set(&mut self, key: &str, v: impl Into<Value>) {
        self.results.insert(key.to_string(), v.into());
    }

    pub fn emit(&self, format: Format, runtime_ms: u128, out: &mut dyn Write) -> io::Result<()> {
        match format {
            Format::Json => {
                let mut obj = Map::new();
                obj.insert("command".into(), self.command.into());
                obj.insert("parameters".into(), Value::Object(self.parameters.clone()));
                obj.insert("results".into(), Value::Object(self.results.clone()));
                obj.insert("runtime_ms".into(), Value::from(runtime_ms as u64));
                writeln!(out, "{}", Value::Object(obj))
            }
            Format::Text => {
                for (k, v) in &self.results {
                    match v {
                        Value::Array(items) if items.iter().any(Value::is_object) => {
                            writeln!(out, "{k}:")?;
                            for item in items {
                                writeln!(out, "  {}", text_scalar(item))?;
                            }
                        }
                        _ => writeln!(out, "{k}: {}", text_scalar(v))?,
                    }
                }
                Ok(())
            }
            Format::Csv => self.emit_csv(out),
        }
    }

    /// A `rows` array of objects becomes a table; otherwise the scalar
    /// results form one row.
    fn emit_csv(&self, out: &mut dyn Write) -> io::Result<()> {
        let mut w = csv::Writer::from_writer(out);
        if let Some(Value::Array(rows)) = self.results.get("rows") {
            let mut header_done = false;
            for row in rows {
                if let Value::Object(obj) = row {
                    if !header_done {
                        w.write_record(obj.keys())?;
                        header_done = true;
                    }
                    w.write_record(obj.values().map(text_scalar))?;
                }
            }
        } else {
            w.write_record(self.results.keys())?;
            w.write_record(self.results.values().map(text_scalar))?;
        }
        w.flush()
    }
}

/// Plain rendering: strings unquoted, arrays joined by `;`, objects as
/// `key=value` pairs.
pub fn text_scalar(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Array(items) => items.iter().map(text_scalar).collect::<Vec<_>>().join(";"),
        Value::Object(obj) => obj
            .iter()
            .map(|(k, v)| format!("{k}={}", text_scalar(v)))
            .collect::<Vec<_>>()
            .join(" "),
        Value::Null => String::new(),
        other => other.to_string(),
    }
}

//! Report envelope and output. The JSON payload is deterministic for a
//! fixed configuration: no timestamps, fixed enumeration orders.

use std::fs;
use std::io::Write;

use serde::Serialize;
use serde_json::{json, Value};

use crate::{Common, Format};

#[derive(Debug)]
pub enum Failure {
    Config(String),
    Verification,
}

impl From<mtakit::Error> for Failure {
    fn from(e: mtakit::Error) -> Self {
        Failure::Config(e.to_string())
    }
}

pub fn to_value<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("reports serialize")
}

pub struct Report {
    pub command: &'static str,
    pub parameters: Value,
    pub sections: serde_json::Map<String, Value>,
    pub lines: Vec<String>,
    pub ok: bool,
    pub counterexample: Option<Value>,
}

impl Report {
    pub fn new(command: &'static str, parameters: Value) -> Self {
        Report {
            command,
            parameters,
            sections: serde_json::Map::new(),
            lines: Vec::new(),
            ok: true,
            counterexample: None,
        }
    }

    pub fn section(&mut self, name: &str, value: Value) {
        self.sections.insert(name.to_string(), value);
    }

    pub fn line(&mut self, s: impl Into<String>) {
        self.lines.push(s.into());
    }

    /// Record a failed check; the first one becomes the counterexample.
    pub fn fail(&mut self, witness: Value) {
        self.ok = false;
        if self.counterexample.is_none() {
            self.counterexample = Some(witness);
        }
    }

    fn status(&self) -> &'static str {
        if self.ok {
            "ok"
        } else {
            "fail"
        }
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => {
                let mut v = json!({
                    "schema": mtakit::SCHEMA,
                    "command": self.command,
                    "parameters": self.parameters,
                    "status": self.status(),
                });
                if let Some(c) = &self.counterexample {
                    v["counterexample"] = c.clone();
                }
                v["report"] = Value::Object(self.sections.clone());
                let mut s = serde_json::to_string_pretty(&v).expect("json");
                s.push('\n');
                s
            }
            Format::Text => {
                let mut s = String::new();
                for l in &self.lines {
                    s.push_str(l);
                    s.push('\n');
                }
                if let Some(c) = &self.counterexample {
                    s.push_str(&format!("counterexample: {c}\n"));
                }
                s.push_str(&format!("status: {}\n", self.status().to_uppercase()));
                s
            }
        }
    }

    pub fn emit(&self, common: &Common) -> Result<(), Failure> {
        let text = self.render(common.format);
        match &common.out {
            Some(path) => {
                fs::write(path, text).map_err(|e| Failure::Config(format!("cannot write {}: {e}", path.display())))?
            }
            None => {
                let mut out = std::io::stdout().lock();
                out.write_all(text.as_bytes())
                    .map_err(|e| Failure::Config(format!("cannot write to stdout: {e}")))?;
            }
        }
        if self.ok {
            Ok(())
        } else {
            Err(Failure::Verification)
        }
    }
}

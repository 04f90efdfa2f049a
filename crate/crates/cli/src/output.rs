//! Rendering of command results as a JSON envelope, CSV or plain text.

use std::io::Write;
use std::time::Duration;

use pairstab::Error;
use serde::Serialize;
use serde_json::{json, Value};

use crate::{OutputFormat, RunConfig};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Decided,
    AssertionFailed,
}

/// A command's result in every output shape.
pub struct Output {
    pub result: Value,
    pub headers: Vec<&'static str>,
    pub rows: Vec<Vec<String>>,
    pub text: String,
    pub status: Status,
}

impl Output {
    pub fn new(result: impl Serialize) -> Output {
        Output {
            result: serde_json::to_value(result).expect("results serialize"),
            headers: Vec::new(),
            rows: Vec::new(),
            text: String::new(),
            status: Status::Decided,
        }
    }

    pub fn table(mut self, headers: Vec<&'static str>, rows: Vec<Vec<String>>) -> Output {
        self.headers = headers;
        self.rows = rows;
        self
    }

    pub fn text(mut self, text: impl Into<String>) -> Output {
        self.text = text.into();
        self
    }

    pub fn failed_if(mut self, failed: bool) -> Output {
        if failed {
            self.status = Status::AssertionFailed;
        }
        self
    }
}

fn timing(elapsed: Duration) -> Value {
    json!({ "wall_ms": elapsed.as_secs_f64() * 1e3 })
}

pub fn emit(command: &str, config: &RunConfig, out: &Output, elapsed: Duration) -> Result<(), String> {
    let stdout = std::io::stdout();
    let mut lock = stdout.lock();
    match config.format {
        OutputFormat::Json => {
            let envelope = json!({
                "command": command,
                "config": config,
                "result": out.result,
                "timing": timing(elapsed),
            });
            let text = serde_json::to_string_pretty(&envelope).map_err(|e| e.to_string())?;
            writeln!(lock, "{text}").map_err(|e| e.to_string())
        }
        OutputFormat::Csv => {
            let mut w = csv::Writer::from_writer(lock);
            w.write_record(&out.headers).map_err(|e| e.to_string())?;
            for row in &out.rows {
                w.write_record(row).map_err(|e| e.to_string())?;
            }
            w.flush().map_err(|e| e.to_string())
        }
        OutputFormat::Text => writeln!(lock, "{}", out.text.trim_end()).map_err(|e| e.to_string()),
    }
}

fn error_kind(e: &Error) -> &'static str {
    match e {
        Error::Graph6 { .. } | Error::EdgeList { .. } => "parse",
        Error::InvalidArgument(_) | Error::Precondition(_) => "input",
        Error::VertexCap { .. } | Error::BudgetExceeded { .. } => "resource",
        Error::Invariant(_) => "invariant",
    }
}

pub fn emit_error(command: &str, config: &RunConfig, e: &Error, elapsed: Duration) {
    eprintln!("error: {e}");
    if config.format == OutputFormat::Json {
        let envelope = json!({
            "command": command,
            "config": config,
            "error": { "kind": error_kind(e), "message": e.to_string() },
            "timing": timing(elapsed),
        });
        println!("{}", serde_json::to_string_pretty(&envelope).expect("envelope serializes"));
    }
}

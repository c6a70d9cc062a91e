use std::io::Write;
use std::path::Path;

use clap::ValueEnum;
use serde_json::{json, Value};

use crate::error::CliResult;
use knotcalc::quantum::ResourceLimits;

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Text,
    Json,
}

#[derive(Clone, Debug)]
pub struct RunConfig {
    pub format: Format,
    pub max_cut_width: usize,
    pub max_states: usize,
    pub max_oracle_crossings: usize,
    pub seed: u64,
}

impl RunConfig {
    pub fn limits(&self) -> ResourceLimits {
        ResourceLimits { max_cut_width: self.max_cut_width, max_states: self.max_states }
    }

    pub fn to_value(&self) -> Value {
        json!({
            "max_cut_width": self.max_cut_width,
            "max_states": self.max_states,
            "max_oracle_crossings": self.max_oracle_crossings,
            "seed": self.seed,
        })
    }
}

/// Prints a report: the bare result as indented text, or a JSON envelope
/// that also records the command and the configuration.
pub fn report(config: &RunConfig, command: &str, result: Value) {
    match config.format {
        Format::Json => {
            let envelope = json!({
                "format": knotcalc::diagram::FORMAT_VERSION,
                "command": command,
                "config": config.to_value(),
                "result": result,
            });
            emit(&format!("{}\n", serde_json::to_string_pretty(&envelope).expect("serializable")));
        }
        Format::Text => {
            let mut out = String::new();
            render(&result, 0, &mut out);
            emit(&out);
        }
    }
}

/// Writes to stdout; a closed pipe on the reading side is not an error.
fn emit(text: &str) {
    let _ = std::io::stdout().lock().write_all(text.as_bytes());
}

fn scalar(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

fn render(v: &Value, indent: usize, out: &mut String) {
    let pad = "  ".repeat(indent);
    match v {
        Value::Object(map) => {
            for (k, x) in map {
                if x.is_object() {
                    out.push_str(&format!("{pad}{k}:\n"));
                    render(x, indent + 1, out);
                } else {
                    out.push_str(&format!("{pad}{k}: {}\n", scalar(x)));
                }
            }
        }
        other => out.push_str(&format!("{pad}{}\n", scalar(other))),
    }
}

/// Writes a JSON document to `path`, or to stdout.
pub fn write_document(path: Option<&Path>, text: &str) -> CliResult<()> {
    match path {
        Some(p) => std::fs::write(p, format!("{text}\n"))?,
        None => emit(&format!("{text}\n")),
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn text_rendering() {
        let mut out = String::new();
        render(&json!({"a": 1, "b": {"c": "q + q^-1"}}), 0, &mut out);
        assert_eq!(out, "a: 1\nb:\n  c: q + q^-1\n");
    }
}

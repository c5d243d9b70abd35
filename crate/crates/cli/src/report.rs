//! Reports and their text and json renderings.

use std::fmt::Write as _;

use num_bigint::BigUint;
use num_traits::ToPrimitive;
use serde_json::{json, Map, Value};

use crate::error::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Text,
    Json,
}

impl std::str::FromStr for Format {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "text" => Ok(Format::Text),
            "json" => Ok(Format::Json),
            other => Err(format!("unknown format `{other}` (expected text or json)")),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Report {
    pub command: String,
    pub config: Map<String, Value>,
    pub result: Value,
    /// Guards and fallbacks that fired while producing the result.
    pub guards: Vec<String>,
    /// False when a check inside the result failed.
    pub ok: bool,
}

impl Report {
    pub fn to_json(&self) -> Value {
        json!({
            "command": self.command,
            "config": self.config,
            "result": self.result,
            "guards": self.guards,
        })
    }
}

/// Exact integer: a json number when it fits in 64 bits, a decimal string otherwise.
pub fn big(n: &BigUint) -> Value {
    match n.to_u64() {
        Some(v) => Value::from(v),
        None => Value::from(n.to_string()),
    }
}

pub fn render(report: &Report, format: Format) -> String {
    match format {
        Format::Json => pretty(&report.to_json()),
        Format::Text => {
            let mut out = String::new();
            let _ = writeln!(out, "command: {}", report.command);
            out.push_str("config:\n");
            text_value(&mut out, &Value::Object(report.config.clone()), 1);
            out.push_str("result:\n");
            text_value(&mut out, &report.result, 1);
            if report.guards.is_empty() {
                out.push_str("guards: none\n");
            } else {
                out.push_str("guards:\n");
                for g in &report.guards {
                    let _ = writeln!(out, "  - {g}");
                }
            }
            out
        }
    }
}

pub fn render_error(err: &CliError, format: Format) -> String {
    match format {
        Format::Json => pretty(&json!({
            "error": { "kind": err.kind(), "message": err.to_string() }
        })),
        Format::Text => format!("error ({}): {err}\n", err.kind()),
    }
}

fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).unwrap_or_default();
    s.push('\n');
    s
}

fn scalar(v: &Value) -> Option<String> {
    match v {
        Value::Null => Some("none".into()),
        Value::Bool(b) => Some(b.to_string()),
        Value::Number(n) => Some(n.to_string()),
        Value::String(s) => Some(s.clone()),
        Value::Array(items) if items.iter().all(|i| !i.is_object() && !i.is_array()) => Some(format!(
            "[{}]",
            items.iter().filter_map(scalar).collect::<Vec<_>>().join(", ")
        )),
        _ => None,
    }
}

fn text_value(out: &mut String, v: &Value, depth: usize) {
    let pad = "  ".repeat(depth);
    match v {
        Value::Object(map) => {
            for (k, item) in map {
                match scalar(item) {
                    Some(s) => {
                        let _ = writeln!(out, "{pad}{k}: {s}");
                    }
                    None => {
                        let _ = writeln!(out, "{pad}{k}:");
                        text_value(out, item, depth + 1);
                    }
                }
            }
        }
        Value::Array(items) => {
            for item in items {
                match scalar(item) {
                    Some(s) => {
                        let _ = writeln!(out, "{pad}- {s}");
                    }
                    None => {
                        let _ = writeln!(out, "{pad}-");
                        text_value(out, item, depth + 1);
                    }
                }
            }
        }
        other => {
            let _ = writeln!(out, "{pad}{}", scalar(other).unwrap_or_default());
        }
    }
}

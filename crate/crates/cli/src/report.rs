//! Structured output: one JSON object per line, keys in sorted order.

use std::io::Write;

use serde::Serialize;
use serde_json::{json, Map, Value};

#[derive(Debug)]
pub struct Report {
    command: String,
    lines: Vec<Value>,
    checks: usize,
    failed: Vec<String>,
}

impl Report {
    pub fn new(command: &str, input: Value) -> Self {
        let mut r = Report {
            command: command.to_string(),
            lines: Vec::new(),
            checks: 0,
            failed: Vec::new(),
        };
        r.record("command", json!({ "command": command, "input": input }));
        r
    }

    /// Appends `{"record": kind, ..body}`; a non-object body goes under `value`.
    pub fn record(&mut self, kind: &str, body: Value) {
        let mut m = Map::new();
        m.insert("record".into(), Value::from(kind));
        match body {
            Value::Object(o) => m.extend(o),
            Value::Null => {}
            v => {
                m.insert("value".into(), v);
            }
        }
        self.lines.push(Value::Object(m));
    }

    /// One check with its inputs and margin; a positive margin means the
    /// check holds with room to spare, `None` for purely discrete checks.
    pub fn check(&mut self, id: &str, inputs: Value, margin: Option<f64>, pass: bool) {
        self.checks += 1;
        if !pass {
            self.failed.push(id.to_string());
        }
        self.record(
            "check",
            json!({
                "id": id,
                "inputs": inputs,
                "margin": margin.filter(|m| m.is_finite()),
                "verdict": if pass { "pass" } else { "fail" },
            }),
        );
    }

    pub fn passed(&self) -> bool {
        self.failed.is_empty()
    }

    pub fn failed(&self) -> &[String] {
        &self.failed
    }

    pub fn checks(&self) -> usize {
        self.checks
    }

    pub fn command(&self) -> &str {
        &self.command
    }

    /// Moves the checks of `sub` into this report, each tagged with `group`;
    /// its other records are dropped.
    pub fn absorb(&mut self, sub: Report, group: &str) {
        for mut v in sub.lines {
            if v["record"] == "check" {
                v["group"] = Value::from(group);
                self.lines.push(v);
            }
        }
        self.checks += sub.checks;
        self.failed.extend(sub.failed);
    }

    /// The record lines followed by a summary record.
    pub fn into_lines(mut self) -> Vec<String> {
        let summary = json!({
            "command": self.command,
            "checks": self.checks,
            "failed": self.failed,
            "verdict": if self.failed.is_empty() { "pass" } else { "fail" },
        });
        self.record("summary", summary);
        self.lines.iter().map(Value::to_string).collect()
    }

    pub fn write_to(self, out: &mut dyn Write) -> std::io::Result<()> {
        for line in self.into_lines() {
            writeln!(out, "{line}")?;
        }
        out.flush()
    }
}

pub fn to_value<T: Serialize>(x: &T) -> Value {
    serde_json::to_value(x).unwrap_or(Value::Null)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn records_are_flat_sorted_objects() {
        let mut r = Report::new("demo", json!({"z": 1, "a": 2}));
        r.record("point", json!({"y": 1.5, "x": -0.5}));
        r.check("ok", json!({}), Some(0.25), true);
        r.check("bad", json!({}), Some(f64::NAN), false);
        assert!(!r.passed());
        let lines = r.into_lines();
        assert_eq!(lines.len(), 5);
        assert_eq!(lines[1], r#"{"record":"point","x":-0.5,"y":1.5}"#);
        assert!(lines[3].contains(r#""margin":null"#));
        assert!(lines[4].contains(r#""failed":["bad"]"#));
        for l in &lines {
            assert!(serde_json::from_str::<Value>(l).is_ok());
        }
    }
}

//! The JSON report shared by every command.

use std::fmt::{Display, Write as _};

use serde::Serialize;
use serde_json::Value;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub pass: bool,
    pub expected: String,
    pub actual: String,
}

impl Check {
    /// Passes when the rendered values agree.
    pub fn equal(name: impl Into<String>, expected: impl Display, actual: impl Display) -> Self {
        let (expected, actual) = (expected.to_string(), actual.to_string());
        Self {
            name: name.into(),
            pass: expected == actual,
            expected,
            actual,
        }
    }

    pub fn holds(
        name: impl Into<String>,
        pass: bool,
        expected: impl Display,
        actual: impl Display,
    ) -> Self {
        Self {
            name: name.into(),
            pass,
            expected: expected.to_string(),
            actual: actual.to_string(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Timing {
    pub elapsed_ms: u64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Report {
    pub command: String,
    pub parameters: Value,
    pub results: Value,
    pub checks: Vec<Check>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timing: Option<Timing>,
}

impl Report {
    pub fn new(command: impl Into<String>, parameters: Value) -> Self {
        Self {
            command: command.into(),
            parameters,
            results: Value::Null,
            checks: Vec::new(),
            timing: None,
        }
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.pass)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report values are plain JSON")
    }

    /// A plain-text rendering of the same data.
    pub fn to_table(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "command: {}", self.command);
        flatten("parameters", &self.parameters, &mut out);
        flatten("results", &self.results, &mut out);
        if !self.checks.is_empty() {
            let width = self.checks.iter().map(|c| c.name.len()).max().unwrap_or(0);
            let _ = writeln!(out, "checks:");
            for c in &self.checks {
                let mark = if c.pass { "PASS" } else { "FAIL" };
                let _ = writeln!(
                    out,
                    "  {mark}  {:<width$}  expected {}  actual {}",
                    c.name, c.expected, c.actual
                );
            }
            let passed = self.checks.iter().filter(|c| c.pass).count();
            let _ = writeln!(out, "  {passed}/{} passed", self.checks.len());
        }
        if let Some(t) = &self.timing {
            let _ = writeln!(out, "elapsed_ms: {}", t.elapsed_ms);
        }
        out
    }
}

fn flatten(prefix: &str, value: &Value, out: &mut String) {
    match value {
        Value::Object(map) => {
            for (k, v) in map {
                flatten(&format!("{prefix}.{k}"), v, out);
            }
        }
        Value::Array(items) if items.iter().any(|v| v.is_object() || v.is_array()) => {
            for (i, v) in items.iter().enumerate() {
                flatten(&format!("{prefix}[{i}]"), v, out);
            }
        }
        Value::String(s) => {
            let _ = writeln!(out, "  {prefix} = {s}");
        }
        other => {
            let _ = writeln!(out, "  {prefix} = {other}");
        }
    }
}

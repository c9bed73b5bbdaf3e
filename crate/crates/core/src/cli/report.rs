//! Versioned, deterministic reports.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

use serde::Serialize;
use serde_json::{json, Value};

use crate::exact::{CMatrix, GaussianRational, Subspace};

pub const SCHEMA: u32 = 1;

/// Ordered from best to worst; the overall status is the maximum.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Unsupported,
    Fail,
    Error,
}

impl Status {
    pub fn from_bool(ok: bool) -> Self {
        if ok {
            Status::Pass
        } else {
            Status::Fail
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Unsupported => "unsupported",
            Status::Fail => "fail",
            Status::Error => "error",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Check {
    pub status: Status,
    /// Nonzero residual entries as polynomial strings; empty on success.
    pub residuals: Vec<String>,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Report {
    pub command: String,
    pub input: Value,
    pub checks: BTreeMap<String, Check>,
    pub outputs: BTreeMap<String, Value>,
    /// Library operations the command invoked.
    pub operations: BTreeSet<String>,
}

impl Report {
    pub fn new(command: &str, input: Value) -> Self {
        Report {
            command: command.to_string(),
            input,
            checks: BTreeMap::new(),
            outputs: BTreeMap::new(),
            operations: BTreeSet::new(),
        }
    }

    pub fn op(&mut self, name: &str) {
        self.operations.insert(name.to_string());
    }

    pub fn check(&mut self, name: &str, status: Status, residuals: Vec<String>, detail: impl Into<String>) {
        self.checks.insert(name.to_string(), Check { status, residuals, detail: detail.into() });
    }

    pub fn pass_if(&mut self, name: &str, ok: bool, detail: impl Into<String>) {
        self.check(name, Status::from_bool(ok), Vec::new(), detail);
    }

    /// Pass when `residuals` is empty.
    pub fn residual_check(&mut self, name: &str, residuals: Vec<String>, detail: impl Into<String>) {
        let status = Status::from_bool(residuals.is_empty());
        self.check(name, status, residuals, detail);
    }

    pub fn error(&mut self, name: &str, detail: impl Into<String>) {
        self.check(name, Status::Error, Vec::new(), detail);
    }

    pub fn output(&mut self, name: &str, value: Value) {
        self.outputs.insert(name.to_string(), value);
    }

    /// Worst check status; `pass` with no checks.
    pub fn status(&self) -> Status {
        self.checks.values().map(|c| c.status).max().unwrap_or(Status::Pass)
    }

    /// 0 on pass or unsupported, 1 on any fail or error.
    pub fn exit_code(&self) -> i32 {
        match self.status() {
            Status::Pass | Status::Unsupported => 0,
            Status::Fail | Status::Error => 1,
        }
    }

    pub fn to_value(&self) -> Value {
        json!({
            "schema": SCHEMA,
            "command": self.command,
            "input": self.input,
            "status": self.status(),
            "checks": self.checks,
            "outputs": self.outputs,
            "operations": self.operations,
        })
    }

    pub fn to_json(&self) -> String {
        self.to_value().to_string()
    }

    /// Human-readable rendering with the same content as the JSON form.
    pub fn to_pretty(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "gckit {} (schema {SCHEMA}): {}", self.command, self.status().as_str());
        let _ = writeln!(s, "checks:");
        for (name, c) in &self.checks {
            let _ = write!(s, "  [{}] {name}", c.status.as_str());
            if !c.detail.is_empty() {
                let _ = write!(s, ": {}", c.detail);
            }
            s.push('\n');
            for r in &c.residuals {
                let _ = writeln!(s, "      {r}");
            }
        }
        if !self.outputs.is_empty() {
            let _ = writeln!(s, "outputs:");
            for (name, v) in &self.outputs {
                let _ = writeln!(s, "  {name}: {}", v);
            }
        }
        let ops: Vec<&str> = self.operations.iter().map(String::as_str).collect();
        let _ = writeln!(s, "operations: {}", ops.join(", "));
        s
    }
}

pub fn scalar(c: &GaussianRational) -> Value {
    Value::String(c.to_string())
}

pub fn matrix(m: &CMatrix) -> Value {
    json!(m.to_strings())
}

pub fn vectors(s: &Subspace) -> Value {
    json!(s.basis_vectors().iter().map(|v| v.iter().map(ToString::to_string).collect::<Vec<_>>()).collect::<Vec<_>>())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn status_is_the_worst_check() {
        let mut r = Report::new("check", Value::Null);
        assert_eq!(r.exit_code(), 0);
        r.pass_if("a", true, "");
        r.check("b", Status::Unsupported, vec![], "");
        assert_eq!((r.status(), r.exit_code()), (Status::Unsupported, 0));
        r.residual_check("c", vec!["x1".into()], "");
        assert_eq!((r.status(), r.exit_code()), (Status::Fail, 1));
        let v = r.to_value();
        assert_eq!(v["schema"], 1);
        assert_eq!(v["checks"]["c"]["status"], "fail");
        assert!(r.to_pretty().contains("[fail] c"));
    }
}

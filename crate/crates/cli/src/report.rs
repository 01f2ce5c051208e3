use std::fmt::Write as _;
use std::process::ExitCode;

use serde::Serialize;
use serde_json::Value;

pub const REPORT_SCHEMA: &str = "report/v1";

/// Exit statuses. Stable across runs.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Pass = 0,
    Fail = 1,
    Usage = 2,
    Guard = 3,
}

impl From<Status> for ExitCode {
    fn from(s: Status) -> Self {
        ExitCode::from(s as u8)
    }
}

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Guard(String),
}

impl CliError {
    pub fn status(&self) -> Status {
        match self {
            CliError::Usage(_) => Status::Usage,
            CliError::Guard(_) => Status::Guard,
        }
    }

    pub fn message(&self) -> &str {
        match self {
            CliError::Usage(m) | CliError::Guard(m) => m,
        }
    }
}

impl From<omega_nerve::Error> for CliError {
    fn from(e: omega_nerve::Error) -> Self {
        CliError::Usage(e.to_string())
    }
}

pub type CliResult<T> = Result<T, CliError>;

#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Value>,
}

impl Check {
    pub fn pass(name: impl Into<String>, detail: impl Into<String>) -> Self {
        Self {
            name: name.into(),
            passed: true,
            detail: detail.into(),
            witness: None,
        }
    }

    pub fn fail(name: impl Into<String>, detail: impl Into<String>, witness: Value) -> Self {
        Self {
            name: name.into(),
            passed: false,
            detail: detail.into(),
            witness: Some(witness),
        }
    }

    pub fn from_bool(name: impl Into<String>, ok: bool, detail: impl Into<String>) -> Self {
        let detail = detail.into();
        if ok {
            Self::pass(name, detail)
        } else {
            Self::fail(name, detail.clone(), Value::String(detail))
        }
    }
}

/// Everything but `timing_ms` is a function of the inputs.
#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub schema: &'static str,
    pub command: String,
    pub version: &'static str,
    pub checks: Vec<Check>,
    #[serde(skip_serializing_if = "serde_json::Map::is_empty")]
    pub data: serde_json::Map<String, Value>,
    pub passed: bool,
    pub timing_ms: u128,
}

impl Report {
    pub fn new(command: String) -> Self {
        Self {
            schema: REPORT_SCHEMA,
            command,
            version: env!("CARGO_PKG_VERSION"),
            checks: Vec::new(),
            data: serde_json::Map::new(),
            passed: true,
            timing_ms: 0,
        }
    }

    pub fn push(&mut self, c: Check) {
        self.passed &= c.passed;
        self.checks.push(c);
    }

    pub fn put(&mut self, key: &str, value: impl Serialize) {
        let v = serde_json::to_value(value).expect("serializable report data");
        self.data.insert(key.to_string(), v);
    }

    pub fn status(&self) -> Status {
        if self.passed {
            Status::Pass
        } else {
            Status::Fail
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("serializable report")
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "{}", self.command);
        for (k, v) in &self.data {
            match v {
                Value::String(s) => {
                    let _ = writeln!(out, "{k}: {s}");
                }
                Value::Array(items) if items.iter().all(Value::is_string) => {
                    let _ = writeln!(out, "{k}:");
                    for i in items {
                        let _ = writeln!(out, "  {}", i.as_str().unwrap_or_default());
                    }
                }
                other => {
                    let _ = writeln!(out, "{k}: {other}");
                }
            }
        }
        for c in &self.checks {
            let tag = if c.passed { "PASS" } else { "FAIL" };
            let _ = writeln!(out, "{tag}  {}  {}", c.name, c.detail);
            if let Some(w) = &c.witness {
                if !w.is_string() {
                    let _ = writeln!(out, "      witness: {w}");
                }
            }
        }
        let verdict = if self.passed { "ok" } else { "FAILED" };
        let _ = writeln!(out, "{verdict} ({} ms)", self.timing_ms);
        out
    }
}

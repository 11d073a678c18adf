use std::fmt::Write as _;

use serde::Serialize;
use whtorsion_core::Error;

/// Everything a command prints. The human and JSON renderings are produced
/// from the same fields.
#[derive(Debug)]
pub struct Report {
    pub command: String,
    pub inputs: Vec<(String, String)>,
    pub results: Vec<(String, String)>,
    pub status: Status,
    pub exit_code: u8,
    /// A file body printed verbatim instead of the text report.
    pub raw: Option<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Status {
    Ok,
    NotAcyclic,
    Mismatch,
    Error,
    CrossCheckFailed,
}

impl Status {
    fn code(self) -> u8 {
        match self {
            Status::Ok => 0,
            Status::Error => 1,
            Status::NotAcyclic | Status::Mismatch => 2,
            Status::CrossCheckFailed => 3,
        }
    }
}

impl Report {
    pub fn new(command: &str) -> Self {
        Self { command: command.into(), inputs: vec![], results: vec![], status: Status::Ok, exit_code: 0, raw: None }
    }

    pub fn input(mut self, key: &str, value: impl ToString) -> Self {
        self.inputs.push((key.into(), value.to_string()));
        self
    }

    pub fn push(&mut self, key: impl Into<String>, value: impl ToString) {
        self.results.push((key.into(), value.to_string()));
    }

    pub fn set_status(&mut self, status: Status) {
        self.status = status;
        self.exit_code = status.code();
    }

    /// Records `e` and picks the matching exit status.
    pub fn fail(mut self, e: &Error) -> Self {
        let status = match e {
            Error::NotAcyclic { .. } => Status::NotAcyclic,
            Error::CrossCheckFailed(_) => Status::CrossCheckFailed,
            _ => Status::Error,
        };
        self.push("error", e);
        self.set_status(status);
        self
    }

    pub fn fail_msg(mut self, msg: impl ToString) -> Self {
        self.push("error", msg);
        self.set_status(Status::Error);
        self
    }

    pub fn render_human(&self) -> String {
        if let Some(raw) = &self.raw {
            return raw.clone();
        }
        let mut out = String::new();
        let inputs: Vec<String> = self.inputs.iter().map(|(k, v)| format!("{k}={v}")).collect();
        writeln!(out, "command: {} {}", self.command, inputs.join(" ")).unwrap();
        for (k, v) in &self.results {
            writeln!(out, "{k}: {v}").unwrap();
        }
        let status = serde_json::to_value(self.status).unwrap();
        writeln!(out, "status: {}", status.as_str().unwrap()).unwrap();
        out
    }

    pub fn render_json(&self) -> String {
        let obj = |pairs: &[(String, String)]| {
            serde_json::Value::Array(
                pairs.iter().map(|(k, v)| serde_json::json!({ "key": k, "value": v })).collect(),
            )
        };
        let mut doc = serde_json::json!({
            "command": self.command,
            "inputs": obj(&self.inputs),
            "results": obj(&self.results),
            "status": self.status,
            "exit_code": self.exit_code,
        });
        if let Some(raw) = &self.raw {
            doc["output"] = serde_json::from_str(raw).expect("raw output is JSON");
        }
        serde_json::to_string_pretty(&doc).unwrap() + "\n"
    }
}

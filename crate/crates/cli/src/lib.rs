//! Verification reports, caps and export plumbing behind the `krcyclo`
//! binary.

pub mod config;
pub mod export;
pub mod verify;

use std::collections::BTreeMap;

use serde::Serialize;
use sha2::{Digest, Sha256};
use thiserror::Error;

pub use config::{Caps, Theorem};
pub use verify::{verify, VerifyOptions};

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] krcyclo_core::Error),
    #[error("cap exceeded: n = {value} is outside {min}..={max} for {what}")]
    Cap {
        what: String,
        value: usize,
        min: usize,
        max: usize,
    },
    #[error("config: {0}")]
    Config(String),
    #[error("usage: {0}")]
    Usage(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SubCheck {
    pub name: String,
    pub pass: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct VerificationReport {
    pub check_name: String,
    pub n: usize,
    pub status: Status,
    pub checks: Vec<SubCheck>,
    pub witnesses: Vec<String>,
    pub details: serde_json::Value,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timings_ms: Option<u64>,
    /// SHA-256 of the canonical JSON of each input object.
    pub input_hashes: BTreeMap<String, String>,
}

impl VerificationReport {
    pub fn new(check_name: &str, n: usize) -> Self {
        Self {
            check_name: check_name.to_string(),
            n,
            status: Status::Pass,
            checks: Vec::new(),
            witnesses: Vec::new(),
            details: serde_json::Value::Object(Default::default()),
            timings_ms: None,
            input_hashes: BTreeMap::new(),
        }
    }

    /// Records a sub-check; the status can only go from pass to fail.
    pub fn check(&mut self, name: impl Into<String>, pass: bool) -> &mut Self {
        if !pass {
            self.status = Status::Fail;
        }
        self.checks.push(SubCheck { name: name.into(), pass });
        self
    }

    pub fn witness(&mut self, w: impl Into<String>) -> &mut Self {
        self.witnesses.push(w.into());
        self
    }

    pub fn detail(&mut self, key: &str, value: impl Serialize) -> &mut Self {
        let v = serde_json::to_value(value).expect("serializable detail");
        if let serde_json::Value::Object(map) = &mut self.details {
            map.insert(key.to_string(), v);
        }
        self
    }

    pub fn hash_input(&mut self, key: &str, value: &impl Serialize) -> &mut Self {
        self.input_hashes.insert(key.to_string(), sha256_json(value));
        self
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass && self.checks.iter().all(|c| c.pass)
    }

    /// One line per report: `name n=… pass|fail`, failing checks and the
    /// first witness.
    pub fn table_line(&self) -> String {
        let status = if self.passed() { "pass" } else { "fail" };
        let mut line = format!("{:<11} n={:<2} {status}", self.check_name, self.n);
        let failed: Vec<&str> = self.checks.iter().filter(|c| !c.pass).map(|c| c.name.as_str()).collect();
        if !failed.is_empty() {
            line.push_str(&format!("  failed: {}", failed.join(", ")));
        }
        if let Some(w) = self.witnesses.first() {
            line.push_str(&format!("  witness: {w}"));
        }
        if let Some(t) = self.timings_ms {
            line.push_str(&format!("  ({t} ms)"));
        }
        line
    }
}

pub fn sha256_json(value: &impl Serialize) -> String {
    let bytes = serde_json::to_vec(value).expect("serializable input");
    hex::encode(Sha256::digest(bytes))
}

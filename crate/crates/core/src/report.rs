//! Pass/fail entries shared by the verification suites.

use serde::{Deserialize, Serialize};
use serde_json::Value;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skip,
}

impl Status {
    pub fn from_bool(ok: bool) -> Self {
        if ok {
            Status::Pass
        } else {
            Status::Fail
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckEntry {
    pub statement: String,
    pub status: Status,
    pub detail: Value,
}

impl CheckEntry {
    pub fn new(statement: impl Into<String>, ok: bool, detail: Value) -> Self {
        CheckEntry { statement: statement.into(), status: Status::from_bool(ok), detail }
    }

    pub fn skip(statement: impl Into<String>, detail: Value) -> Self {
        CheckEntry { statement: statement.into(), status: Status::Skip, detail }
    }

    pub fn failed(&self) -> bool {
        self.status == Status::Fail
    }
}

pub fn all_pass(entries: &[CheckEntry]) -> bool {
    entries.iter().all(|e| !e.failed())
}

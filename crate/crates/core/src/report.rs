//! Structured verifier output.

use std::collections::BTreeMap;

use serde::Serialize;
use serde_json::Value;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

#[derive(Debug, Clone, Serialize)]
pub struct VerificationReport {
    pub theorem: String,
    pub bound: u32,
    pub status: Status,
    pub classes: usize,
    pub elements: usize,
    pub counterexamples: Vec<String>,
    pub details: BTreeMap<String, Value>,
}

impl VerificationReport {
    pub fn new(theorem: &str, bound: u32) -> Self {
        Self {
            theorem: theorem.to_string(),
            bound,
            status: Status::Pass,
            classes: 0,
            elements: 0,
            counterexamples: vec![],
            details: BTreeMap::new(),
        }
    }

    pub fn fail(&mut self, msg: impl Into<String>) {
        self.counterexamples.push(msg.into());
    }

    pub fn detail(&mut self, key: &str, value: impl Into<Value>) {
        self.details.insert(key.to_string(), value.into());
    }

    /// Fix the status from the counterexample list.
    pub fn finish(mut self) -> Self {
        self.counterexamples.sort();
        self.counterexamples.dedup();
        self.status = if self.counterexamples.is_empty() { Status::Pass } else { Status::Fail };
        self
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

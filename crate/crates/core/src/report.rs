//! Machine-readable verification reports.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use serde_json::Value;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ClaimStatus {
    Pass,
    Fail,
    /// Passed, but at least one check ran on a finite surrogate for a notion
    /// with no finite-structure content.
    SurrogatePass,
    /// Not applicable to the instance; `reason` says why.
    Skipped,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClaimRecord {
    pub id: String,
    pub anchor: String,
    pub status: ClaimStatus,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<Value>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub surrogates: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub detail: Option<Value>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub reason: Option<String>,
}

impl ClaimRecord {
    pub fn new(id: &str, anchor: &str) -> Self {
        ClaimRecord {
            id: id.into(),
            anchor: anchor.into(),
            status: ClaimStatus::Pass,
            witness: None,
            surrogates: Vec::new(),
            detail: None,
            reason: None,
        }
    }

    /// Pass if `failure` is `None`, otherwise fail with the witness.
    pub fn outcome(mut self, failure: Option<Value>) -> Self {
        if let Some(w) = failure {
            self.status = ClaimStatus::Fail;
            self.witness = Some(w);
        }
        self
    }

    pub fn failed(mut self, witness: Value) -> Self {
        self.status = ClaimStatus::Fail;
        self.witness = Some(witness);
        self
    }

    pub fn skipped(mut self, reason: impl Into<String>) -> Self {
        self.status = ClaimStatus::Skipped;
        self.reason = Some(reason.into());
        self
    }

    /// Marks the surrogate used; a pass becomes a surrogate-pass.
    pub fn surrogate(mut self, note: &str) -> Self {
        self.surrogates.push(note.into());
        if self.status == ClaimStatus::Pass {
            self.status = ClaimStatus::SurrogatePass;
        }
        self
    }

    pub fn with_detail(mut self, detail: Value) -> Self {
        self.detail = Some(detail);
        self
    }

    pub fn is_failure(&self) -> bool {
        self.status == ClaimStatus::Fail
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Instance {
    pub group: String,
    pub objects: usize,
    pub cover: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub structure_file: Option<String>,
}

impl Instance {
    pub fn key(&self) -> String {
        match &self.structure_file {
            Some(path) => format!("file:{path}"),
            None => format!(
                "{} n={}{}",
                self.group,
                self.objects,
                if self.cover { " cover" } else { "" }
            ),
        }
    }
}

/// Wall-clock data, the only field excluded from determinism comparisons.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct Timing {
    pub started_unix_ms: u128,
    pub suite_ms: BTreeMap<String, f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub tool: String,
    pub version: String,
    pub instance: Instance,
    pub suites: Vec<String>,
    pub claims: Vec<ClaimRecord>,
    pub timestamp: Timing,
}

impl Report {
    pub fn failed(&self) -> bool {
        self.claims.iter().any(ClaimRecord::is_failure)
    }

    /// The report with timing removed, for byte comparisons.
    pub fn without_timestamp(&self) -> Report {
        Report {
            timestamp: Timing::default(),
            ..self.clone()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn status_serialises_kebab_case() {
        let r = ClaimRecord::new("x", "y").surrogate("orbit for type");
        let v = serde_json::to_value(&r).unwrap();
        assert_eq!(v["status"], "surrogate-pass");
        let f = ClaimRecord::new("x", "y").surrogate("s").failed(json!([1]));
        assert_eq!(serde_json::to_value(&f).unwrap()["status"], "fail");
    }

    #[test]
    fn outcome_keeps_pass_without_witness() {
        let r = ClaimRecord::new("x", "y").outcome(None);
        assert_eq!(r.status, ClaimStatus::Pass);
        assert!(r.witness.is_none());
    }
}

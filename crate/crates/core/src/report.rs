use serde::{Deserialize, Serialize};
use serde_json::Value;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

/// Outcome of a named check: `{"claim": ..., "status": ..., "witnesses": [...]}`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub claim: String,
    pub status: Status,
    pub witnesses: Vec<Value>,
}

impl Report {
    pub fn new(claim: impl Into<String>, passed: bool, witnesses: Vec<Value>) -> Self {
        let status = if passed { Status::Pass } else { Status::Fail };
        Report { claim: claim.into(), status, witnesses }
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    /// Combines sub-reports: passes iff all of them pass.
    pub fn all(claim: impl Into<String>, parts: Vec<Report>) -> Self {
        let passed = parts.iter().all(Report::passed);
        let witnesses = parts.into_iter().map(|r| serde_json::to_value(r).expect("plain data")).collect();
        Report::new(claim, passed, witnesses)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("plain data")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn combined_status() {
        let r = Report::all(
            "both",
            vec![Report::new("a", true, vec![]), Report::new("b", false, vec![Value::from(3)])],
        );
        assert!(!r.passed());
        let json = r.to_json();
        assert!(json.contains("\"status\": \"fail\""));
        let back: Report = serde_json::from_str(&json).unwrap();
        assert_eq!(back, r);
    }
}

//! Report types. JSON output is deterministic for a fixed configuration;
//! run times live in their own field so reports stay diffable.

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CheckReport {
    pub name: String,
    pub expected: String,
    pub observed: String,
    pub pass: bool,
    pub runtime_ms: u128,
}

impl CheckReport {
    pub fn new(
        name: impl Into<String>,
        expected: impl ToString,
        observed: impl ToString,
        pass: bool,
        started: std::time::Instant,
    ) -> CheckReport {
        CheckReport {
            name: name.into(),
            expected: expected.to_string(),
            observed: observed.to_string(),
            pass,
            runtime_ms: started.elapsed().as_millis(),
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SuiteReport {
    pub suite: String,
    pub filter: String,
    pub pass: bool,
    pub checks: Vec<CheckReport>,
}

impl SuiteReport {
    pub fn new(suite: &str, filter: &str, checks: Vec<CheckReport>) -> SuiteReport {
        SuiteReport {
            suite: suite.to_string(),
            filter: filter.to_string(),
            pass: checks.iter().all(|c| c.pass),
            checks,
        }
    }

    /// The deterministic portion (run times stripped).
    pub fn stable_json(&self) -> serde_json::Value {
        serde_json::json!({
            "suite": self.suite,
            "filter": self.filter,
            "pass": self.pass,
            "checks": self.checks.iter().map(|c| {
                serde_json::json!({
                    "name": c.name,
                    "expected": c.expected,
                    "observed": c.observed,
                    "pass": c.pass,
                })
            }).collect::<Vec<_>>(),
        })
    }
}

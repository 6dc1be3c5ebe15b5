use std::collections::BTreeMap;

use serde::Serialize;

use crate::{exit, SCHEMA_VERSION};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Pass,
    Fail,
    BudgetExceeded,
}

impl Status {
    pub fn as_str(&self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::BudgetExceeded => "budget_exceeded",
        }
    }
}

/// One verified claim. Every number is an exact fraction string.
#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub suite: String,
    pub name: String,
    pub anchor: String,
    pub params: BTreeMap<String, String>,
    pub status: Status,
    pub values: BTreeMap<String, String>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub windows: Vec<String>,
    pub wall_ms: u64,
}

impl Check {
    pub fn new(name: &str, anchor: &str) -> Self {
        Check {
            suite: String::new(),
            name: name.to_string(),
            anchor: anchor.to_string(),
            params: BTreeMap::new(),
            status: Status::Fail,
            values: BTreeMap::new(),
            windows: Vec::new(),
            wall_ms: 0,
        }
    }

    pub fn param(mut self, k: &str, v: impl ToString) -> Self {
        self.params.insert(k.to_string(), v.to_string());
        self
    }

    pub fn value(&mut self, k: &str, v: impl ToString) {
        self.values.insert(k.to_string(), v.to_string());
    }

    pub fn pass_if(&mut self, ok: bool) {
        self.status = if ok { Status::Pass } else { Status::Fail };
    }
}

/// A reported discrepancy or measurement that does not affect the verdict.
#[derive(Clone, Debug, Serialize)]
pub struct Observation {
    pub name: String,
    pub detail: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub schema_version: u32,
    pub suite: String,
    pub checks: Vec<Check>,
    pub observations: Vec<Observation>,
    pub skipped: Vec<String>,
    pub overall: Status,
}

impl Report {
    pub fn new(
        suite: &str,
        checks: Vec<Check>,
        observations: Vec<Observation>,
        skipped: Vec<String>,
    ) -> Self {
        let overall = if checks.iter().any(|c| c.status == Status::BudgetExceeded) {
            Status::BudgetExceeded
        } else if checks.iter().all(|c| c.status == Status::Pass) {
            Status::Pass
        } else {
            Status::Fail
        };
        Report {
            schema_version: SCHEMA_VERSION,
            suite: suite.to_string(),
            checks,
            observations,
            skipped,
            overall,
        }
    }

    pub fn exit_code(&self) -> i32 {
        match self.overall {
            Status::Pass => exit::OK,
            Status::Fail => exit::FAILED,
            Status::BudgetExceeded => exit::BUDGET,
        }
    }

    /// The report with every wall-time field zeroed, for determinism checks.
    pub fn without_timings(&self) -> Report {
        let mut r = self.clone();
        for c in &mut r.checks {
            c.wall_ms = 0;
        }
        r
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn with(status: Status) -> Check {
        let mut c = Check::new("x", "");
        c.status = status;
        c
    }

    #[test]
    fn overall_status() {
        let r = Report::new(
            "t",
            vec![with(Status::Pass), with(Status::Pass)],
            vec![],
            vec![],
        );
        assert_eq!(r.exit_code(), exit::OK);
        let r = Report::new(
            "t",
            vec![with(Status::Pass), with(Status::Fail)],
            vec![],
            vec![],
        );
        assert_eq!(r.exit_code(), exit::FAILED);
        let r = Report::new(
            "t",
            vec![with(Status::Fail), with(Status::BudgetExceeded)],
            vec![],
            vec![],
        );
        assert_eq!(r.exit_code(), exit::BUDGET);
        assert_eq!(
            Report::new("t", vec![], vec![], vec![]).overall,
            Status::Pass
        );
    }
}

use std::fmt;
use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
    Timeout,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Skipped => "skipped",
            Status::Timeout => "timeout",
        }
    }
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub status: Status,
    pub detail: String,
    pub elapsed_ms: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub task: String,
    pub checks: Vec<Check>,
    pub overall: Status,
}

/// Result of one check body: a status and a human-readable detail.
pub type Outcome = (Status, String);

pub fn pass(detail: impl Into<String>) -> Outcome {
    (Status::Pass, detail.into())
}

pub fn fail(detail: impl Into<String>) -> Outcome {
    (Status::Fail, detail.into())
}

/// Informational items never affect the overall status.
pub fn info(detail: impl fmt::Display) -> Outcome {
    (Status::Skipped, format!("info: {detail}"))
}

pub fn verdict(ok: bool, detail: impl Into<String>) -> Outcome {
    (if ok { Status::Pass } else { Status::Fail }, detail.into())
}

impl VerificationReport {
    pub fn new(task: impl Into<String>) -> Self {
        VerificationReport { task: task.into(), checks: Vec::new(), overall: Status::Pass }
    }

    pub fn push(&mut self, name: impl Into<String>, outcome: Outcome, elapsed_ms: u64) {
        self.checks.push(Check { name: name.into(), status: outcome.0, detail: outcome.1, elapsed_ms });
        self.overall = self.summarize();
    }

    /// Runs `body`, timing it. Budget errors become `timeout`, other errors
    /// become `fail` with the error text.
    pub fn run(&mut self, name: impl Into<String>, body: impl FnOnce() -> Result<Outcome>) -> Status {
        let start = Instant::now();
        let outcome = match body() {
            Ok(o) => o,
            Err(e @ Error::BudgetExceeded { .. }) => (Status::Timeout, e.to_string()),
            Err(e) => (Status::Fail, format!("error: {e}")),
        };
        let status = outcome.0;
        self.push(name, outcome, start.elapsed().as_millis() as u64);
        status
    }

    /// `pass` iff every non-skipped check passes; otherwise `fail` if any
    /// check failed, else `timeout`.
    pub fn summarize(&self) -> Status {
        let counted = || self.checks.iter().filter(|c| c.status != Status::Skipped);
        if counted().all(|c| c.status == Status::Pass) {
            Status::Pass
        } else if counted().any(|c| c.status == Status::Fail) {
            Status::Fail
        } else {
            Status::Timeout
        }
    }

    pub fn merge(&mut self, other: VerificationReport) {
        for mut c in other.checks {
            c.name = format!("{}/{}", other.task, c.name);
            self.checks.push(c);
        }
        self.overall = self.summarize();
    }

    pub fn exit_code(&self) -> i32 {
        match self.overall {
            Status::Pass | Status::Skipped => 0,
            Status::Fail => 1,
            Status::Timeout => 3,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn to_text(&self) -> String {
        self.to_string()
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "task: {}", self.task)?;
        let width = self.checks.iter().map(|c| c.name.len()).max().unwrap_or(0);
        for c in &self.checks {
            writeln!(f, "  [{:<7}] {:<width$}  {:>8} ms  {}", c.status.as_str(), c.name, c.elapsed_ms, c.detail)?;
        }
        write!(f, "overall: {}", self.overall)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn overall_ignores_skipped() {
        let mut r = VerificationReport::new("t");
        r.push("a", pass("ok"), 1);
        r.push("b", info("note"), 0);
        assert_eq!(r.overall, Status::Pass);
        r.run("c", || Err(Error::BudgetExceeded { elapsed_ms: 5, basis_len: 1, pairs_left: 2 }));
        assert_eq!(r.overall, Status::Timeout);
        assert_eq!(r.exit_code(), 3);
        r.push("d", fail("no"), 0);
        assert_eq!(r.overall, Status::Fail);
        let back: VerificationReport = serde_json::from_str(&r.to_json()).unwrap();
        assert_eq!(back, r);
        assert!(r.to_json().contains("\"status\": \"timeout\""));
    }
}

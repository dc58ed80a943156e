//! Verification outcomes.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use serde_json::Value;

/// At most this many counterexamples are kept per report.
pub const MAX_COUNTEREXAMPLES: usize = 8;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

/// The outcome of one verifier run.
///
/// `checks` counts individual assertions; every failed assertion pushes a
/// counterexample, so `status == Fail` iff `counterexamples` is non-empty.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub suite: String,
    pub params: BTreeMap<String, i64>,
    pub status: Status,
    pub checks: u64,
    pub failures: u64,
    pub counterexamples: Vec<Value>,
    pub stats: BTreeMap<String, u64>,
}

impl Report {
    pub fn new(suite: impl Into<String>) -> Self {
        Report {
            suite: suite.into(),
            params: BTreeMap::new(),
            status: Status::Pass,
            checks: 0,
            failures: 0,
            counterexamples: Vec::new(),
            stats: BTreeMap::new(),
        }
    }

    pub fn param(mut self, key: &str, value: i64) -> Self {
        self.params.insert(key.to_string(), value);
        self
    }

    /// Records one assertion; `counterexample` is only evaluated on failure.
    pub fn check(&mut self, ok: bool, counterexample: impl FnOnce() -> Value) -> bool {
        self.checks += 1;
        if !ok {
            self.fail(counterexample());
        }
        ok
    }

    pub fn fail(&mut self, counterexample: Value) {
        self.failures += 1;
        self.status = Status::Fail;
        if self.counterexamples.len() < MAX_COUNTEREXAMPLES {
            self.counterexamples.push(counterexample);
        }
    }

    pub fn stat(&mut self, key: &str, value: u64) {
        let slot = self.stats.entry(key.to_string()).or_insert(0);
        *slot = (*slot).max(value);
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    /// Folds a sub-report into this one (checks, failures and stats).
    pub fn absorb(&mut self, other: Report) {
        self.checks += other.checks;
        for (k, v) in other.stats {
            self.stat(&k, v);
        }
        if other.failures > 0 {
            self.failures += other.failures - other.counterexamples.len() as u64;
            for c in other.counterexamples {
                self.fail(c);
            }
        }
    }
}

//! Verification reports.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

/// Keeps at most this many counterexample descriptions per report.
const MAX_RECORDED: usize = 50;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub lemma: String,
    pub instances: usize,
    pub pass: bool,
    pub counterexamples: Vec<String>,
    pub failures: usize,
    pub seed: u64,
    pub bounds: BTreeMap<String, u64>,
    pub version: String,
}

impl Report {
    pub fn new(lemma: impl Into<String>, seed: u64) -> Self {
        Report {
            lemma: lemma.into(),
            instances: 0,
            pass: true,
            counterexamples: Vec::new(),
            failures: 0,
            seed,
            bounds: BTreeMap::new(),
            version: env!("CARGO_PKG_VERSION").to_string(),
        }
    }

    pub fn bound(mut self, name: &str, value: u64) -> Self {
        self.bounds.insert(name.to_string(), value);
        self
    }

    /// Records one check; `describe` runs only on failure.
    pub fn check(&mut self, ok: bool, describe: impl FnOnce() -> String) -> bool {
        self.instances += 1;
        if !ok {
            self.fail(describe());
        }
        ok
    }

    pub fn fail(&mut self, what: String) {
        self.pass = false;
        self.failures += 1;
        if self.counterexamples.len() < MAX_RECORDED {
            self.counterexamples.push(what);
        }
    }

    /// Folds the checks of `other` into `self`.
    pub fn absorb(&mut self, other: Report) {
        self.instances += other.instances;
        self.failures += other.failures;
        self.pass &= other.pass;
        for c in other.counterexamples {
            if self.counterexamples.len() < MAX_RECORDED {
                self.counterexamples.push(format!("[{}] {c}", other.lemma));
            }
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}: {} ({} checks, {} failures)",
            self.lemma,
            if self.pass { "pass" } else { "FAIL" },
            self.instances,
            self.failures
        )?;
        for c in &self.counterexamples {
            write!(f, "\n  {c}")?;
        }
        Ok(())
    }
}

//! Exhaustive sweeps checking the counting bounds and structure theorems on
//! bounded grids, with mergeable, deterministic reports.

use std::collections::BTreeMap;
use std::fmt::{self, Write as _};
use std::time::Duration;

use serde::Serialize;
use serde_json::{json, Value};

mod suites;
mod sweep;
mod windows;

pub use suites::*;
pub use sweep::Sweep;
pub use windows::{enumerate_signed_windows, SignedWindows};

/// A single violated instance, replayable from `input` and `params`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Failure {
    pub input: String,
    pub params: String,
    pub expected: String,
    pub actual: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub details: Option<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum SuiteStatus {
    Pass,
    Fail,
    /// Nothing satisfied the grid's hypotheses.
    Vacuous,
}

impl fmt::Display for SuiteStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SuiteStatus::Pass => "pass",
            SuiteStatus::Fail => "fail",
            SuiteStatus::Vacuous => "vacuous",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerificationReport {
    pub suite: String,
    pub grid: BTreeMap<String, String>,
    /// Instances enumerated.
    pub instances_checked: u64,
    /// Instances satisfying the hypothesis under test.
    pub instances_qualifying: u64,
    pub failures: Vec<Failure>,
    /// Data gathered without asserting anything (equality cases, sweeps).
    pub observations: Vec<String>,
    pub elapsed: Option<Duration>,
}

impl VerificationReport {
    pub fn new(suite: &str) -> Self {
        VerificationReport {
            suite: suite.to_string(),
            grid: BTreeMap::new(),
            instances_checked: 0,
            instances_qualifying: 0,
            failures: Vec::new(),
            observations: Vec::new(),
            elapsed: None,
        }
    }

    pub fn with_grid(mut self, key: &str, value: impl ToString) -> Self {
        self.grid.insert(key.to_string(), value.to_string());
        self
    }

    pub fn status(&self) -> SuiteStatus {
        if !self.failures.is_empty() {
            SuiteStatus::Fail
        } else if self.instances_qualifying == 0 {
            SuiteStatus::Vacuous
        } else {
            SuiteStatus::Pass
        }
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    /// Combine reports of two chunks of the same grid: counts add, failures
    /// and observations concatenate. Associative, with an empty report of
    /// the same suite as identity.
    pub fn merge(mut self, other: VerificationReport) -> Self {
        self.instances_checked += other.instances_checked;
        self.instances_qualifying += other.instances_qualifying;
        self.failures.extend(other.failures);
        self.observations.extend(other.observations);
        self.elapsed = match (self.elapsed, other.elapsed) {
            (Some(a), Some(b)) => Some(a + b),
            (a, b) => a.or(b),
        };
        for (k, v) in other.grid {
            self.grid.entry(k).or_insert(v);
        }
        self
    }

    /// JSON document with sorted keys and counts as decimal strings. The
    /// elapsed time is included only when `timing` is set.
    pub fn to_json(&self, timing: bool) -> Value {
        let mut doc = json!({
            "suite": self.suite,
            "status": self.status(),
            "grid": self.grid,
            "instances_checked": self.instances_checked.to_string(),
            "instances_qualifying": self.instances_qualifying.to_string(),
            "failure_count": self.failures.len().to_string(),
            "failures": self.failures,
            "observations": self.observations,
        });
        if timing {
            if let Some(e) = self.elapsed {
                doc["elapsed_ms"] = Value::String(e.as_millis().to_string());
            }
        }
        doc
    }

    pub fn to_table(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "suite       {}", self.suite);
        let _ = writeln!(out, "status      {}", self.status());
        for (k, v) in &self.grid {
            let _ = writeln!(out, "  {k:<20} {v}");
        }
        let _ = writeln!(out, "checked     {}", self.instances_checked);
        let _ = writeln!(out, "qualifying  {}", self.instances_qualifying);
        let _ = writeln!(out, "failures    {}", self.failures.len());
        if let Some(e) = self.elapsed {
            let _ = writeln!(out, "elapsed     {:.3}s", e.as_secs_f64());
        }
        for f in &self.failures {
            let _ = writeln!(
                out,
                "  FAIL {} [{}] expected {} got {}{}",
                f.input,
                f.params,
                f.expected,
                f.actual,
                f.details.as_deref().map(|d| format!(" ({d})")).unwrap_or_default()
            );
        }
        for o in &self.observations {
            let _ = writeln!(out, "  note {o}");
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn failure(i: u32) -> Failure {
        Failure {
            input: i.to_string(),
            params: String::new(),
            expected: "x".into(),
            actual: "y".into(),
            details: None,
        }
    }

    fn report(checked: u64, fails: Vec<u32>) -> VerificationReport {
        let mut r = VerificationReport::new("s").with_grid("n", 3);
        r.instances_checked = checked;
        r.instances_qualifying = checked;
        r.failures = fails.into_iter().map(failure).collect();
        r
    }

    #[test]
    fn status_rules() {
        assert_eq!(report(0, vec![]).status(), SuiteStatus::Vacuous);
        assert_eq!(report(3, vec![]).status(), SuiteStatus::Pass);
        assert_eq!(report(3, vec![1]).status(), SuiteStatus::Fail);
    }

    #[test]
    fn json_has_sorted_keys_and_string_counts() {
        let text = report(12, vec![]).to_json(false).to_string();
        assert!(text.contains("\"instances_checked\":\"12\""));
        assert!(!text.contains("elapsed"));
        let keys: Vec<&str> = ["failure_count", "failures", "grid", "instances_checked", "instances_qualifying", "observations", "status", "suite"].to_vec();
        let positions: Vec<usize> = keys.iter().map(|k| text.find(&format!("\"{k}\"")).unwrap()).collect();
        assert!(positions.windows(2).all(|w| w[0] < w[1]));
    }

    proptest! {
        #[test]
        fn merge_is_associative(a in 0u64..50, b in 0u64..50, c in 0u64..50,
                                fa in prop::collection::vec(0u32..9, 0..3),
                                fb in prop::collection::vec(0u32..9, 0..3),
                                fc in prop::collection::vec(0u32..9, 0..3)) {
            let (x, y, z) = (report(a, fa), report(b, fb), report(c, fc));
            let left = x.clone().merge(y.clone()).merge(z.clone());
            let right = x.merge(y.merge(z));
            prop_assert_eq!(left, right);
        }
    }
}

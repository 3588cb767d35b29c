//! Verification reports shared by every checking suite in the workspace.
//!
//! A report names its suite and carries one record per check; the verdict is
//! pass exactly when no record saw a failure. Failure records keep a capped
//! sample of counterexamples plus the full count, so a badly broken check
//! cannot flood memory.

use std::fmt;

use serde::Serialize;

/// How many counterexamples a single check record retains in full.
pub const FAILURE_SAMPLE_CAP: usize = 8;

/// One concrete counterexample: the offending input, what the law demanded,
/// and what was computed instead.
#[derive(Debug, Clone, Serialize)]
pub struct CheckFailure {
    /// The sampled input (a point pair, a relation triple, an element).
    #[serde(skip_serializing_if = "Option::is_none")]
    pub pair: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
    pub expected: String,
    pub got: String,
}

impl CheckFailure {
    pub fn new(input: impl Into<String>, expected: impl Into<String>, got: impl Into<String>) -> Self {
        CheckFailure {
            pair: Some(input.into()),
            witness: None,
            expected: expected.into(),
            got: got.into(),
        }
    }

    pub fn with_witness(mut self, witness: impl Into<String>) -> Self {
        self.witness = Some(witness.into());
        self
    }
}

/// Tally for a single named check: the law it verifies, how many trials ran,
/// and any counterexamples found.
#[derive(Debug, Clone, Serialize)]
pub struct CheckRecord {
    pub name: String,
    /// Statement of the law this check verifies, in mathematical notation.
    pub law: String,
    /// Composition-table cell (i, j) when the check is per-cell.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub cell: Option<(i32, i32)>,
    pub trials: u64,
    pub failure_count: u64,
    pub failures: Vec<CheckFailure>,
}

impl CheckRecord {
    pub fn new(name: impl Into<String>, law: impl Into<String>) -> Self {
        CheckRecord {
            name: name.into(),
            law: law.into(),
            cell: None,
            trials: 0,
            failure_count: 0,
            failures: Vec::new(),
        }
    }

    pub fn for_cell(i: i32, j: i32, law: impl Into<String>) -> Self {
        let mut rec = CheckRecord::new(format!("cell({i},{j})"), law);
        rec.cell = Some((i, j));
        rec
    }

    pub fn tally(&mut self) {
        self.trials += 1;
    }

    pub fn fail(&mut self, failure: CheckFailure) {
        self.failure_count += 1;
        if self.failures.len() < FAILURE_SAMPLE_CAP {
            self.failures.push(failure);
        }
    }

    /// Tally one trial and record the failure if `ok` is false.
    pub fn check(&mut self, ok: bool, failure: impl FnOnce() -> CheckFailure) {
        self.tally();
        if !ok {
            self.fail(failure());
        }
    }

    pub fn passed(&self) -> bool {
        self.failure_count == 0
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
}

/// A completed suite run. Construction derives the verdict from the records,
/// so the two can never disagree.
#[derive(Debug, Clone, Serialize)]
pub struct VerificationReport {
    pub suite: String,
    pub checks: Vec<CheckRecord>,
    pub verdict: Verdict,
}

impl VerificationReport {
    pub fn new(suite: impl Into<String>, checks: Vec<CheckRecord>) -> Self {
        let verdict = if checks.iter().all(CheckRecord::passed) {
            Verdict::Pass
        } else {
            Verdict::Fail
        };
        VerificationReport {
            suite: suite.into(),
            checks,
            verdict,
        }
    }

    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Pass
    }

    /// Records that found at least one counterexample.
    pub fn failed_checks(&self) -> impl Iterator<Item = &CheckRecord> {
        self.checks.iter().filter(|c| !c.passed())
    }

    pub fn total_trials(&self) -> u64 {
        self.checks.iter().map(|c| c.trials).sum()
    }

    pub fn total_failures(&self) -> u64 {
        self.checks.iter().map(|c| c.failure_count).sum()
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "suite {}: {} ({} checks, {} trials, {} failures)",
            self.suite,
            match self.verdict {
                Verdict::Pass => "pass",
                Verdict::Fail => "FAIL",
            },
            self.checks.len(),
            self.total_trials(),
            self.total_failures()
        )?;
        for check in &self.checks {
            writeln!(
                f,
                "  [{}] {}  --  {}  ({} trials, {} failures)",
                if check.passed() { "ok" } else { "FAIL" },
                check.name,
                check.law,
                check.trials,
                check.failure_count
            )?;
            for failure in &check.failures {
                if let Some(input) = &failure.pair {
                    writeln!(f, "      on {input}")?;
                }
                if let Some(w) = &failure.witness {
                    writeln!(f, "      witness {w}")?;
                }
                writeln!(f, "      expected {} but got {}", failure.expected, failure.got)?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn verdict_tracks_failures() {
        let mut ok = CheckRecord::new("a", "x = x");
        ok.tally();
        let report = VerificationReport::new("demo", vec![ok.clone()]);
        assert!(report.passed());

        let mut bad = ok;
        bad.fail(CheckFailure::new("x", "1", "2"));
        let report = VerificationReport::new("demo", vec![bad]);
        assert!(!report.passed());
        assert_eq!(report.total_failures(), 1);
    }

    #[test]
    fn failure_sample_is_capped() {
        let mut rec = CheckRecord::new("a", "law");
        for i in 0..100 {
            rec.fail(CheckFailure::new(format!("{i}"), "1", "2"));
        }
        assert_eq!(rec.failure_count, 100);
        assert_eq!(rec.failures.len(), FAILURE_SAMPLE_CAP);
    }

    #[test]
    fn report_serializes_cell_as_array() {
        let mut rec = CheckRecord::for_cell(2, -1, "law");
        rec.tally();
        let report = VerificationReport::new("s", vec![rec]);
        let json = serde_json::to_value(&report).unwrap();
        assert_eq!(json["checks"][0]["cell"], serde_json::json!([2, -1]));
        assert_eq!(json["verdict"], "pass");
    }
}

//! Structured outcome of a verification suite.

use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

#[derive(Clone, Debug, Serialize)]
pub struct CheckResult {
    pub name: String,
    pub status: Status,
    pub detail: String,
}

/// Per-suite report; identical inputs produce byte-identical JSON.
#[derive(Clone, Debug, Serialize)]
pub struct SuiteReport {
    pub schema: u32,
    pub suite: String,
    pub n: usize,
    pub degree_bound: usize,
    pub seed: u64,
    pub checks: Vec<CheckResult>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.status != Status::Fail)
    }

    pub fn counts(&self) -> (usize, usize, usize) {
        let mut pass = 0;
        let mut fail = 0;
        let mut skipped = 0;
        for c in &self.checks {
            match c.status {
                Status::Pass => pass += 1,
                Status::Fail => fail += 1,
                Status::Skipped => skipped += 1,
            }
        }
        (pass, fail, skipped)
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!(
            "suite {} (N = {}, degree = {}, seed = {})\n",
            self.suite, self.n, self.degree_bound, self.seed
        ));
        for c in &self.checks {
            let tag = match c.status {
                Status::Pass => "pass",
                Status::Fail => "FAIL",
                Status::Skipped => "skip",
            };
            if c.detail.is_empty() {
                out.push_str(&format!("  [{tag}] {}\n", c.name));
            } else {
                out.push_str(&format!("  [{tag}] {} — {}\n", c.name, c.detail));
            }
        }
        let (p, f, s) = self.counts();
        out.push_str(&format!("  {p} passed, {f} failed, {s} skipped\n"));
        out
    }
}

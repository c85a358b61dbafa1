//! Verification reports: a list of checks with verdicts, serialized to
//! canonical JSON (sorted keys, no timestamps) so identical runs produce
//! byte-identical output.

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    /// The claim was checked and held on every instance it applied to.
    Holds,
    /// A concrete counterexample was found.
    Fails,
    /// The hypotheses were never satisfied, so nothing was checked.
    Vacuous,
    /// The computation could not certify an answer within its windows.
    Inconclusive,
}

impl Verdict {
    pub fn as_str(&self) -> &'static str {
        match self {
            Verdict::Holds => "holds",
            Verdict::Fails => "fails",
            Verdict::Vacuous => "vacuous",
            Verdict::Inconclusive => "inconclusive",
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CheckRecord {
    /// Self-describing statement of what was verified.
    pub claim: String,
    pub verdict: Verdict,
    /// The computed quantities the verdict rests on (human-readable).
    pub values: Vec<String>,
    /// Windows / bounds the check ran under, e.g. "n <= 8, i <= 5".
    pub bounds: String,
    /// For a failing check: input text that reproduces the counterexample.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<String>,
}

impl CheckRecord {
    pub fn new(claim: impl Into<String>, verdict: Verdict, bounds: impl Into<String>) -> Self {
        CheckRecord {
            claim: claim.into(),
            verdict,
            values: Vec::new(),
            bounds: bounds.into(),
            counterexample: None,
        }
    }

    pub fn with_values(mut self, values: Vec<String>) -> Self {
        self.values = values;
        self
    }

    pub fn with_counterexample(mut self, text: impl Into<String>) -> Self {
        self.counterexample = Some(text.into());
        self
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Summary {
    pub total: usize,
    pub holds: usize,
    pub fails: usize,
    pub vacuous: usize,
    pub inconclusive: usize,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct VerificationReport {
    pub scenario: String,
    pub field: u64,
    pub seed: u64,
    pub checks: Vec<CheckRecord>,
    pub summary: Summary,
}

impl VerificationReport {
    pub fn new(scenario: impl Into<String>, field: u64, seed: u64) -> Self {
        VerificationReport {
            scenario: scenario.into(),
            field,
            seed,
            checks: Vec::new(),
            summary: Summary {
                total: 0,
                holds: 0,
                fails: 0,
                vacuous: 0,
                inconclusive: 0,
            },
        }
    }

    pub fn push(&mut self, check: CheckRecord) {
        match check.verdict {
            Verdict::Holds => self.summary.holds += 1,
            Verdict::Fails => self.summary.fails += 1,
            Verdict::Vacuous => self.summary.vacuous += 1,
            Verdict::Inconclusive => self.summary.inconclusive += 1,
        }
        self.summary.total += 1;
        self.checks.push(check);
    }

    /// 0 if all checks hold (or are vacuous), 1 if any fails, 2 if none
    /// fail but some are inconclusive.
    pub fn exit_code(&self) -> i32 {
        if self.summary.fails > 0 {
            1
        } else if self.summary.inconclusive > 0 {
            2
        } else {
            0
        }
    }

    /// Canonical JSON: object keys sorted, stable across runs.
    pub fn to_canonical_json(&self) -> String {
        let value = serde_json::to_value(self).expect("report serializes");
        let sorted = sort_value(value);
        serde_json::to_string_pretty(&sorted).expect("report stringifies")
    }

    /// One line per check plus a summary line, for terminal output.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("scenario: {}\n", self.scenario));
        for c in &self.checks {
            out.push_str(&format!("[{}] {}", c.verdict.as_str(), c.claim));
            if !c.bounds.is_empty() {
                out.push_str(&format!("  ({})", c.bounds));
            }
            out.push('\n');
            for v in &c.values {
                out.push_str(&format!("    {}\n", v));
            }
            if let Some(ce) = &c.counterexample {
                out.push_str("    counterexample:\n");
                for line in ce.lines() {
                    out.push_str(&format!("      {}\n", line));
                }
            }
        }
        out.push_str(&format!(
            "summary: {} checks, {} hold, {} fail, {} vacuous, {} inconclusive\n",
            self.summary.total,
            self.summary.holds,
            self.summary.fails,
            self.summary.vacuous,
            self.summary.inconclusive
        ));
        out
    }
}

fn sort_value(v: serde_json::Value) -> serde_json::Value {
    match v {
        serde_json::Value::Object(map) => {
            let sorted: std::collections::BTreeMap<String, serde_json::Value> = map
                .into_iter()
                .map(|(k, val)| (k, sort_value(val)))
                .collect();
            serde_json::to_value(sorted).unwrap()
        }
        serde_json::Value::Array(items) => {
            serde_json::Value::Array(items.into_iter().map(sort_value).collect())
        }
        other => other,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exit_codes() {
        let mut r = VerificationReport::new("t", 32003, 0);
        assert_eq!(r.exit_code(), 0);
        r.push(CheckRecord::new("a", Verdict::Holds, ""));
        r.push(CheckRecord::new("b", Verdict::Vacuous, ""));
        assert_eq!(r.exit_code(), 0);
        r.push(CheckRecord::new("c", Verdict::Inconclusive, ""));
        assert_eq!(r.exit_code(), 2);
        r.push(CheckRecord::new("d", Verdict::Fails, ""));
        assert_eq!(r.exit_code(), 1);
        assert_eq!(r.summary.total, 4);
    }

    #[test]
    fn canonical_json_is_sorted_and_stable() {
        let mut r = VerificationReport::new("t", 32003, 7);
        r.push(
            CheckRecord::new("zeta", Verdict::Fails, "n <= 4")
                .with_values(vec!["x = 3".into()])
                .with_counterexample("field 32003\nring R = k[x]\n"),
        );
        let a = r.to_canonical_json();
        let b = r.to_canonical_json();
        assert_eq!(a, b);
        let idx_checks = a.find("\"checks\"").unwrap();
        let idx_scenario = a.find("\"scenario\"").unwrap();
        assert!(idx_checks < idx_scenario, "keys must be sorted");
        let parsed: VerificationReport = serde_json::from_str(&a).unwrap();
        assert_eq!(parsed.checks[0].verdict, Verdict::Fails);
        assert_eq!(
            parsed.checks[0].counterexample.as_deref(),
            Some("field 32003\nring R = k[x]\n")
        );
    }

    #[test]
    fn text_rendering_mentions_every_check() {
        let mut r = VerificationReport::new("demo", 101, 1);
        r.push(CheckRecord::new("first claim", Verdict::Holds, "n <= 6"));
        let text = r.to_text();
        assert!(text.contains("[holds] first claim"));
        assert!(text.contains("summary: 1 checks"));
    }
}

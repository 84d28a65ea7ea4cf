//! Certification report plumbing: the stable JSON schema shared by the
//! verification drivers and the command-line front end.

use serde::Serialize;

use crate::algebra::RelationReport;

/// Single check outcome in a certification run.
#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub id: String,
    pub paper_ref: String,
    pub passed: bool,
    pub residual: f64,
    pub detail: String,
}

impl Check {
    /// Float check: passes iff the residual stays at or under the tolerance.
    pub fn from_residual(
        id: impl Into<String>,
        paper_ref: impl Into<String>,
        residual: f64,
        tol: f64,
        detail: impl Into<String>,
    ) -> Self {
        Check {
            id: id.into(),
            paper_ref: paper_ref.into(),
            passed: residual.is_finite() && residual <= tol,
            residual,
            detail: detail.into(),
        }
    }

    /// Exact check that either held or produced the given diagnostic.
    pub fn from_exact(
        id: impl Into<String>,
        paper_ref: impl Into<String>,
        outcome: std::result::Result<(), String>,
    ) -> Self {
        let (passed, detail) = match outcome {
            Ok(()) => (true, "holds exactly in rational arithmetic".to_string()),
            Err(msg) => (false, msg),
        };
        Check {
            id: id.into(),
            paper_ref: paper_ref.into(),
            passed,
            residual: if passed { 0.0 } else { f64::INFINITY },
            detail,
        }
    }
}

impl From<RelationReport> for Check {
    fn from(r: RelationReport) -> Self {
        Check {
            id: r.id,
            paper_ref: r.reference,
            passed: r.passed,
            residual: r.residual,
            detail: r.detail,
        }
    }
}

/// Top-level certification report. Checks are ordered by id at
/// serialization time so equal configurations produce byte-identical
/// output regardless of completion order.
#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub version: String,
    pub config: serde_json::Value,
    pub checks: Vec<Check>,
}

impl Report {
    pub fn new(config: serde_json::Value) -> Self {
        Report {
            version: env!("CARGO_PKG_VERSION").to_string(),
            config,
            checks: Vec::new(),
        }
    }

    pub fn push(&mut self, check: impl Into<Check>) {
        self.checks.push(check.into());
    }

    pub fn extend<I>(&mut self, checks: I)
    where
        I: IntoIterator,
        I::Item: Into<Check>,
    {
        self.checks.extend(checks.into_iter().map(Into::into));
    }

    /// Sort by id; the sort is stable, so repeated ids from parameter
    /// sweeps keep their insertion order.
    pub fn finish(mut self) -> Self {
        self.checks.sort_by(|x, y| x.id.cmp(&y.id));
        self
    }

    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn worst_residual(&self) -> f64 {
        self.checks.iter().map(|c| c.residual).fold(0.0, f64::max)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serialization cannot fail")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn checks_serialize_sorted_by_id() {
        let mut r = Report::new(serde_json::json!({"seed": 7}));
        r.push(Check::from_residual("b-check", "ref", 1e-12, 1e-10, "d"));
        r.push(Check::from_residual("a-check", "ref", 0.0, 1e-10, "d"));
        let r = r.finish();
        assert_eq!(r.checks[0].id, "a-check");
        assert!(r.all_passed());
        let v: serde_json::Value = serde_json::from_str(&r.to_json()).unwrap();
        assert!(v["version"].is_string());
        assert_eq!(v["config"]["seed"], 7);
        assert_eq!(v["checks"][0]["paper_ref"], "ref");
    }

    #[test]
    fn failed_exact_check_reports_diagnostic() {
        let c = Check::from_exact("x", "ref", Err("mismatch at (0, 1)".into()));
        assert!(!c.passed);
        assert!(c.residual.is_infinite());
        assert!(c.detail.contains("(0, 1)"));
    }
}

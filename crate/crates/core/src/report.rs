use serde::Serialize;

use crate::specht::SubspaceRecord;

/// One named pass/fail verification.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

impl Check {
    pub fn new(name: impl Into<String>, pass: bool) -> Self {
        Check {
            name: name.into(),
            pass,
            detail: None,
        }
    }

    pub fn with_detail(mut self, detail: impl Into<String>) -> Self {
        self.detail = Some(detail.into());
        self
    }
}

/// What was computed for one (n, parameter) scenario.
#[derive(Debug, Clone, Serialize)]
pub struct CaseReport {
    pub n: usize,
    pub field: String,
    pub case: String,
    /// Exact value of l as a canonical string.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub l: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub k_n: Option<usize>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub subspaces: Vec<SubspaceRecord>,
}

#[derive(Debug, Clone, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub field: String,
    pub seed: u64,
    pub cases: Vec<CaseReport>,
    pub checks: Vec<Check>,
    pub pass: bool,
}

impl SuiteReport {
    pub fn new(
        suite: String,
        field: String,
        seed: u64,
        cases: Vec<CaseReport>,
        checks: Vec<Check>,
    ) -> Self {
        let pass = checks.iter().all(|c| c.pass);
        SuiteReport {
            suite,
            field,
            seed,
            cases,
            checks,
            pass,
        }
    }

    /// 0 when every check passed, 1 otherwise.
    pub fn exit_code(&self) -> i32 {
        if self.pass {
            0
        } else {
            1
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report types serialize infallibly")
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("suite {} over {}\n", self.suite, self.field);
        for case in &self.cases {
            out.push_str(&format!("n={} {}", case.n, case.case));
            if let Some(k) = case.k_n {
                out.push_str(&format!(" k(n)={k}"));
            }
            out.push('\n');
            for s in &case.subspaces {
                out.push_str(&format!(
                    "  {} dim {} -> {} (expected {})\n",
                    s.label, s.dim, s.identified, s.expected
                ));
            }
        }
        for c in &self.checks {
            out.push_str(if c.pass { "PASS " } else { "FAIL " });
            out.push_str(&c.name);
            if let Some(d) = &c.detail {
                out.push_str(&format!(" [{d}]"));
            }
            out.push('\n');
        }
        let failed = self.checks.iter().filter(|c| !c.pass).count();
        out.push_str(&format!("{} checks, {failed} failed\n", self.checks.len()));
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exit_code_follows_checks() {
        let ok = SuiteReport::new(
            "s".into(),
            "ratfunc".into(),
            0,
            vec![],
            vec![Check::new("a", true)],
        );
        assert_eq!(ok.exit_code(), 0);
        let bad = SuiteReport::new(
            "s".into(),
            "ratfunc".into(),
            0,
            vec![],
            vec![Check::new("a", true), Check::new("b", false)],
        );
        assert_eq!(bad.exit_code(), 1);
        assert!(bad.to_text().contains("FAIL b"));
        assert!(bad.to_json().contains("\"pass\": false"));
    }
}

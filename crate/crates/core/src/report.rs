//! Machine-readable audit reports shared by the CLI and the test suites.

use serde::Serialize;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

/// One check. A failing check always carries a witness string.
#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub id: String,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct AuditReport {
    pub schema: u32,
    pub suite: String,
    pub checks: Vec<Check>,
}

impl AuditReport {
    pub fn new(suite: impl Into<String>) -> Self {
        AuditReport {
            schema: SCHEMA_VERSION,
            suite: suite.into(),
            checks: Vec::new(),
        }
    }

    pub fn pass(&mut self, id: impl Into<String>) {
        self.checks.push(Check {
            id: id.into(),
            status: Status::Pass,
            witness: None,
        });
    }

    pub fn fail(&mut self, id: impl Into<String>, witness: impl Into<String>) {
        self.checks.push(Check {
            id: id.into(),
            status: Status::Fail,
            witness: Some(witness.into()),
        });
    }

    pub fn skip(&mut self, id: impl Into<String>) {
        self.checks.push(Check {
            id: id.into(),
            status: Status::Skipped,
            witness: None,
        });
    }

    /// Record a boolean outcome under one id.
    pub fn check(&mut self, id: impl Into<String>, ok: bool, witness: impl Into<String>) {
        if ok {
            self.pass(id);
        } else {
            self.fail(id, witness);
        }
    }

    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.status != Status::Fail)
    }

    /// Append another suite's checks under `prefix/`.
    pub fn absorb(&mut self, other: AuditReport) {
        for mut c in other.checks {
            c.id = format!("{}/{}", other.suite, c.id);
            self.checks.push(c);
        }
    }

    /// Deterministic JSON: field and check order are fixed by construction.
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("suite {}\n", self.suite);
        for c in &self.checks {
            let tag = match c.status {
                Status::Pass => "pass",
                Status::Fail => "FAIL",
                Status::Skipped => "skip",
            };
            out.push_str(&format!("  [{tag}] {}", c.id));
            if let Some(w) = &c.witness {
                out.push_str(&format!("  ({w})"));
            }
            out.push('\n');
        }
        out.push_str(if self.all_pass() {
            "result: pass\n"
        } else {
            "result: FAIL\n"
        });
        out
    }
}

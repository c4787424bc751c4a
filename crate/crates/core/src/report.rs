//! Check records shared by every verification suite.

use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

/// One verified identity: what was checked, where it comes from, and the evidence.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub id: String,
    pub anchor: String,
    pub status: Status,
    /// `0` or a numeric summary on success; the offending residual on failure.
    pub residual: String,
}

impl Check {
    pub fn new(id: impl Into<String>, anchor: impl Into<String>, pass: bool, residual: impl Into<String>) -> Self {
        Check {
            id: id.into(),
            anchor: anchor.into(),
            status: if pass { Status::Pass } else { Status::Fail },
            residual: residual.into(),
        }
    }

    /// A symbolic identity: passes iff `residual` is empty.
    pub fn exact(id: impl Into<String>, anchor: impl Into<String>, residual: Option<String>) -> Self {
        match residual {
            None => Check::new(id, anchor, true, "0"),
            Some(r) => Check::new(id, anchor, false, r),
        }
    }

    /// A numeric bound `value < tol`.
    pub fn bound(id: impl Into<String>, anchor: impl Into<String>, value: f64, tol: f64) -> Self {
        Check::new(id, anchor, value < tol, format!("{:.3e} (tol {:.0e})", value, tol))
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }
}

pub fn all_pass(checks: &[Check]) -> bool {
    checks.iter().all(Check::passed)
}

/// Failing checks, one per line, for assertion messages.
pub fn failures(checks: &[Check]) -> String {
    checks
        .iter()
        .filter(|c| !c.passed())
        .map(|c| format!("{}: {}", c.id, c.residual))
        .collect::<Vec<_>>()
        .join("\n")
}

//! Report types shared by the structural validators and the verification
//! suites.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::linalg::HomologyGroup;

/// One failed axiom, with enough detail to locate the offending basis
/// elements.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    pub axiom: String,
    pub detail: String,
}

impl Violation {
    pub fn new(axiom: impl Into<String>, detail: impl Into<String>) -> Self {
        Violation {
            axiom: axiom.into(),
            detail: detail.into(),
        }
    }
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.axiom, self.detail)
    }
}

/// Degreewise equality of two homology sequences as a named check.
pub fn compare_homology(name: impl Into<String>, lhs: &[HomologyGroup], rhs: &[HomologyGroup]) -> Check {
    let render = |h: &[HomologyGroup]| h.iter().map(ToString::to_string).collect::<Vec<_>>().join(", ");
    if lhs == rhs {
        Check::new(name, true, render(lhs))
    } else {
        Check::new(name, false, format!("{} vs {}", render(lhs), render(rhs)))
    }
}

/// Caps the number of identical-axiom reports so a badly broken input does
/// not produce millions of lines.
pub(crate) struct Collector {
    pub violations: Vec<Violation>,
    per_axiom: std::collections::BTreeMap<String, usize>,
    limit: usize,
}

impl Collector {
    pub fn new() -> Self {
        Collector {
            violations: Vec::new(),
            per_axiom: Default::default(),
            limit: 8,
        }
    }

    pub fn push(&mut self, axiom: &str, detail: impl FnOnce() -> String) {
        let seen = self.per_axiom.entry(axiom.to_string()).or_insert(0);
        *seen += 1;
        if *seen <= self.limit {
            self.violations.push(Violation::new(axiom, detail()));
        }
    }

    pub fn check(&mut self, ok: bool, axiom: &str, detail: impl FnOnce() -> String) {
        if !ok {
            self.push(axiom, detail);
        }
    }

    pub fn finish(self) -> Vec<Violation> {
        self.violations
    }
}

/// Outcome of one named comparison in a verification report.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

impl Check {
    pub fn new(name: impl Into<String>, passed: bool, detail: impl Into<String>) -> Self {
        Check {
            name: name.into(),
            passed,
            detail: detail.into(),
        }
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = if self.passed { "pass" } else { "FAIL" };
        write!(f, "[{status}] {}", self.name)?;
        if !self.detail.is_empty() {
            write!(f, ": {}", self.detail)?;
        }
        Ok(())
    }
}

//! Decision procedures on table groups: property (P), the group-theoretic
//! A3 test, minimal non-abelian subgroups, Q8-freeness, family axioms and the
//! lemma battery for (P)-groups.
//!
//! Reports render as one line per check, `check <name> pass|fail [detail]`,
//! followed by a `summary` line with counts.

mod family;
mod minimal;
mod property;

use std::fmt;

use thiserror::Error;

pub use family::{verify_family, FamilyCert, FamilySpec};
pub use minimal::{minimal_nonabelian_subgroups, no_q8_check, MINIMAL_NONABELIAN_LIMIT};
pub use property::{
    has_property_p, in_a3_theorem, lemma_suite, A3Reason, A3Verdict, PWitness, PropertyPReport, P_CLOSURE_CAP,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AnalysisError {
    #[error("group of order {order} exceeds the limit {limit} for {op}")]
    SizeCeiling { op: &'static str, order: usize, limit: usize },
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
    #[error("unknown family tag {0:?}")]
    UnknownTag(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail,
    /// A greedy witness search came up empty; this is not a proof of failure.
    NoWitness,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::NoWitness => "no-witness",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub name: String,
    pub status: Status,
    pub detail: String,
}

impl Check {
    pub fn new(name: &str, pass: bool, detail: impl Into<String>) -> Self {
        Check { name: name.to_string(), status: if pass { Status::Pass } else { Status::Fail }, detail: detail.into() }
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "check {} {}", self.name, self.status)?;
        if !self.detail.is_empty() {
            write!(f, " {}", self.detail)?;
        }
        Ok(())
    }
}

/// An ordered list of checks.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Report {
    pub checks: Vec<Check>,
}

impl Report {
    pub fn push(&mut self, check: Check) {
        self.checks.push(check);
    }

    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(Check::passed)
    }

    pub fn get(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            writeln!(f, "{c}")?;
        }
        let passed = self.checks.iter().filter(|c| c.passed()).count();
        write!(f, "summary checks={} passed={} failed={}", self.checks.len(), passed, self.checks.len() - passed)
    }
}

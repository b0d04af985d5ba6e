//! Validation reports and scan caps.

use crate::error::{Error, Result};

/// Caps for exhaustive scans. Quintuple scans are O(n^5), so validation of
/// large tables must be opted into explicitly.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    /// Largest carrier size accepted by full axiom scans and enumerations.
    pub max_n: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits { max_n: 32 }
    }
}

impl Limits {
    pub fn with_max_n(max_n: usize) -> Self {
        Limits { max_n }
    }

    /// At least `n`, never less than the default cap.
    pub fn covering(n: usize) -> Self {
        Limits {
            max_n: n.max(Limits::default().max_n),
        }
    }

    pub fn check(&self, operation: &'static str, n: usize) -> Result<()> {
        if n > self.max_n {
            Err(Error::ResourceLimit {
                operation,
                size: n,
                cap: self.max_n,
            })
        } else {
            Ok(())
        }
    }
}

/// One violated law together with the first witness found in lexicographic
/// scan order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub law: &'static str,
    pub witness: Vec<usize>,
}

/// Outcome of an axiom scan: at most one witness per violated law.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ValidationReport {
    pub kind: &'static str,
    pub passed: bool,
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn new(kind: &'static str) -> Self {
        ValidationReport {
            kind,
            passed: true,
            violations: Vec::new(),
        }
    }

    pub fn record(&mut self, law: &'static str, witness: Option<Vec<usize>>) {
        if let Some(witness) = witness {
            self.passed = false;
            self.violations.push(Violation { law, witness });
        }
    }

    /// Merge another report into this one, keeping its witnesses.
    pub fn absorb(&mut self, other: ValidationReport) {
        self.passed &= other.passed;
        self.violations.extend(other.violations);
    }

    pub fn violated(&self, law: &str) -> bool {
        self.violations.iter().any(|v| v.law == law)
    }

    /// Error out on the first violation, for operations whose precondition is
    /// a clean report.
    pub fn into_result(self, structure: &'static str) -> Result<()> {
        match self.violations.first() {
            None => Ok(()),
            Some(v) => Err(Error::invalid(structure, v.law, &v.witness)),
        }
    }
}

//! Witness-carrying validation reports shared by every structure.

use std::fmt;

use crate::error::{Error, Result};

/// One violated law together with the lexicographically least witness tuple
/// found by the exhaustive scan.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub law: String,
    pub witness: Vec<usize>,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} at (", self.law)?;
        for (k, w) in self.witness.iter().enumerate() {
            if k > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{w}")?;
        }
        write!(f, ")")
    }
}

/// Outcome of an exhaustive axiom scan: empty means every law holds.
///
/// Laws are scanned in a fixed order and each loop runs in index order, so
/// reports are deterministic for identical inputs.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn ok(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn push(&mut self, law: impl Into<String>, witness: &[usize]) {
        self.violations.push(Violation {
            law: law.into(),
            witness: witness.to_vec(),
        });
    }

    /// Records a violation only if `law` has not been recorded yet, keeping
    /// the first (lexicographically least) witness per law.
    pub fn push_first(&mut self, law: &str, witness: &[usize]) {
        if !self.violations.iter().any(|v| v.law == law) {
            self.push(law, witness);
        }
    }

    pub fn violation(&self, law: &str) -> Option<&Violation> {
        self.violations.iter().find(|v| v.law == law)
    }

    pub fn merge(&mut self, other: ValidationReport) {
        self.violations.extend(other.violations);
    }

    /// Converts a non-empty report into [`Error::Invalid`].
    pub fn into_result(self, context: &str) -> Result<()> {
        if self.ok() {
            Ok(())
        } else {
            Err(Error::invalid(context, self))
        }
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.ok() {
            return write!(f, "all laws hold");
        }
        for (k, v) in self.violations.iter().enumerate() {
            if k > 0 {
                write!(f, "; ")?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

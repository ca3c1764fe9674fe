//! Validation reports with concrete witnesses.

use std::fmt;

use crate::hyper::Carrier;

/// The property a [`Violation`] falsifies.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Check {
    /// `(x*z)*(y*z) < x*y`
    Hk1,
    /// `(x*y)*z = (x*z)*y`
    Hk2,
    /// `x*H < {x}`
    Hk3,
    /// `x<y` and `y<x` imply `x=y`. Only checked in strict mode.
    Hk4,
    /// `min μ(x*y) >= min(μ(x), μ(y))`
    FuzzyMin,
}

impl Check {
    pub fn id(self) -> &'static str {
        match self {
            Check::Hk1 => "HK1",
            Check::Hk2 => "HK2",
            Check::Hk3 => "HK3",
            Check::Hk4 => "HK4",
            Check::FuzzyMin => "FUZZY",
        }
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

/// A failed instance of a check, with the carrier indices that falsify it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub check: Check,
    pub witness: Vec<usize>,
}

impl Violation {
    pub fn new(check: Check, witness: impl Into<Vec<usize>>) -> Self {
        Violation { check, witness: witness.into() }
    }

    pub fn witness_labels<'a>(&self, carrier: &'a Carrier) -> Vec<&'a str> {
        self.witness.iter().map(|&i| carrier.label(i)).collect()
    }
}

/// Informational consequence checked alongside a validation. Never affects `passed`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Note {
    pub name: &'static str,
    pub holds: bool,
    pub detail: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ValidationReport {
    violations: Vec<Violation>,
    notes: Vec<Note>,
}

impl ValidationReport {
    pub fn new(violations: Vec<Violation>) -> Self {
        ValidationReport { violations, notes: Vec::new() }
    }

    pub fn with_notes(mut self, notes: Vec<Note>) -> Self {
        self.notes = notes;
        self
    }

    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn violations(&self) -> &[Violation] {
        &self.violations
    }

    pub fn notes(&self) -> &[Note] {
        &self.notes
    }

    pub fn has(&self, check: Check) -> bool {
        self.violations.iter().any(|v| v.check == check)
    }

    /// Appends the violations and notes of `other`.
    pub fn merge(mut self, other: ValidationReport) -> Self {
        self.violations.extend(other.violations);
        self.notes.extend(other.notes);
        self
    }
}

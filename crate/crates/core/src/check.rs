//! Named pass/fail results with reproducible witnesses.

use std::fmt;

use serde::Serialize;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CheckEntry {
    pub name: String,
    pub passed: bool,
    /// Number of cases the identity was evaluated on.
    pub checked: usize,
    /// Cases deliberately skipped (e.g. truncation boundary states).
    pub excluded: usize,
    /// First failing case, or an example of an excluded case.
    pub witness: Option<String>,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct CheckReport {
    pub entries: Vec<CheckEntry>,
}

impl CheckReport {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn push(&mut self, entry: CheckEntry) {
        self.entries.push(entry);
    }

    pub fn all_passed(&self) -> bool {
        self.entries.iter().all(|e| e.passed)
    }

    pub fn get(&self, name: &str) -> Option<&CheckEntry> {
        self.entries.iter().find(|e| e.name == name)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckEntry> {
        self.entries.iter().filter(|e| !e.passed)
    }
}

impl fmt::Display for CheckReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for e in &self.entries {
            write!(
                f,
                "{} {} (checked {}, excluded {})",
                if e.passed { "PASS" } else { "FAIL" },
                e.name,
                e.checked,
                e.excluded
            )?;
            if let Some(w) = &e.witness {
                write!(f, " witness: {w}")?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

/// Accumulates one identity's outcome over many cases.
#[derive(Debug)]
pub(crate) struct Tally {
    name: String,
    checked: usize,
    excluded: usize,
    failure: Option<String>,
    excluded_example: Option<String>,
}

impl Tally {
    pub(crate) fn new(name: impl Into<String>) -> Self {
        Tally {
            name: name.into(),
            checked: 0,
            excluded: 0,
            failure: None,
            excluded_example: None,
        }
    }

    pub(crate) fn record(&mut self, ok: bool, witness: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok && self.failure.is_none() {
            self.failure = Some(witness());
        }
    }

    pub(crate) fn exclude(&mut self, witness: impl FnOnce() -> String) {
        self.excluded += 1;
        if self.excluded_example.is_none() {
            self.excluded_example = Some(witness());
        }
    }

    pub(crate) fn finish(self) -> CheckEntry {
        let passed = self.failure.is_none();
        CheckEntry {
            name: self.name,
            passed,
            checked: self.checked,
            excluded: self.excluded,
            witness: self.failure.or(self.excluded_example),
        }
    }
}

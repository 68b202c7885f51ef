//! Pass/fail reports shared by every verification routine.

use std::fmt;

use serde::Serialize;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CheckItem {
    pub label: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Report {
    pub check: String,
    pub passed: bool,
    /// Order (e.g. `q^60`, `n <= 40`) to which the check was carried out.
    pub order: String,
    pub items: Vec<CheckItem>,
    /// Observations that do not affect `passed` (transcription findings, coverage notes).
    pub notes: Vec<String>,
}

impl Report {
    pub fn new(check: impl Into<String>, order: impl Into<String>) -> Self {
        Report {
            check: check.into(),
            passed: true,
            order: order.into(),
            items: Vec::new(),
            notes: Vec::new(),
        }
    }

    pub fn push(&mut self, label: impl Into<String>, passed: bool, detail: impl Into<String>) {
        self.passed &= passed;
        self.items.push(CheckItem {
            label: label.into(),
            passed,
            detail: detail.into(),
        });
    }

    pub fn note(&mut self, note: impl Into<String>) {
        self.notes.push(note.into());
    }

    pub fn first_failure(&self) -> Option<&CheckItem> {
        self.items.iter().find(|i| !i.passed)
    }

    /// Fold another report's items in under a label prefix.
    pub fn absorb(&mut self, prefix: &str, other: Report) {
        for item in other.items {
            self.push(format!("{prefix}: {}", item.label), item.passed, item.detail);
        }
        self.notes
            .extend(other.notes.into_iter().map(|n| format!("{prefix}: {n}")));
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = if self.passed { "PASS" } else { "FAIL" };
        writeln!(f, "[{status}] {} ({})", self.check, self.order)?;
        for item in &self.items {
            let mark = if item.passed { "ok " } else { "BAD" };
            writeln!(f, "  {mark} {}: {}", item.label, item.detail)?;
        }
        for note in &self.notes {
            writeln!(f, "  note: {note}")?;
        }
        Ok(())
    }
}

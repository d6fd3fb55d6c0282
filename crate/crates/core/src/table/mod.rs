//! Whole-file handling: reading both CSV schemas, row and table rules,
//! cross-file consistency and canonical output.

use std::collections::BTreeMap;

use crate::diagnostic::{Diagnostic, Field, Severity};
use crate::model::{CitationRecord, MetadataRecord};

mod cross;
mod read;
mod validate;
mod write;

pub use cross::{cross_validate, CrossOptions};
pub use read::{read_cits_table, read_meta_table};
pub use validate::{
    validate_cits_table, validate_cits_table_with, validate_meta_table, validate_meta_table_with,
    Profile,
};
pub use write::{normalize_tables, render_cits_csv, render_meta_csv, NormalizedTables, RefuseOnErrors};

/// A parsed META-CSV file.
///
/// `header_map` holds the column index of every recognised attribute. An
/// attribute is missing from it only if the reader reported `MISSING_COLUMN`.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct MetaTable {
    pub records: Vec<MetadataRecord>,
    pub header_map: BTreeMap<Field, usize>,
}

/// A parsed CITS-CSV file.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct CitsTable {
    pub records: Vec<CitationRecord>,
    pub header_map: BTreeMap<Field, usize>,
}

/// Ordered diagnostics with running severity tallies.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ValidationReport {
    diagnostics: Vec<Diagnostic>,
    error_count: usize,
    warning_count: usize,
}

impl ValidationReport {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn push(&mut self, diagnostic: Diagnostic) {
        match diagnostic.severity {
            Severity::Error => self.error_count += 1,
            Severity::Warning => self.warning_count += 1,
        }
        self.diagnostics.push(diagnostic);
    }

    pub fn merge(&mut self, other: ValidationReport) {
        self.extend(other.diagnostics);
    }

    pub fn diagnostics(&self) -> &[Diagnostic] {
        &self.diagnostics
    }

    pub fn into_diagnostics(self) -> Vec<Diagnostic> {
        self.diagnostics
    }

    pub fn error_count(&self) -> usize {
        self.error_count
    }

    pub fn warning_count(&self) -> usize {
        self.warning_count
    }

    pub fn has_errors(&self) -> bool {
        self.error_count > 0
    }

    pub fn is_empty(&self) -> bool {
        self.diagnostics.is_empty()
    }
}

impl Extend<Diagnostic> for ValidationReport {
    fn extend<I: IntoIterator<Item = Diagnostic>>(&mut self, iter: I) {
        for d in iter {
            self.push(d);
        }
    }
}

impl FromIterator<Diagnostic> for ValidationReport {
    fn from_iter<I: IntoIterator<Item = Diagnostic>>(iter: I) -> Self {
        let mut report = ValidationReport::new();
        report.extend(iter);
        report
    }
}

impl IntoIterator for ValidationReport {
    type Item = Diagnostic;
    type IntoIter = std::vec::IntoIter<Diagnostic>;

    fn into_iter(self) -> Self::IntoIter {
        self.diagnostics.into_iter()
    }
}

use std::cmp::Ordering;
use std::collections::HashMap;

use crate::diagnostic::{Code, Field, FileKind, Locus};
use crate::grammar::Render;
use crate::model::{IdentifierToken, PartialDate};
use crate::schemes::normalize_identifier;

use super::{CitsTable, MetaTable, ValidationReport};

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct CrossOptions {
    /// Report citation identifiers that no META row describes.
    pub require_resolution: bool,
}

/// Consistency checks between the two tables, and across rows of the
/// citation table. Every finding is a warning.
///
/// Empty dates never conflict with anything.
pub fn cross_validate(
    meta: Option<&MetaTable>,
    cits: &CitsTable,
    options: CrossOptions,
) -> ValidationReport {
    let mut described: HashMap<IdentifierToken, (usize, Option<PartialDate>)> = HashMap::new();
    for record in meta.map(|m| m.records.as_slice()).unwrap_or_default() {
        for token in &record.id {
            described
                .entry(normalize_identifier(token))
                .or_insert((record.row_index, record.pub_date));
        }
    }

    let mut report = ValidationReport::new();
    let mut citing_dates: HashMap<IdentifierToken, (usize, PartialDate)> = HashMap::new();
    for record in &cits.records {
        let row = record.row_index;
        let sides = [
            (&record.citing_id, record.citing_publication_date, Field::CitingId, Field::CitingPublicationDate),
            (&record.cited_id, record.cited_publication_date, Field::CitedId, Field::CitedPublicationDate),
        ];
        for (ids, date, id_field, date_field) in sides {
            let normalized: Vec<_> = ids.iter().map(normalize_identifier).collect();
            if options.require_resolution {
                for token in normalized.iter().filter(|t| !described.contains_key(t)) {
                    report.push(Locus::cell(FileKind::Cits, row, id_field).warning(
                        Code::UnresolvedCitation,
                        format!("'{token}' is not described by any META row"),
                    ));
                }
            }
            let Some(date) = date else { continue };
            let mismatch = normalized.iter().find_map(|t| match described.get(t) {
                Some(&(meta_row, Some(meta_date)))
                    if date.cmp_shared(&meta_date) != Ordering::Equal =>
                {
                    Some((t, meta_row, meta_date))
                }
                _ => None,
            });
            if let Some((token, meta_row, meta_date)) = mismatch {
                report.push(Locus::cell(FileKind::Cits, row, date_field).warning(
                    Code::DateMismatch,
                    format!(
                        "{} disagrees with pub_date {} of '{token}' in META row {meta_row}",
                        date.render(),
                        meta_date.render()
                    ),
                ));
            }
        }

        if let Some(date) = record.citing_publication_date {
            let mut conflict = None;
            for token in record.citing_id.iter().map(normalize_identifier) {
                match citing_dates.get(&token) {
                    Some(&(first_row, first_date)) if first_date != date => {
                        conflict.get_or_insert((token, first_row, first_date));
                    }
                    Some(_) => {}
                    None => {
                        citing_dates.insert(token, (row, date));
                    }
                }
            }
            if let Some((token, first_row, first_date)) = conflict {
                report.push(Locus::cell(FileKind::Cits, row, Field::CitingPublicationDate).warning(
                    Code::InconsistentCitingDate,
                    format!(
                        "'{token}' is dated {} here but {} in row {first_row}",
                        date.render(),
                        first_date.render()
                    ),
                ));
            }
        }

        if let (Some(citing), Some(cited)) =
            (record.citing_publication_date, record.cited_publication_date)
        {
            if citing.cmp_shared(&cited) == Ordering::Less {
                report.push(Locus::cell(FileKind::Cits, row, Field::CitingPublicationDate).warning(
                    Code::CitationPrecedesSource,
                    format!(
                        "citing entity ({}) predates the cited entity ({})",
                        citing.render(),
                        cited.render()
                    ),
                ));
            }
        }
    }
    report
}

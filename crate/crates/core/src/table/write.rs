use thiserror::Error;

use crate::diagnostic::Field;
use crate::grammar::Render;
use crate::model::{CitationRecord, IdentifierToken, MetadataRecord};
use crate::schemes::normalize_identifier;

use super::{CitsTable, MetaTable, ValidationReport};

/// Canonical output could not be produced because validation found errors.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("REFUSE_ON_ERRORS: refusing to normalize input with {error_count} error(s)")]
pub struct RefuseOnErrors {
    pub error_count: usize,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct NormalizedTables {
    pub meta: Option<Vec<u8>>,
    pub cits: Option<Vec<u8>>,
}

/// Appends one CSV record. Only cells holding a comma, quote or line break
/// are quoted; quotes inside are doubled.
fn push_row<S: AsRef<str>>(out: &mut String, cells: impl IntoIterator<Item = S>) {
    for (i, cell) in cells.into_iter().enumerate() {
        let cell = cell.as_ref();
        if i > 0 {
            out.push(',');
        }
        if cell.contains([',', '"', '\n', '\r']) {
            out.push('"');
            out.push_str(&cell.replace('"', "\"\""));
            out.push('"');
        } else {
            out.push_str(cell);
        }
    }
    out.push('\n');
}

fn meta_cells(r: &MetadataRecord) -> [String; 11] {
    [
        r.id.render(),
        r.title.render(),
        r.author.render(),
        r.pub_date.render(),
        r.venue.render(),
        r.volume.render(),
        r.issue.render(),
        r.page.render(),
        r.resource_type.render(),
        r.publisher.render(),
        r.editor.render(),
    ]
}

fn cits_cells(r: &CitationRecord) -> [String; 4] {
    [
        r.citing_id.render(),
        r.citing_publication_date.render(),
        r.cited_id.render(),
        r.cited_publication_date.render(),
    ]
}

/// Renders records as they are, in canonical column order.
pub fn render_meta_csv(records: &[MetadataRecord]) -> Vec<u8> {
    let mut out = String::new();
    push_row(&mut out, Field::META.map(Field::as_str));
    for r in records {
        push_row(&mut out, meta_cells(r));
    }
    out.into_bytes()
}

pub fn render_cits_csv(records: &[CitationRecord]) -> Vec<u8> {
    let mut out = String::new();
    push_row(&mut out, Field::CITS.map(Field::as_str));
    for r in records {
        push_row(&mut out, cits_cells(r));
    }
    out.into_bytes()
}

fn normalize_all(ids: &mut [IdentifierToken]) {
    for t in ids {
        *t = normalize_identifier(t);
    }
}

fn normalized_meta(record: &MetadataRecord) -> MetadataRecord {
    let mut r = record.clone();
    normalize_all(&mut r.id);
    for agent in r.author.iter_mut().chain(r.editor.iter_mut()) {
        normalize_all(agent.ids_mut());
    }
    for entity in [&mut r.venue, &mut r.publisher].into_iter().flatten() {
        normalize_all(entity.ids_mut());
    }
    r
}

fn normalized_cits(record: &CitationRecord) -> CitationRecord {
    let mut r = record.clone();
    normalize_all(&mut r.citing_id);
    normalize_all(&mut r.cited_id);
    r
}

/// Writes canonical CSV for each table given, with identifiers normalized.
///
/// `report` must cover reading and validating those tables; any ERROR in it
/// blocks output.
pub fn normalize_tables(
    meta: Option<&MetaTable>,
    cits: Option<&CitsTable>,
    report: &ValidationReport,
) -> Result<NormalizedTables, RefuseOnErrors> {
    if report.has_errors() {
        return Err(RefuseOnErrors {
            error_count: report.error_count(),
        });
    }
    Ok(NormalizedTables {
        meta: meta.map(|t| {
            let records: Vec<_> = t.records.iter().map(normalized_meta).collect();
            render_meta_csv(&records)
        }),
        cits: cits.map(|t| {
            let records: Vec<_> = t.records.iter().map(normalized_cits).collect();
            render_cits_csv(&records)
        }),
    })
}

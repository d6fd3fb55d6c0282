use std::collections::{BTreeSet, HashMap};

use crate::diagnostic::{Code, Field, FileKind, Locus};
use crate::grammar::Mode;
use crate::model::{check_requirements, IdentifierToken};
use crate::schemes::SchemeRegistry;

use super::{CitsTable, MetaTable, ValidationReport};

/// Extra constraints on citation tables.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash)]
pub enum Profile {
    #[default]
    Default,
    /// Only DOI-to-DOI citations are accepted.
    Croci,
}

fn check_tokens<'a>(
    tokens: impl IntoIterator<Item = &'a IdentifierToken>,
    registry: &SchemeRegistry,
    mode: Mode,
    at: Locus,
    report: &mut ValidationReport,
) {
    for token in tokens {
        report.extend(registry.validate(token, mode, at));
    }
}

pub fn validate_meta_table(table: &MetaTable, mode: Mode) -> ValidationReport {
    validate_meta_table_with(table, mode, SchemeRegistry::builtin())
}

/// Per-row requirement and identifier checks, plus `DUPLICATE_ID` across rows.
pub fn validate_meta_table_with(
    table: &MetaTable,
    mode: Mode,
    registry: &SchemeRegistry,
) -> ValidationReport {
    let mut report = ValidationReport::new();
    let mut first_row: HashMap<IdentifierToken, usize> = HashMap::new();
    for record in &table.records {
        let row = record.row_index;
        let at = |field| Locus::cell(FileKind::Meta, row, field);
        report.extend(check_requirements(record));

        check_tokens(&record.id, registry, mode, at(Field::Id), &mut report);
        for (field, agents) in [(Field::Author, &record.author), (Field::Editor, &record.editor)] {
            for agent in agents {
                check_tokens(agent.ids(), registry, mode, at(field), &mut report);
            }
        }
        for (field, entity) in [(Field::Venue, &record.venue), (Field::Publisher, &record.publisher)] {
            if let Some(entity) = entity {
                check_tokens(entity.ids(), registry, mode, at(field), &mut report);
            }
        }

        let normalized: BTreeSet<IdentifierToken> =
            record.id.iter().map(|t| registry.normalize(t)).collect();
        for token in normalized {
            match first_row.get(&token) {
                Some(&earlier) => report.push(
                    at(Field::Id).warning(
                        Code::DuplicateId,
                        format!("'{token}' already identifies row {earlier}"),
                    ),
                ),
                None => {
                    first_row.insert(token, row);
                }
            }
        }
    }
    report
}

pub fn validate_cits_table(table: &CitsTable, mode: Mode, profile: Profile) -> ValidationReport {
    validate_cits_table_with(table, mode, profile, SchemeRegistry::builtin())
}

/// Identifier checks, the CROCI restriction when requested, and self-citations.
pub fn validate_cits_table_with(
    table: &CitsTable,
    mode: Mode,
    profile: Profile,
    registry: &SchemeRegistry,
) -> ValidationReport {
    let mut report = ValidationReport::new();
    for record in &table.records {
        let row = record.row_index;
        let at = |field| Locus::cell(FileKind::Cits, row, field);
        check_tokens(&record.citing_id, registry, mode, at(Field::CitingId), &mut report);
        check_tokens(&record.cited_id, registry, mode, at(Field::CitedId), &mut report);

        if profile == Profile::Croci {
            let non_doi: Vec<(Field, &IdentifierToken)> = [
                (Field::CitingId, &record.citing_id),
                (Field::CitedId, &record.cited_id),
            ]
            .into_iter()
            .flat_map(|(field, ids)| ids.iter().map(move |t| (field, t)))
            .filter(|(_, t)| t.scheme() != "doi")
            .collect();
            if let Some(&(field, _)) = non_doi.first() {
                let listed = non_doi
                    .iter()
                    .map(|(_, t)| t.to_string())
                    .collect::<Vec<_>>()
                    .join(", ");
                report.push(at(field).error(
                    Code::NonDoiCitation,
                    format!("the croci profile accepts only DOI-to-DOI citations: {listed}"),
                ));
            }
        }

        let citing: BTreeSet<_> = record.citing_id.iter().map(|t| registry.normalize(t)).collect();
        let shared: Vec<String> = record
            .cited_id
            .iter()
            .map(|t| registry.normalize(t))
            .filter(|t| citing.contains(t))
            .map(|t| t.to_string())
            .collect();
        if !shared.is_empty() {
            report.push(at(Field::CitedId).warning(
                Code::SelfCitationId,
                format!("citing and cited entity share {}", shared.join(", ")),
            ));
        }
    }
    report
}

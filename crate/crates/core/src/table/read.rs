use std::collections::BTreeMap;

use crate::diagnostic::{Code, Diagnostic, Field, FileKind, Locus};
use crate::grammar::{
    parse_agent_list, parse_bracketed_name, parse_id_list, parse_page_range, parse_partial_date,
    parse_text, parse_type_cell, FieldParse, Mode,
};
use crate::model::{CitationRecord, MetadataRecord};

use super::{CitsTable, MetaTable, ValidationReport};

/// Header-resolved rows of one CSV file.
struct RawTable {
    header_map: BTreeMap<Field, usize>,
    width: usize,
    rows: Vec<Vec<String>>,
}

impl RawTable {
    fn cell<'a>(&self, row: &'a [String], field: Field) -> &'a str {
        self.header_map
            .get(&field)
            .and_then(|&i| row.get(i))
            .map_or("", String::as_str)
    }
}

/// Splits input into header and data rows and checks the header contract.
fn read_raw(
    input: &[u8],
    file: FileKind,
    columns: &[Field],
    report: &mut ValidationReport,
) -> Option<RawTable> {
    let input = input.strip_prefix(b"\xEF\xBB\xBF").unwrap_or(input);
    if let Err(e) = std::str::from_utf8(input) {
        report.push(Locus::file(file).error(
            Code::NotUtf8,
            format!("input is not valid UTF-8 (byte offset {})", e.valid_up_to()),
        ));
        return None;
    }
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(false)
        .flexible(true)
        .from_reader(input);
    let mut records = Vec::new();
    for result in reader.records() {
        match result {
            Ok(record) => {
                let blank_line = record.len() == 1 && record[0].trim().is_empty();
                if !blank_line {
                    records.push(record.iter().map(str::to_owned).collect::<Vec<_>>());
                }
            }
            Err(e) => {
                report.push(Locus::file(file).error(Code::NotUtf8, e.to_string()));
                return None;
            }
        }
    }
    let mut records = records.into_iter();
    let Some(header) = records.next() else {
        report.push(Locus::file(file).error(Code::EmptyFile, "no header row"));
        return None;
    };

    let mut header_map = BTreeMap::new();
    for (i, name) in header.iter().enumerate() {
        let key = name.trim().to_lowercase();
        match columns.iter().find(|f| f.as_str() == key) {
            Some(&field) => {
                if header_map.insert(field, i).is_some() {
                    report.push(Locus::file(file).with_field(field).error(
                        Code::DuplicateColumn,
                        format!("column '{field}' appears more than once"),
                    ));
                }
            }
            None => report.push(Locus::file(file).warning(
                Code::UnknownColumn,
                format!("column '{}' is not part of the schema and is ignored", name.trim()),
            )),
        }
    }
    for &field in columns {
        if !header_map.contains_key(&field) {
            report.push(
                Locus::file(file)
                    .with_field(field)
                    .error(Code::MissingColumn, format!("required column '{field}' is missing")),
            );
        }
    }

    Some(RawTable {
        header_map,
        width: header.len(),
        rows: records.collect(),
    })
}

fn ragged(file: FileKind, row: usize, cells: usize, width: usize) -> Diagnostic {
    Locus::row(file, row).error(
        Code::RaggedRow,
        format!("row has {cells} cells but the header has {width}"),
    )
}

fn take<T>(parse: FieldParse<T>, report: &mut ValidationReport) -> Option<T> {
    report.extend(parse.diagnostics);
    parse.value
}

/// Reads a META-CSV file. Columns are matched by name, in any order.
///
/// Rows whose cells fail to parse are kept, with those cells left absent.
pub fn read_meta_table(input: &[u8], mode: Mode) -> (MetaTable, ValidationReport) {
    let mut report = ValidationReport::new();
    let Some(raw) = read_raw(input, FileKind::Meta, &Field::META, &mut report) else {
        return (MetaTable::default(), report);
    };
    let mut records = Vec::with_capacity(raw.rows.len());
    for (i, row) in raw.rows.iter().enumerate() {
        let row_index = i + 1;
        if row.len() != raw.width {
            report.push(ragged(FileKind::Meta, row_index, row.len(), raw.width));
        }
        let at = |field| Locus::cell(FileKind::Meta, row_index, field);
        let cell = |field| raw.cell(row, field);
        let r = &mut report;
        records.push(MetadataRecord {
            row_index,
            id: take(parse_id_list(cell(Field::Id), mode, false, at(Field::Id)), r)
                .unwrap_or_default(),
            title: parse_text(cell(Field::Title)),
            author: take(parse_agent_list(cell(Field::Author), mode, at(Field::Author)), r)
                .unwrap_or_default(),
            pub_date: take(parse_partial_date(cell(Field::PubDate), mode, at(Field::PubDate)), r)
                .flatten(),
            venue: take(parse_bracketed_name(cell(Field::Venue), mode, at(Field::Venue)), r)
                .flatten(),
            volume: parse_text(cell(Field::Volume)),
            issue: parse_text(cell(Field::Issue)),
            page: take(parse_page_range(cell(Field::Page), at(Field::Page)), r).flatten(),
            resource_type: take(parse_type_cell(cell(Field::Type), at(Field::Type)), r).flatten(),
            publisher: take(
                parse_bracketed_name(cell(Field::Publisher), mode, at(Field::Publisher)),
                r,
            )
            .flatten(),
            editor: take(parse_agent_list(cell(Field::Editor), mode, at(Field::Editor)), r)
                .unwrap_or_default(),
        });
    }
    let table = MetaTable {
        records,
        header_map: raw.header_map,
    };
    (table, report)
}

/// Reads a CITS-CSV file. Both id columns are mandatory on every row.
pub fn read_cits_table(input: &[u8], mode: Mode) -> (CitsTable, ValidationReport) {
    let mut report = ValidationReport::new();
    let Some(raw) = read_raw(input, FileKind::Cits, &Field::CITS, &mut report) else {
        return (CitsTable::default(), report);
    };
    let mut records = Vec::with_capacity(raw.rows.len());
    for (i, row) in raw.rows.iter().enumerate() {
        let row_index = i + 1;
        if row.len() != raw.width {
            report.push(ragged(FileKind::Cits, row_index, row.len(), raw.width));
        }
        let at = |field| Locus::cell(FileKind::Cits, row_index, field);
        let ids = |field: Field, report: &mut ValidationReport| {
            let text = raw.cell(row, field);
            if text.trim().is_empty() {
                if raw.header_map.contains_key(&field) {
                    report.push(at(field).error(
                        Code::MissingMandatoryId,
                        format!("{field} is mandatory"),
                    ));
                }
                return Vec::new();
            }
            take(parse_id_list(text, mode, true, at(field)), report).unwrap_or_default()
        };
        let citing_id = ids(Field::CitingId, &mut report);
        let cited_id = ids(Field::CitedId, &mut report);
        let date = |field: Field, report: &mut ValidationReport| {
            take(parse_partial_date(raw.cell(row, field), mode, at(field)), report).flatten()
        };
        let citing_publication_date = date(Field::CitingPublicationDate, &mut report);
        let cited_publication_date = date(Field::CitedPublicationDate, &mut report);
        records.push(CitationRecord {
            row_index,
            citing_id,
            citing_publication_date,
            cited_id,
            cited_publication_date,
        });
    }
    let table = CitsTable {
        records,
        header_map: raw.header_map,
    };
    (table, report)
}

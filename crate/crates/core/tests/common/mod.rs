//! Fixtures, independent oracles and generators shared by the integration tests.
#![allow(dead_code)]

use oc_csv::{
    Agent, CitationRecord, IdentifierToken, MetadataRecord, NamedEntity, PageRange, PartialDate,
    ResourceType,
};
use proptest::prelude::*;

pub const TABLE1_META: &str = include_str!("../data/table1_meta.csv");
pub const TABLE2_CITS: &str = include_str!("../data/table2_cits.csv");

pub fn data_path(name: &str) -> std::path::PathBuf {
    std::path::Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("tests/data")
        .join(name)
}

// ---------------------------------------------------------------------------
// Check-digit oracles, written from the standards rather than from the library.

fn digits(s: &str) -> Vec<u32> {
    s.chars().filter_map(|c| c.to_digit(10)).collect()
}

fn mod11_char(r: u32) -> char {
    if r == 10 {
        'X'
    } else {
        char::from_digit(r, 10).unwrap()
    }
}

/// ISSN: sum of d_i * (8 - i), check = 11 - (sum mod 11), 11 -> 0, 10 -> X.
pub fn oracle_issn_check(first7: &str) -> char {
    let d = digits(first7);
    assert_eq!(d.len(), 7);
    let sum: u32 = d.iter().enumerate().map(|(i, v)| v * (8 - i as u32)).sum();
    let c = 11 - sum % 11;
    mod11_char(if c == 11 { 0 } else { c })
}

/// ORCID (ISO 7064 MOD 11-2): closed form sum of d_i * 2^(15 - i), check = (12 - sum mod 11) mod 11.
pub fn oracle_orcid_check(first15: &str) -> char {
    let d = digits(first15);
    assert_eq!(d.len(), 15);
    let mut sum: u64 = 0;
    for (i, v) in d.iter().enumerate() {
        sum += *v as u64 * (1u64 << (15 - i));
    }
    mod11_char(((12 - sum % 11) % 11) as u32)
}

/// ISBN-13: the weighted sum of all 13 digits (1,3,1,3,...) must be divisible by 10.
pub fn oracle_isbn13_check(first12: &str) -> char {
    let d = digits(first12);
    (0..10)
        .map(|c| char::from_digit(c, 10).unwrap())
        .find(|&c| {
            let mut all = d.clone();
            all.push(c.to_digit(10).unwrap());
            all.iter()
                .enumerate()
                .map(|(i, v)| if i % 2 == 0 { *v } else { 3 * v })
                .sum::<u32>()
                % 10
                == 0
        })
        .unwrap()
}

/// ISBN-10: sum of d_i * (10 - i) over all ten characters must be divisible by 11.
pub fn oracle_isbn10_check(first9: &str) -> char {
    let d = digits(first9);
    (0..=10)
        .find(|&c| {
            let s: u32 = d.iter().enumerate().map(|(i, v)| v * (10 - i as u32)).sum::<u32>() + c;
            s.is_multiple_of(11)
        })
        .map(mod11_char)
        .unwrap()
}

// ---------------------------------------------------------------------------
// Mandatory-field oracle, transcribed from the published bullet list.

pub const REQUIREMENT_FIELDS: [&str; 7] =
    ["title", "pub_date", "author", "editor", "venue", "volume", "issue"];

/// (types, alternatives) in the order the rules are stated.
pub const REQUIREMENT_RULES: &[(&[&str], &[&[&str]])] = &[
    (
        &[
            "book",
            "dataset",
            "dissertation",
            "edited book",
            "journal article",
            "monograph",
            "other",
            "peer review",
            "posted content",
            "proceedings article",
            "report",
            "reference book",
        ],
        &[&["title", "pub_date", "author"], &["title", "pub_date", "editor"]],
    ),
    (
        &[
            "book chapter",
            "book part",
            "book section",
            "book track",
            "component",
            "reference entry",
        ],
        &[&["title", "venue"]],
    ),
    (
        &[
            "book series",
            "book set",
            "journal",
            "proceedings",
            "proceedings series",
            "report series",
            "standard",
            "standard series",
        ],
        &[&["title"]],
    ),
    (&["journal volume"], &[&["venue", "volume"], &["venue", "title"]]),
    (&["journal issue"], &[&["venue", "issue"], &["venue", "title"]]),
];

/// Expected missing fields for an id-less record: empty if any alternative is
/// covered, else the missing fields of the alternative needing fewest
/// additions (earliest wins ties).
pub fn oracle_missing(type_label: Option<&str>, present: &[&str]) -> Vec<String> {
    let alternatives: &[&[&str]] = match type_label {
        None => REQUIREMENT_RULES[0].1,
        Some(label) => {
            REQUIREMENT_RULES
                .iter()
                .find(|(types, _)| types.contains(&label))
                .expect("label in the transcribed table")
                .1
        }
    };
    let mut best: Option<Vec<String>> = None;
    for alt in alternatives {
        let missing: Vec<String> = alt
            .iter()
            .filter(|f| !present.contains(f))
            .map(|f| f.to_string())
            .collect();
        if missing.is_empty() {
            return Vec::new();
        }
        if best.as_ref().is_none_or(|b| missing.len() < b.len()) {
            best = Some(missing);
        }
    }
    best.unwrap()
}

/// A record without id whose populated fields are exactly `present`.
pub fn record_with(resource_type: Option<ResourceType>, present: &[&str]) -> MetadataRecord {
    let agent = || vec![Agent::new("Peroni", "Silvio", vec![]).unwrap()];
    let has = |f: &str| present.contains(&f);
    MetadataRecord {
        row_index: 1,
        title: has("title").then(|| "A title".to_owned()),
        pub_date: has("pub_date").then(|| PartialDate::new(2017, None, None).unwrap()),
        author: if has("author") { agent() } else { vec![] },
        editor: if has("editor") { agent() } else { vec![] },
        venue: has("venue").then(|| NamedEntity::new("Data Science", vec![]).unwrap()),
        volume: has("volume").then(|| "1".to_owned()),
        issue: has("issue").then(|| "2".to_owned()),
        resource_type,
        ..Default::default()
    }
}

// ---------------------------------------------------------------------------
// Generators.

fn token(scheme: &str, value: &str) -> IdentifierToken {
    IdentifierToken::new(scheme, value).unwrap()
}

pub fn issn_value() -> impl Strategy<Value = String> {
    "[0-9]{7}".prop_map(|d| format!("{}-{}{}", &d[..4], &d[4..], oracle_issn_check(&d)))
}

pub fn orcid_value() -> impl Strategy<Value = String> {
    "[0-9]{15}".prop_map(|d| {
        format!(
            "{}-{}-{}-{}{}",
            &d[..4],
            &d[4..8],
            &d[8..12],
            &d[12..],
            oracle_orcid_check(&d)
        )
    })
}

pub fn isbn13_value() -> impl Strategy<Value = String> {
    "97[89][0-9]{9}".prop_map(|d| format!("{d}{}", oracle_isbn13_check(&d)))
}

pub fn isbn10_value() -> impl Strategy<Value = String> {
    "[0-9]{9}".prop_map(|d| format!("{d}{}", oracle_isbn10_check(&d)))
}

pub fn doi_value() -> impl Strategy<Value = String> {
    "10\\.[0-9]{4,5}/[a-z0-9][a-z0-9._()-]{0,20}"
}

/// Valid, already-normalized identifiers of every built-in scheme.
pub fn valid_token() -> impl Strategy<Value = IdentifierToken> {
    prop_oneof![
        doi_value().prop_map(|v| token("doi", &v)),
        issn_value().prop_map(|v| token("issn", &v)),
        orcid_value().prop_map(|v| token("orcid", &v)),
        isbn13_value().prop_map(|v| token("isbn", &v)),
        isbn10_value().prop_map(|v| token("isbn", &v)),
        "[1-9][0-9]{0,8}".prop_map(|v| token("pmid", &v)),
        "[1-9][0-9]{0,4}".prop_map(|v| token("crossref", &v)),
    ]
}

pub fn tokens(min: usize, max: usize) -> impl Strategy<Value = Vec<IdentifierToken>> {
    prop::collection::vec(valid_token(), min..=max)
}

fn trimmed(s: String) -> Option<String> {
    let t = s.trim();
    (!t.is_empty()).then(|| t.to_owned())
}

pub fn agent() -> impl Strategy<Value = Agent> {
    (
        "[A-Z][a-z]{1,9}( (de|van|Del) [A-Z][a-z]{1,9})?",
        prop_oneof![
            Just(String::new()),
            "[A-Z][a-z]{1,8}",
            "[A-Z]\\. [A-Z]\\.",
            "[A-Z][a-z]{1,8}, Jr\\.",
        ],
        tokens(0, 2),
    )
        .prop_map(|(family, given, ids)| Agent::new(&family, &given, ids).unwrap())
}

pub fn agents() -> impl Strategy<Value = Vec<Agent>> {
    prop::collection::vec(agent(), 0..4)
}

pub fn entity() -> impl Strategy<Value = NamedEntity> {
    ("[A-Za-z][A-Za-z0-9 .&,()\\[\\]-]{0,30}", tokens(0, 2)).prop_filter_map(
        "well-formed entity",
        |(name, ids)| trimmed(name).and_then(|n| NamedEntity::new(&n, ids).ok()),
    )
}

pub fn date() -> impl Strategy<Value = PartialDate> {
    (1000i32..=9999, 0u32..=12, 0u32..=31).prop_filter_map("calendar date", |(y, m, d)| {
        let month = (m > 0).then_some(m);
        let day = (m > 0 && d > 0).then_some(d);
        PartialDate::new(y, month, day).ok()
    })
}

pub fn page_range() -> impl Strategy<Value = PageRange> {
    (
        prop_oneof!["[1-9][0-9]{0,3}", "[ivx]{1,4}", "e[0-9]{1,3}"],
        prop_oneof!["[1-9][0-9]{0,3}", "[0-9]{1,3}-[0-9]{1,2}", "[ivx]{1,4}"],
    )
        .prop_filter_map("ascending range", |(first, last)| {
            PageRange::new(&first, &last)
                .ok()
                .filter(|r| !r.is_descending())
        })
}

pub fn free_text() -> impl Strategy<Value = String> {
    "[A-Za-z0-9][A-Za-z0-9 ,.:;\"'?()\n-]{0,40}".prop_filter_map("trimmed text", trimmed)
}

pub fn short_text() -> impl Strategy<Value = String> {
    "[0-9A-Za-z][0-9A-Za-z-]{0,5}"
}

pub fn resource_type() -> impl Strategy<Value = ResourceType> {
    prop::sample::select(ResourceType::ALL.to_vec())
}

/// Arbitrary well-formed META records; `min_ids` forces identified records.
pub fn meta_record(min_ids: usize) -> impl Strategy<Value = MetadataRecord> {
    (
        tokens(min_ids, 3),
        prop::option::of(free_text()),
        agents(),
        agents(),
        prop::option::of(date()),
        prop::option::of(entity()),
        prop::option::of(short_text()),
        prop::option::of(short_text()),
        prop::option::of(page_range()),
        prop::option::of(resource_type()),
        prop::option::of(entity()),
    )
        .prop_map(
            |(id, title, author, editor, pub_date, venue, volume, issue, page, resource_type, publisher)| {
                MetadataRecord {
                    row_index: 0,
                    id,
                    title,
                    author,
                    editor,
                    pub_date,
                    venue,
                    volume,
                    issue,
                    page,
                    resource_type,
                    publisher,
                }
            },
        )
}

pub fn meta_records(min_ids: usize) -> impl Strategy<Value = Vec<MetadataRecord>> {
    prop::collection::vec(meta_record(min_ids), 0..6).prop_map(number_meta)
}

pub fn number_meta(mut records: Vec<MetadataRecord>) -> Vec<MetadataRecord> {
    for (i, r) in records.iter_mut().enumerate() {
        r.row_index = i + 1;
    }
    records
}

pub fn cits_record() -> impl Strategy<Value = CitationRecord> {
    (
        tokens(1, 2),
        prop::option::of(date()),
        tokens(1, 2),
        prop::option::of(date()),
    )
        .prop_map(|(citing_id, citing_publication_date, cited_id, cited_publication_date)| {
            CitationRecord {
                row_index: 0,
                citing_id,
                citing_publication_date,
                cited_id,
                cited_publication_date,
            }
        })
}

pub fn cits_records() -> impl Strategy<Value = Vec<CitationRecord>> {
    prop::collection::vec(cits_record(), 0..6).prop_map(|mut records| {
        for (i, r) in records.iter_mut().enumerate() {
            r.row_index = i + 1;
        }
        records
    })
}

/// Raw META cells: mostly valid, sometimes broken, for per-row checks.
pub fn messy_meta_row() -> impl Strategy<Value = Vec<String>> {
    let id = prop_oneof![
        Just(String::new()),
        Just("doi:10.3233/DS-170012".to_owned()),
        Just("pmid:1".to_owned()),
        Just("doi10.1/x".to_owned()),
        Just("issn:0018-1511".to_owned()),
        Just("foo:bar".to_owned()),
    ];
    let title = prop_oneof![Just(String::new()), Just("A title, with comma".to_owned())];
    let agent = prop_oneof![
        Just(String::new()),
        Just("Peroni, Silvio [orcid:0000-0003-0530-4305]".to_owned()),
        Just("Gfrereis Heike".to_owned()),
        Just("Peroni, [orcid:1".to_owned()),
    ];
    let date = prop_oneof![
        Just(String::new()),
        Just("2017".to_owned()),
        Just("2017-5".to_owned()),
        Just("2017-13".to_owned()),
        Just("17".to_owned()),
    ];
    let venue = prop_oneof![
        Just(String::new()),
        Just("High Temperature [issn:0018-151X]".to_owned()),
        Just("[issn:0018-151X]".to_owned()),
    ];
    let page = prop_oneof![Just(String::new()), Just("1-2".to_owned()), Just("9-3".to_owned()), Just("12".to_owned())];
    let kind = prop_oneof![
        Just(String::new()),
        Just("journal article".to_owned()),
        Just("journal volume".to_owned()),
        Just("novel".to_owned()),
    ];
    (id, title, agent.clone(), date, venue.clone(), page, kind, venue, agent).prop_map(
        |(id, title, author, date, venue, page, kind, publisher, editor)| {
            vec![
                id,
                title,
                author,
                date,
                venue,
                "1".to_owned(),
                String::new(),
                page,
                kind,
                publisher,
                editor,
            ]
        },
    )
}

/// Joins raw cells into a META-CSV document with quoting where needed.
pub fn meta_csv(rows: &[Vec<String>]) -> String {
    let mut w = csv::WriterBuilder::new().from_writer(Vec::new());
    w.write_record([
        "id", "title", "author", "pub_date", "venue", "volume", "issue", "page", "type",
        "publisher", "editor",
    ])
    .unwrap();
    for row in rows {
        w.write_record(row).unwrap();
    }
    String::from_utf8(w.into_inner().unwrap()).unwrap()
}

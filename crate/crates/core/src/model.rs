//! Domain types shared by both schemas, the resource-type vocabulary and the
//! conditional mandatory-field matrix.

use std::cmp::Ordering;
use std::fmt;

use thiserror::Error;

use crate::diagnostic::{Code, Diagnostic, Field, FileKind, Locus};

/// Reasons a value cannot be constructed.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ValueError {
    #[error("identifier scheme must be nonempty without ':' or whitespace: {0:?}")]
    BadScheme(String),
    #[error("identifier value must be nonempty without whitespace: {0:?}")]
    BadIdValue(String),
    #[error("family name must be nonempty and free of ',', brackets and \"; \": {0:?}")]
    BadFamilyName(String),
    #[error("given name must be free of brackets and \"; \": {0:?}")]
    BadGivenName(String),
    #[error("entity name must be nonempty and, without ids, must not end with ']': {0:?}")]
    BadEntityName(String),
    #[error("page bound must be nonempty and trimmed: {0:?}")]
    BadPage(String),
    #[error("year {0} outside 1000..=9999")]
    YearOutOfRange(i32),
    #[error("no such calendar date {0}-{1:?}-{2:?}")]
    NotACalendarDate(i32, Option<u32>, Option<u32>),
    #[error("a day requires a month")]
    DayWithoutMonth,
}

fn is_trimmed(s: &str) -> bool {
    s.trim() == s
}

/// One external identifier, written `scheme:value`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IdentifierToken {
    scheme: String,
    value: String,
}

impl IdentifierToken {
    /// The scheme is stored lowercased.
    pub fn new(scheme: &str, value: &str) -> Result<Self, ValueError> {
        if scheme.is_empty() || scheme.contains(':') || scheme.chars().any(char::is_whitespace) {
            return Err(ValueError::BadScheme(scheme.to_owned()));
        }
        if value.is_empty() || value.chars().any(char::is_whitespace) {
            return Err(ValueError::BadIdValue(value.to_owned()));
        }
        Ok(IdentifierToken {
            scheme: scheme.to_lowercase(),
            value: value.to_owned(),
        })
    }

    pub fn scheme(&self) -> &str {
        &self.scheme
    }

    pub fn value(&self) -> &str {
        &self.value
    }
}

impl fmt::Display for IdentifierToken {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.scheme, self.value)
    }
}

/// An author or editor.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Agent {
    family_name: String,
    given_name: String,
    ids: Vec<IdentifierToken>,
}

impl Agent {
    pub fn new(
        family_name: &str,
        given_name: &str,
        ids: Vec<IdentifierToken>,
    ) -> Result<Self, ValueError> {
        let bracket = |s: &str| s.contains('[') || s.contains(']');
        if family_name.is_empty()
            || !is_trimmed(family_name)
            || family_name.contains(',')
            || family_name.contains("; ")
            || bracket(family_name)
        {
            return Err(ValueError::BadFamilyName(family_name.to_owned()));
        }
        if !is_trimmed(given_name) || given_name.contains("; ") || bracket(given_name) {
            return Err(ValueError::BadGivenName(given_name.to_owned()));
        }
        Ok(Agent {
            family_name: family_name.to_owned(),
            given_name: given_name.to_owned(),
            ids,
        })
    }

    pub fn family_name(&self) -> &str {
        &self.family_name
    }

    pub fn given_name(&self) -> &str {
        &self.given_name
    }

    pub fn ids(&self) -> &[IdentifierToken] {
        &self.ids
    }

    pub(crate) fn ids_mut(&mut self) -> &mut Vec<IdentifierToken> {
        &mut self.ids
    }
}

/// A venue or publisher: a name plus optional identifiers.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct NamedEntity {
    name: String,
    ids: Vec<IdentifierToken>,
}

impl NamedEntity {
    /// Without ids, a name ending in `]` would read back as a bracket group.
    pub fn new(name: &str, ids: Vec<IdentifierToken>) -> Result<Self, ValueError> {
        if name.is_empty() || !is_trimmed(name) || (ids.is_empty() && name.ends_with(']')) {
            return Err(ValueError::BadEntityName(name.to_owned()));
        }
        Ok(NamedEntity {
            name: name.to_owned(),
            ids,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn ids(&self) -> &[IdentifierToken] {
        &self.ids
    }

    pub(crate) fn ids_mut(&mut self) -> &mut Vec<IdentifierToken> {
        &mut self.ids
    }
}

/// A publication date known to year, month or day precision.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PartialDate {
    year: u16,
    month: Option<u8>,
    day: Option<u8>,
}

impl PartialDate {
    pub fn new(year: i32, month: Option<u32>, day: Option<u32>) -> Result<Self, ValueError> {
        if !(1000..=9999).contains(&year) {
            return Err(ValueError::YearOutOfRange(year));
        }
        let calendar = || ValueError::NotACalendarDate(year, month, day);
        match (month, day) {
            (None, Some(_)) => return Err(ValueError::DayWithoutMonth),
            (Some(m), None) if !(1..=12).contains(&m) => return Err(calendar()),
            (Some(m), Some(d)) if chrono::NaiveDate::from_ymd_opt(year, m, d).is_none() => {
                return Err(calendar())
            }
            _ => {}
        }
        Ok(PartialDate {
            year: year as u16,
            month: month.map(|m| m as u8),
            day: day.map(|d| d as u8),
        })
    }

    pub fn year(&self) -> u16 {
        self.year
    }

    pub fn month(&self) -> Option<u8> {
        self.month
    }

    pub fn day(&self) -> Option<u8> {
        self.day
    }

    /// Compares two dates down to the finest precision both of them carry.
    pub fn cmp_shared(&self, other: &PartialDate) -> Ordering {
        self.year
            .cmp(&other.year)
            .then_with(|| match (self.month, other.month) {
                (Some(a), Some(b)) => a.cmp(&b),
                _ => Ordering::Equal,
            })
            .then_with(|| match (self.day, other.day) {
                (Some(a), Some(b)) => a.cmp(&b),
                _ => Ordering::Equal,
            })
    }
}

/// First and last page, split at a hyphen.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PageRange {
    first: String,
    last: String,
}

impl PageRange {
    /// `first` may not contain a hyphen, since the range is split at the first one.
    pub fn new(first: &str, last: &str) -> Result<Self, ValueError> {
        if first.is_empty() || !is_trimmed(first) || first.contains('-') {
            return Err(ValueError::BadPage(first.to_owned()));
        }
        if last.is_empty() || !is_trimmed(last) {
            return Err(ValueError::BadPage(last.to_owned()));
        }
        Ok(PageRange {
            first: first.to_owned(),
            last: last.to_owned(),
        })
    }

    pub fn first(&self) -> &str {
        &self.first
    }

    pub fn last(&self) -> &str {
        &self.last
    }

    /// True when both bounds are decimal numerals and the first exceeds the last.
    pub fn is_descending(&self) -> bool {
        fn numeral(s: &str) -> Option<&str> {
            if s.bytes().all(|b| b.is_ascii_digit()) {
                let t = s.trim_start_matches('0');
                Some(t)
            } else {
                None
            }
        }
        match (numeral(&self.first), numeral(&self.last)) {
            (Some(a), Some(b)) => (a.len(), a) > (b.len(), b),
            _ => false,
        }
    }
}

macro_rules! resource_types {
    ($($variant:ident => $label:literal,)*) => {
        /// The closed vocabulary of bibliographic resource types.
        #[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
        pub enum ResourceType {
            $($variant,)*
        }

        impl ResourceType {
            pub const ALL: [ResourceType; 28] = [$(ResourceType::$variant,)*];

            /// Canonical lowercase label.
            pub fn label(self) -> &'static str {
                match self {
                    $(ResourceType::$variant => $label,)*
                }
            }
        }
    };
}

resource_types! {
    Book => "book",
    BookChapter => "book chapter",
    BookPart => "book part",
    BookSection => "book section",
    BookSeries => "book series",
    BookSet => "book set",
    BookTrack => "book track",
    Component => "component",
    Dataset => "dataset",
    Dissertation => "dissertation",
    EditedBook => "edited book",
    Journal => "journal",
    JournalArticle => "journal article",
    JournalIssue => "journal issue",
    JournalVolume => "journal volume",
    Monograph => "monograph",
    Other => "other",
    PeerReview => "peer review",
    PostedContent => "posted content",
    Proceedings => "proceedings",
    ProceedingsArticle => "proceedings article",
    ProceedingsSeries => "proceedings series",
    ReferenceBook => "reference book",
    ReferenceEntry => "reference entry",
    Report => "report",
    ReportSeries => "report series",
    Standard => "standard",
    StandardSeries => "standard series",
}

const TYPE_ALIASES: &[(&str, ResourceType)] = &[
    ("data file", ResourceType::Dataset),
    ("web content", ResourceType::PostedContent),
];

impl fmt::Display for ResourceType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("unknown resource type {0:?}")]
pub struct UnknownType(pub String);

/// Case-insensitive, with runs of whitespace collapsed to one space.
pub fn parse_resource_type(text: &str) -> Result<ResourceType, UnknownType> {
    let key = text
        .split_whitespace()
        .collect::<Vec<_>>()
        .join(" ")
        .to_lowercase();
    ResourceType::ALL
        .iter()
        .find(|t| t.label() == key)
        .copied()
        .or_else(|| {
            TYPE_ALIASES
                .iter()
                .find(|(alias, _)| *alias == key)
                .map(|&(_, t)| t)
        })
        .ok_or_else(|| UnknownType(text.to_owned()))
}

/// One parsed META-CSV row. Cells that failed to parse are left absent.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct MetadataRecord {
    pub row_index: usize,
    pub id: Vec<IdentifierToken>,
    pub title: Option<String>,
    pub author: Vec<Agent>,
    pub editor: Vec<Agent>,
    pub pub_date: Option<PartialDate>,
    pub venue: Option<NamedEntity>,
    pub volume: Option<String>,
    pub issue: Option<String>,
    pub page: Option<PageRange>,
    pub resource_type: Option<ResourceType>,
    pub publisher: Option<NamedEntity>,
}

impl MetadataRecord {
    /// Whether the given META attribute carries a value.
    pub fn is_populated(&self, field: Field) -> bool {
        match field {
            Field::Id => !self.id.is_empty(),
            Field::Title => self.title.is_some(),
            Field::Author => !self.author.is_empty(),
            Field::Editor => !self.editor.is_empty(),
            Field::PubDate => self.pub_date.is_some(),
            Field::Venue => self.venue.is_some(),
            Field::Volume => self.volume.is_some(),
            Field::Issue => self.issue.is_some(),
            Field::Page => self.page.is_some(),
            Field::Type => self.resource_type.is_some(),
            Field::Publisher => self.publisher.is_some(),
            _ => false,
        }
    }
}

/// One parsed CITS-CSV row.
///
/// `citing_id` and `cited_id` are only empty on rows the reader has already
/// flagged with `MISSING_MANDATORY_ID` (or a malformed id cell).
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct CitationRecord {
    pub row_index: usize,
    pub citing_id: Vec<IdentifierToken>,
    pub citing_publication_date: Option<PartialDate>,
    pub cited_id: Vec<IdentifierToken>,
    pub cited_publication_date: Option<PartialDate>,
}

/// Alternative sets of fields, any one of which satisfies the requirement.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RequirementProfile {
    pub alternatives: &'static [&'static [Field]],
}

use Field::{Author, Editor, Issue, PubDate, Title, Venue, Volume};

const DATED_WORK: RequirementProfile = RequirementProfile {
    alternatives: &[&[Title, PubDate, Author], &[Title, PubDate, Editor]],
};
const CONTAINED_PART: RequirementProfile = RequirementProfile {
    alternatives: &[&[Title, Venue]],
};
const TITLED_CONTAINER: RequirementProfile = RequirementProfile {
    alternatives: &[&[Title]],
};
const VOLUME: RequirementProfile = RequirementProfile {
    alternatives: &[&[Venue, Volume], &[Venue, Title]],
};
const ISSUE: RequirementProfile = RequirementProfile {
    alternatives: &[&[Venue, Issue], &[Venue, Title]],
};

impl RequirementProfile {
    pub fn is_satisfied_by(&self, record: &MetadataRecord) -> bool {
        self.alternatives
            .iter()
            .any(|alt| alt.iter().all(|&f| record.is_populated(f)))
    }

    /// Missing fields of the alternative closest to being satisfied;
    /// ties go to the earlier alternative.
    pub fn closest_missing(&self, record: &MetadataRecord) -> Vec<Field> {
        self.alternatives
            .iter()
            .map(|alt| {
                alt.iter()
                    .copied()
                    .filter(|&f| !record.is_populated(f))
                    .collect::<Vec<_>>()
            })
            .min_by_key(Vec::len)
            .unwrap_or_default()
    }
}

/// Mandatory fields for a record without an identifier, by resource type.
/// An absent type is treated like the dated-work types.
pub fn requirement_profile(resource_type: Option<ResourceType>) -> RequirementProfile {
    use ResourceType::*;
    let Some(t) = resource_type else {
        return DATED_WORK;
    };
    match t {
        Book | Dataset | Dissertation | EditedBook | JournalArticle | Monograph | Other
        | PeerReview | PostedContent | ProceedingsArticle | Report | ReferenceBook => DATED_WORK,
        BookChapter | BookPart | BookSection | BookTrack | Component | ReferenceEntry => {
            CONTAINED_PART
        }
        BookSeries | BookSet | Journal | Proceedings | ProceedingsSeries | ReportSeries
        | Standard | StandardSeries => TITLED_CONTAINER,
        JournalVolume => VOLUME,
        JournalIssue => ISSUE,
    }
}

/// Records with an identifier need nothing else. Otherwise one
/// `MISSING_REQUIRED_FIELD` error per field missing from the closest alternative.
pub fn check_requirements(record: &MetadataRecord) -> Vec<Diagnostic> {
    if !record.id.is_empty() {
        return Vec::new();
    }
    let profile = requirement_profile(record.resource_type);
    if profile.is_satisfied_by(record) {
        return Vec::new();
    }
    let kind = record
        .resource_type
        .map_or("an untyped record".to_owned(), |t| format!("type '{t}'"));
    profile
        .closest_missing(record)
        .into_iter()
        .map(|field| {
            Locus::cell(FileKind::Meta, record.row_index, field).error(
                Code::MissingRequiredField,
                format!("{field} is required for {kind} without an id"),
            )
        })
        .collect()
}

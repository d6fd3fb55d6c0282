//! Validation findings and the frozen catalog of diagnostic codes.

use std::fmt;

use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Severity {
    Error,
    Warning,
}

impl Severity {
    pub fn as_str(self) -> &'static str {
        match self {
            Severity::Error => "ERROR",
            Severity::Warning => "WARNING",
        }
    }
}

impl fmt::Display for Severity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Which of the two tables a finding belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum FileKind {
    Meta,
    Cits,
}

impl FileKind {
    pub fn as_str(self) -> &'static str {
        match self {
            FileKind::Meta => "META",
            FileKind::Cits => "CITS",
        }
    }
}

impl fmt::Display for FileKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Column names of both schemas.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Field {
    Id,
    Title,
    Author,
    PubDate,
    Venue,
    Volume,
    Issue,
    Page,
    Type,
    Publisher,
    Editor,
    CitingId,
    CitingPublicationDate,
    CitedId,
    CitedPublicationDate,
}

impl Field {
    /// META columns in canonical output order.
    pub const META: [Field; 11] = [
        Field::Id,
        Field::Title,
        Field::Author,
        Field::PubDate,
        Field::Venue,
        Field::Volume,
        Field::Issue,
        Field::Page,
        Field::Type,
        Field::Publisher,
        Field::Editor,
    ];

    /// CITS columns in canonical output order.
    pub const CITS: [Field; 4] = [
        Field::CitingId,
        Field::CitingPublicationDate,
        Field::CitedId,
        Field::CitedPublicationDate,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Field::Id => "id",
            Field::Title => "title",
            Field::Author => "author",
            Field::PubDate => "pub_date",
            Field::Venue => "venue",
            Field::Volume => "volume",
            Field::Issue => "issue",
            Field::Page => "page",
            Field::Type => "type",
            Field::Publisher => "publisher",
            Field::Editor => "editor",
            Field::CitingId => "citing_id",
            Field::CitingPublicationDate => "citing_publication_date",
            Field::CitedId => "cited_id",
            Field::CitedPublicationDate => "cited_publication_date",
        }
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

macro_rules! codes {
    ($($variant:ident => $text:literal,)*) => {
        /// Stable diagnostic codes. The string form of each code never changes.
        #[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
        pub enum Code {
            $($variant,)*
        }

        impl Code {
            pub const ALL: &'static [Code] = &[$(Code::$variant,)*];

            pub fn as_str(self) -> &'static str {
                match self {
                    $(Code::$variant => $text,)*
                }
            }
        }
    };
}

codes! {
    // cell grammars
    MalformedId => "MALFORMED_ID",
    EmptyCell => "EMPTY_CELL",
    MultipleSpaces => "MULTIPLE_SPACES",
    NoCommaInName => "NO_COMMA_IN_NAME",
    MalformedAgentIds => "MALFORMED_AGENT_IDS",
    EmptyAgent => "EMPTY_AGENT",
    MalformedEntityIds => "MALFORMED_ENTITY_IDS",
    EmptyName => "EMPTY_NAME",
    MalformedDate => "MALFORMED_DATE",
    InvalidCalendarDate => "INVALID_CALENDAR_DATE",
    NonpaddedDate => "NONPADDED_DATE",
    MalformedPageRange => "MALFORMED_PAGE_RANGE",
    DescendingPageRange => "DESCENDING_PAGE_RANGE",
    UnknownType => "UNKNOWN_TYPE",
    // record rules
    MissingRequiredField => "MISSING_REQUIRED_FIELD",
    MissingMandatoryId => "MISSING_MANDATORY_ID",
    // identifier schemes
    InvalidIdSyntax => "INVALID_ID_SYNTAX",
    ChecksumFailure => "CHECKSUM_FAILURE",
    UnknownScheme => "UNKNOWN_SCHEME",
    // file structure
    NotUtf8 => "NOT_UTF8",
    EmptyFile => "EMPTY_FILE",
    MissingColumn => "MISSING_COLUMN",
    DuplicateColumn => "DUPLICATE_COLUMN",
    UnknownColumn => "UNKNOWN_COLUMN",
    RaggedRow => "RAGGED_ROW",
    // table and cross-file rules
    DuplicateId => "DUPLICATE_ID",
    NonDoiCitation => "NON_DOI_CITATION",
    SelfCitationId => "SELF_CITATION_ID",
    UnresolvedCitation => "UNRESOLVED_CITATION",
    DateMismatch => "DATE_MISMATCH",
    InconsistentCitingDate => "INCONSISTENT_CITING_DATE",
    CitationPrecedesSource => "CITATION_PRECEDES_SOURCE",
    RefuseOnErrors => "REFUSE_ON_ERRORS",
}

impl fmt::Display for Code {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl Serialize for Code {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(self.as_str())
    }
}

/// Where a finding points: a file, and optionally a 1-based data row and a column.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Locus {
    pub file: FileKind,
    pub row: Option<usize>,
    pub field: Option<Field>,
}

impl Locus {
    pub fn file(file: FileKind) -> Self {
        Locus {
            file,
            row: None,
            field: None,
        }
    }

    pub fn cell(file: FileKind, row: usize, field: Field) -> Self {
        Locus {
            file,
            row: Some(row),
            field: Some(field),
        }
    }

    pub fn row(file: FileKind, row: usize) -> Self {
        Locus {
            file,
            row: Some(row),
            field: None,
        }
    }

    pub fn with_field(self, field: Field) -> Self {
        Locus {
            field: Some(field),
            ..self
        }
    }

    pub fn error(self, code: Code, message: impl Into<String>) -> Diagnostic {
        Diagnostic::new(Severity::Error, code, self, message)
    }

    pub fn warning(self, code: Code, message: impl Into<String>) -> Diagnostic {
        Diagnostic::new(Severity::Warning, code, self, message)
    }
}

/// One validation finding.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Diagnostic {
    pub severity: Severity,
    pub code: Code,
    pub file: FileKind,
    pub row: Option<usize>,
    pub field: Option<Field>,
    pub message: String,
    pub suggestion: Option<String>,
}

impl Diagnostic {
    pub fn new(severity: Severity, code: Code, at: Locus, message: impl Into<String>) -> Self {
        Diagnostic {
            severity,
            code,
            file: at.file,
            row: at.row,
            field: at.field,
            message: message.into(),
            suggestion: None,
        }
    }

    pub fn with_suggestion(mut self, suggestion: impl Into<String>) -> Self {
        self.suggestion = Some(suggestion.into());
        self
    }

    pub fn is_error(&self) -> bool {
        self.severity == Severity::Error
    }
}

/// `SEVERITY CODE file:row:field message`, with empty slots for unknown row or field.
impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {} {}:", self.severity, self.code, self.file)?;
        if let Some(row) = self.row {
            write!(f, "{row}")?;
        }
        f.write_str(":")?;
        if let Some(field) = self.field {
            f.write_str(field.as_str())?;
        }
        write!(f, " {}", self.message)?;
        if let Some(suggestion) = &self.suggestion {
            write!(f, " (suggestion: {suggestion})")?;
        }
        Ok(())
    }
}

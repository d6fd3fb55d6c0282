//! Parsing, validation and canonical re-serialization of OpenCitations
//! bibliographic metadata (META-CSV) and citation data (CITS-CSV).
//!
//! ```
//! use oc_csv::{read_cits_table, validate_cits_table, Mode, Profile};
//!
//! let csv = "citing_id,citing_publication_date,cited_id,cited_publication_date\n\
//!            pmid:23636598,2013,pmid:19151427,2005\n";
//! let (table, mut report) = read_cits_table(csv.as_bytes(), Mode::Lenient);
//! report.merge(validate_cits_table(&table, Mode::Lenient, Profile::Croci));
//! assert_eq!(report.error_count(), 1); // NON_DOI_CITATION
//! ```

pub mod cli;
pub mod diagnostic;
pub mod grammar;
pub mod model;
pub mod schemes;
pub mod table;

pub use diagnostic::{Code, Diagnostic, Field, FileKind, Locus, Severity};
pub use grammar::{
    parse_agent_list, parse_bracketed_name, parse_id_list, parse_page_range, parse_partial_date,
    FieldParse, Mode, Render,
};
pub use model::{
    check_requirements, parse_resource_type, requirement_profile, Agent, CitationRecord,
    IdentifierToken, MetadataRecord, NamedEntity, PageRange, PartialDate, RequirementProfile,
    ResourceType,
};
pub use schemes::{checksum, normalize_identifier, validate_identifier, SchemeRegistry, SchemeRule};
pub use table::{
    cross_validate, normalize_tables, read_cits_table, read_meta_table, validate_cits_table,
    validate_meta_table, CitsTable, CrossOptions, MetaTable, NormalizedTables, Profile,
    RefuseOnErrors, ValidationReport,
};

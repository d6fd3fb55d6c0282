//! Cell micro-grammars: raw CSV cell text in, domain values plus diagnostics out,
//! and the canonical rendering that inverts each grammar.
//!
//! Every parser trims the outer whitespace of the cell first. A cell that
//! produced any ERROR yields no value.

use crate::diagnostic::{Code, Diagnostic, Locus, Severity};
use crate::model::{
    parse_resource_type, Agent, IdentifierToken, NamedEntity, PageRange, PartialDate,
    ResourceType, ValueError,
};

/// Whether formatting slips found in real-world submissions are tolerated.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash)]
pub enum Mode {
    #[default]
    Lenient,
    Strict,
}

impl Mode {
    /// Severity of a formatting slip that strict mode refuses.
    fn slip(self) -> Severity {
        match self {
            Mode::Lenient => Severity::Warning,
            Mode::Strict => Severity::Error,
        }
    }
}

/// Outcome of parsing one cell.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FieldParse<T> {
    /// `None` only when `diagnostics` holds at least one ERROR.
    pub value: Option<T>,
    pub diagnostics: Vec<Diagnostic>,
}

impl<T> FieldParse<T> {
    fn finish(value: Option<T>, diagnostics: Vec<Diagnostic>) -> Self {
        let failed = diagnostics.iter().any(Diagnostic::is_error);
        debug_assert!(value.is_some() || failed);
        FieldParse {
            value: if failed { None } else { value },
            diagnostics,
        }
    }

    fn ok(value: T) -> Self {
        FieldParse {
            value: Some(value),
            diagnostics: Vec::new(),
        }
    }

    pub fn has_errors(&self) -> bool {
        self.diagnostics.iter().any(Diagnostic::is_error)
    }
}

/// Splits a trimmed, nonempty id list. Malformed tokens are reported under `malformed`.
fn scan_ids(
    text: &str,
    mode: Mode,
    at: Locus,
    malformed: Code,
    diagnostics: &mut Vec<Diagnostic>,
) -> Option<Vec<IdentifierToken>> {
    let pieces: Vec<&str> = text.split_whitespace().collect();
    if pieces.join(" ") != text {
        diagnostics.push(
            Diagnostic::new(
                mode.slip(),
                Code::MultipleSpaces,
                at,
                "identifiers must be separated by a single space",
            )
            .with_suggestion(pieces.join(" ")),
        );
    }
    let mut tokens = Vec::with_capacity(pieces.len());
    let mut ok = true;
    for piece in pieces {
        let parsed = match piece.split_once(':') {
            Some((scheme, value)) => IdentifierToken::new(scheme, value).ok(),
            None => None,
        };
        match parsed {
            Some(t) => tokens.push(t),
            None => {
                ok = false;
                diagnostics.push(at.error(
                    malformed,
                    format!("'{piece}' is not of the form scheme:value"),
                ));
            }
        }
    }
    ok.then_some(tokens)
}

/// Parses a space-separated list of `scheme:value` identifiers.
///
/// An empty cell is an empty list, or `EMPTY_CELL` when `required`.
pub fn parse_id_list(
    text: &str,
    mode: Mode,
    required: bool,
    at: Locus,
) -> FieldParse<Vec<IdentifierToken>> {
    let text = text.trim();
    if text.is_empty() {
        if required {
            return FieldParse::finish(None, vec![at.error(Code::EmptyCell, "value is required")]);
        }
        return FieldParse::ok(Vec::new());
    }
    let mut diagnostics = Vec::new();
    let tokens = scan_ids(text, mode, at, Code::MalformedId, &mut diagnostics);
    FieldParse::finish(tokens, diagnostics)
}

/// Separates a trailing `[...]` group from the text before it.
enum Bracketed<'a> {
    Plain(&'a str),
    Grouped { name: &'a str, ids: &'a str },
    Unbalanced,
}

fn split_bracket_group(text: &str) -> Bracketed<'_> {
    let Some(body) = text.strip_suffix(']') else {
        return Bracketed::Plain(text);
    };
    match body.rfind('[') {
        Some(open) => Bracketed::Grouped {
            name: body[..open].trim_end(),
            ids: body[open + 1..].trim(),
        },
        None => Bracketed::Unbalanced,
    }
}

fn parse_agent(segment: &str, position: usize, mode: Mode, at: Locus) -> FieldParse<Agent> {
    let mut diagnostics = Vec::new();
    let malformed = |msg: &str| {
        FieldParse::finish(
            None,
            vec![at.error(
                Code::MalformedAgentIds,
                format!("agent {position} ('{segment}'): {msg}"),
            )],
        )
    };
    let (name, ids) = match split_bracket_group(segment) {
        Bracketed::Plain(name) => {
            if name.contains('[') || name.contains(']') {
                return malformed("unbalanced brackets");
            }
            (name, Vec::new())
        }
        Bracketed::Grouped { name, ids } => {
            if name.contains('[') || name.contains(']') || ids.contains(']') {
                return malformed("unbalanced brackets");
            }
            if ids.is_empty() {
                return malformed("empty identifier group");
            }
            match scan_ids(ids, mode, at, Code::MalformedAgentIds, &mut diagnostics) {
                Some(ids) => (name, ids),
                None => return FieldParse::finish(None, diagnostics),
            }
        }
        Bracketed::Unbalanced => return malformed("unbalanced brackets"),
    };
    if name.is_empty() {
        diagnostics.push(at.error(
            Code::EmptyAgent,
            format!("agent {position} has identifiers but no name"),
        ));
        return FieldParse::finish(None, diagnostics);
    }
    let (family, given) = match name.split_once(',') {
        Some((family, given)) => (family.trim(), given.trim()),
        None => (name, ""),
    };
    let agent = match Agent::new(family, given, ids) {
        Ok(agent) => agent,
        Err(ValueError::BadFamilyName(_)) if family.is_empty() => {
            diagnostics.push(at.error(
                Code::EmptyAgent,
                format!("agent {position} ('{segment}') has no family name"),
            ));
            return FieldParse::finish(None, diagnostics);
        }
        Err(e) => {
            diagnostics.push(at.error(Code::EmptyAgent, format!("agent {position}: {e}")));
            return FieldParse::finish(None, diagnostics);
        }
    };
    if !name.contains(',') {
        diagnostics.push(
            at.warning(
                Code::NoCommaInName,
                format!("agent {position} ('{name}') has no comma separating family and given name"),
            )
            .with_suggestion(agent.render()),
        );
    }
    FieldParse::finish(Some(agent), diagnostics)
}

/// Parses `Family, Given [ids]` agents separated by `"; "`.
pub fn parse_agent_list(text: &str, mode: Mode, at: Locus) -> FieldParse<Vec<Agent>> {
    let text = text.trim();
    if text.is_empty() {
        return FieldParse::ok(Vec::new());
    }
    let mut agents = Vec::new();
    let mut diagnostics = Vec::new();
    let mut ok = true;
    for (i, segment) in text.split("; ").enumerate() {
        let segment = segment.trim();
        if segment.is_empty() {
            ok = false;
            diagnostics.push(at.error(
                Code::EmptyAgent,
                format!("agent {} is empty", i + 1),
            ));
            continue;
        }
        let parsed = parse_agent(segment, i + 1, mode, at);
        diagnostics.extend(parsed.diagnostics);
        match parsed.value {
            Some(agent) => agents.push(agent),
            None => ok = false,
        }
    }
    FieldParse::finish(ok.then_some(agents), diagnostics)
}

/// Parses a venue or publisher: `Name [ids]`, or just `Name`.
pub fn parse_bracketed_name(text: &str, mode: Mode, at: Locus) -> FieldParse<Option<NamedEntity>> {
    let text = text.trim();
    if text.is_empty() {
        return FieldParse::ok(None);
    }
    let mut diagnostics = Vec::new();
    let (name, ids) = match split_bracket_group(text) {
        Bracketed::Plain(name) => (name, Vec::new()),
        Bracketed::Grouped { ids: "", .. } => {
            diagnostics.push(at.error(Code::MalformedEntityIds, "empty identifier group"));
            return FieldParse::finish(None, diagnostics);
        }
        Bracketed::Grouped { name, ids } => {
            match scan_ids(ids, mode, at, Code::MalformedEntityIds, &mut diagnostics) {
                Some(ids) => (name, ids),
                None => return FieldParse::finish(None, diagnostics),
            }
        }
        Bracketed::Unbalanced => {
            diagnostics.push(at.error(
                Code::MalformedEntityIds,
                "closing ']' without a matching '['",
            ));
            return FieldParse::finish(None, diagnostics);
        }
    };
    if name.is_empty() {
        diagnostics.push(at.error(Code::EmptyName, "identifiers given without a name"));
        return FieldParse::finish(None, diagnostics);
    }
    match NamedEntity::new(name, ids) {
        Ok(entity) => FieldParse::finish(Some(Some(entity)), diagnostics),
        Err(e) => {
            diagnostics.push(at.error(Code::EmptyName, e.to_string()));
            FieldParse::finish(None, diagnostics)
        }
    }
}

/// Parses `YYYY`, `YYYY-MM` or `YYYY-MM-DD`.
///
/// Single-digit months and days are a NONPADDED_DATE warning in lenient mode
/// and an error in strict mode.
pub fn parse_partial_date(text: &str, mode: Mode, at: Locus) -> FieldParse<Option<PartialDate>> {
    let text = text.trim();
    if text.is_empty() {
        return FieldParse::ok(None);
    }
    let malformed = || {
        FieldParse::finish(
            None,
            vec![at.error(
                Code::MalformedDate,
                format!("'{text}' is not YYYY, YYYY-MM or YYYY-MM-DD"),
            )],
        )
    };
    let parts: Vec<&str> = text.split('-').collect();
    if parts.len() > 3
        || parts
            .iter()
            .any(|p| p.is_empty() || !p.bytes().all(|b| b.is_ascii_digit()))
        || parts[0].len() != 4
        || parts[1..].iter().any(|p| p.len() > 2)
    {
        return malformed();
    }
    // All parts are short digit strings here.
    let num = |i: usize| parts.get(i).map(|p| p.parse::<u32>().unwrap());
    let year = num(0).unwrap() as i32;
    let (month, day) = (num(1), num(2));

    let mut diagnostics = Vec::new();
    let date = match PartialDate::new(year, month, day) {
        Ok(date) => Some(date),
        Err(e) => {
            diagnostics.push(at.error(Code::InvalidCalendarDate, format!("'{text}': {e}")));
            None
        }
    };
    if parts[1..].iter().any(|p| p.len() == 1) {
        let mut d = Diagnostic::new(
            mode.slip(),
            Code::NonpaddedDate,
            at,
            format!("'{text}': month and day must be two digits"),
        );
        if let Some(date) = &date {
            d = d.with_suggestion(date.render());
        }
        diagnostics.push(d);
    }
    FieldParse::finish(Some(date), diagnostics)
}

/// Parses `first-last`, splitting at the first hyphen.
pub fn parse_page_range(text: &str, at: Locus) -> FieldParse<Option<PageRange>> {
    let text = text.trim();
    if text.is_empty() {
        return FieldParse::ok(None);
    }
    let range = text
        .split_once('-')
        .and_then(|(first, last)| PageRange::new(first.trim(), last.trim()).ok());
    let Some(range) = range else {
        return FieldParse::finish(
            None,
            vec![at.error(
                Code::MalformedPageRange,
                format!("'{text}' is not a first-last page range"),
            )],
        );
    };
    let mut diagnostics = Vec::new();
    if range.is_descending() {
        diagnostics.push(at.warning(
            Code::DescendingPageRange,
            format!("first page {} is after last page {}", range.first(), range.last()),
        ));
    }
    FieldParse::finish(Some(Some(range)), diagnostics)
}

pub fn parse_type_cell(text: &str, at: Locus) -> FieldParse<Option<ResourceType>> {
    let text = text.trim();
    if text.is_empty() {
        return FieldParse::ok(None);
    }
    match parse_resource_type(text) {
        Ok(t) => FieldParse::ok(Some(t)),
        Err(e) => FieldParse::finish(None, vec![at.error(Code::UnknownType, e.to_string())]),
    }
}

/// Free text (title, volume, issue): trimmed, empty means absent.
pub fn parse_text(text: &str) -> Option<String> {
    let text = text.trim();
    (!text.is_empty()).then(|| text.to_owned())
}

/// The single canonical textual form of a value.
pub trait Render {
    fn render(&self) -> String;
}

impl Render for IdentifierToken {
    fn render(&self) -> String {
        self.to_string()
    }
}

impl Render for [IdentifierToken] {
    fn render(&self) -> String {
        self.iter()
            .map(ToString::to_string)
            .collect::<Vec<_>>()
            .join(" ")
    }
}

/// `Family, Given [ids]`; the comma stays when the given name is empty.
impl Render for Agent {
    fn render(&self) -> String {
        let mut out = format!("{},", self.family_name());
        if !self.given_name().is_empty() {
            out.push(' ');
            out.push_str(self.given_name());
        }
        if !self.ids().is_empty() {
            out.push_str(" [");
            out.push_str(&self.ids().render());
            out.push(']');
        }
        out
    }
}

impl Render for [Agent] {
    fn render(&self) -> String {
        self.iter().map(Render::render).collect::<Vec<_>>().join("; ")
    }
}

impl Render for NamedEntity {
    fn render(&self) -> String {
        if self.ids().is_empty() {
            self.name().to_owned()
        } else {
            format!("{} [{}]", self.name(), self.ids().render())
        }
    }
}

impl Render for PartialDate {
    fn render(&self) -> String {
        let mut out = format!("{:04}", self.year());
        if let Some(m) = self.month() {
            out.push_str(&format!("-{m:02}"));
        }
        if let Some(d) = self.day() {
            out.push_str(&format!("-{d:02}"));
        }
        out
    }
}

impl Render for PageRange {
    fn render(&self) -> String {
        format!("{}-{}", self.first(), self.last())
    }
}

impl Render for ResourceType {
    fn render(&self) -> String {
        self.label().to_owned()
    }
}

impl Render for String {
    fn render(&self) -> String {
        self.clone()
    }
}

impl<T: Render> Render for Option<T> {
    fn render(&self) -> String {
        self.as_ref().map(Render::render).unwrap_or_default()
    }
}

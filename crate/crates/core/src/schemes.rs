//! Registry of identifier schemes: syntax, check digits and normalization.
//!
//! Validation is purely syntactic. Nothing here resolves identifiers
//! against a live registry.

use std::collections::BTreeMap;
use std::sync::LazyLock;

use regex::Regex;

use crate::diagnostic::{Code, Diagnostic, Locus};
use crate::grammar::Mode;
use crate::model::IdentifierToken;

static DOI_RE: LazyLock<Regex> = LazyLock::new(|| Regex::new(r"^10\.[0-9]+(\.[0-9]+)*/\S+$").unwrap());
static ISSN_RE: LazyLock<Regex> = LazyLock::new(|| Regex::new(r"^[0-9]{4}-[0-9]{3}[0-9Xx]$").unwrap());
static ORCID_RE: LazyLock<Regex> =
    LazyLock::new(|| Regex::new(r"^[0-9]{4}-[0-9]{4}-[0-9]{4}-[0-9]{3}[0-9Xx]$").unwrap());
static DIGITS_RE: LazyLock<Regex> = LazyLock::new(|| Regex::new(r"^[0-9]+$").unwrap());

/// How one scheme is checked and normalized.
#[derive(Debug, Clone, Copy)]
pub struct SchemeRule {
    pub scheme: &'static str,
    pub syntax_check: fn(&str) -> bool,
    pub checksum_check: Option<fn(&str) -> bool>,
    /// Must be idempotent.
    pub normalizer: fn(&str) -> String,
}

fn unchanged(value: &str) -> String {
    value.to_owned()
}

fn upper_check_char(value: &str) -> String {
    match value.strip_suffix('x') {
        Some(head) => format!("{head}X"),
        None => value.to_owned(),
    }
}

fn doi_syntax(value: &str) -> bool {
    DOI_RE.is_match(value)
}

fn issn_syntax(value: &str) -> bool {
    ISSN_RE.is_match(value)
}

fn orcid_syntax(value: &str) -> bool {
    ORCID_RE.is_match(value)
}

fn digits_syntax(value: &str) -> bool {
    DIGITS_RE.is_match(value)
}

fn isbn_significant(value: &str) -> Vec<char> {
    value.chars().filter(|c| *c != '-').collect()
}

/// Digits and hyphens; 10 significant characters (last may be X) or 13 digits.
fn isbn_syntax(value: &str) -> bool {
    if value.starts_with('-') || value.ends_with('-') || value.contains("--") {
        return false;
    }
    if !value.chars().all(|c| c.is_ascii_digit() || c == '-' || c == 'X' || c == 'x') {
        return false;
    }
    let sig = isbn_significant(value);
    let x_ok = |digits: &[char]| digits.iter().all(char::is_ascii_digit);
    match sig.len() {
        10 => x_ok(&sig[..9]) && (sig[9].is_ascii_digit() || sig[9] == 'X' || sig[9] == 'x'),
        13 => x_ok(&sig),
        _ => false,
    }
}

fn digit(c: char) -> Option<u32> {
    c.to_digit(10)
}

/// Weighted mod-11 over 7 digits, weights 8 down to 2; 10 is written X.
pub fn issn_check_char(first_seven: &[u32]) -> char {
    let sum: u32 = first_seven.iter().zip((2..=8).rev()).map(|(d, w)| d * w).sum();
    match (11 - sum % 11) % 11 {
        10 => 'X',
        c => char::from_digit(c, 10).unwrap(),
    }
}

/// ISO 7064 mod 11-2 over 15 digits; 10 is written X.
pub fn orcid_check_char(first_fifteen: &[u32]) -> char {
    let total = first_fifteen.iter().fold(0, |acc, d| (acc + d) * 2);
    match (12 - total % 11) % 11 {
        10 => 'X',
        c => char::from_digit(c, 10).unwrap(),
    }
}

/// ISBN-10: weights 10 down to 2, mod 11; 10 is written X.
pub fn isbn10_check_char(first_nine: &[u32]) -> char {
    let sum: u32 = first_nine.iter().zip((2..=10).rev()).map(|(d, w)| d * w).sum();
    match (11 - sum % 11) % 11 {
        10 => 'X',
        c => char::from_digit(c, 10).unwrap(),
    }
}

/// ISBN-13: alternating weights 1 and 3, mod 10.
pub fn isbn13_check_char(first_twelve: &[u32]) -> char {
    let sum: u32 = first_twelve
        .iter()
        .enumerate()
        .map(|(i, d)| if i % 2 == 0 { *d } else { d * 3 })
        .sum();
    char::from_digit((10 - sum % 10) % 10, 10).unwrap()
}

/// Splits significant characters into leading digits and the check character.
fn body_and_check(chars: &[char]) -> Option<(Vec<u32>, char)> {
    let (check, body) = chars.split_last()?;
    let body = body.iter().map(|&c| digit(c)).collect::<Option<Vec<_>>>()?;
    Some((body, check.to_ascii_uppercase()))
}

fn issn_checksum(value: &str) -> bool {
    let chars: Vec<char> = value.chars().filter(|c| *c != '-').collect();
    match body_and_check(&chars) {
        Some((body, check)) if body.len() == 7 => issn_check_char(&body) == check,
        _ => false,
    }
}

fn orcid_checksum(value: &str) -> bool {
    let chars: Vec<char> = value.chars().filter(|c| *c != '-').collect();
    match body_and_check(&chars) {
        Some((body, check)) if body.len() == 15 => orcid_check_char(&body) == check,
        _ => false,
    }
}

fn isbn_checksum(value: &str) -> bool {
    match body_and_check(&isbn_significant(value)) {
        Some((body, check)) if body.len() == 9 => isbn10_check_char(&body) == check,
        Some((body, check)) if body.len() == 12 => isbn13_check_char(&body) == check,
        _ => false,
    }
}

/// Verifies the standard check character of an ISSN, ISBN or ORCID.
/// Unknown schemes and malformed values never verify.
pub fn checksum(scheme: &str, value: &str) -> bool {
    match scheme {
        "issn" => issn_checksum(value),
        "isbn" => isbn_checksum(value),
        "orcid" => orcid_checksum(value),
        _ => false,
    }
}

const BUILTIN: &[SchemeRule] = &[
    SchemeRule {
        scheme: "doi",
        syntax_check: doi_syntax,
        checksum_check: None,
        normalizer: |v| v.to_lowercase(),
    },
    SchemeRule {
        scheme: "isbn",
        syntax_check: isbn_syntax,
        checksum_check: Some(isbn_checksum),
        normalizer: upper_check_char,
    },
    SchemeRule {
        scheme: "issn",
        syntax_check: issn_syntax,
        checksum_check: Some(issn_checksum),
        normalizer: upper_check_char,
    },
    SchemeRule {
        scheme: "orcid",
        syntax_check: orcid_syntax,
        checksum_check: Some(orcid_checksum),
        normalizer: upper_check_char,
    },
    SchemeRule {
        scheme: "pmid",
        syntax_check: digits_syntax,
        checksum_check: None,
        normalizer: unchanged,
    },
    SchemeRule {
        scheme: "crossref",
        syntax_check: digits_syntax,
        checksum_check: None,
        normalizer: unchanged,
    },
];

/// Known schemes by name. Build one, register extra rules, then share it.
#[derive(Debug, Clone)]
pub struct SchemeRegistry {
    rules: BTreeMap<String, SchemeRule>,
}

impl Default for SchemeRegistry {
    fn default() -> Self {
        SchemeRegistry {
            rules: BUILTIN
                .iter()
                .map(|r| (r.scheme.to_owned(), *r))
                .collect(),
        }
    }
}

static DEFAULT_REGISTRY: LazyLock<SchemeRegistry> = LazyLock::new(SchemeRegistry::default);

impl SchemeRegistry {
    /// The built-in registry: doi, isbn, issn, orcid, pmid, crossref.
    pub fn builtin() -> &'static SchemeRegistry {
        &DEFAULT_REGISTRY
    }

    pub fn register(&mut self, rule: SchemeRule) {
        self.rules.insert(rule.scheme.to_lowercase(), rule);
    }

    pub fn get(&self, scheme: &str) -> Option<&SchemeRule> {
        self.rules.get(&scheme.to_lowercase())
    }

    pub fn schemes(&self) -> impl Iterator<Item = &str> {
        self.rules.keys().map(String::as_str)
    }

    /// Empty when the scheme is known and the value passes syntax and checksum.
    pub fn validate(&self, token: &IdentifierToken, mode: Mode, at: Locus) -> Vec<Diagnostic> {
        let Some(rule) = self.get(token.scheme()) else {
            let message = format!("unknown identifier scheme '{}'", token.scheme());
            return vec![match mode {
                Mode::Lenient => at.warning(Code::UnknownScheme, message),
                Mode::Strict => at.error(Code::UnknownScheme, message),
            }];
        };
        if !(rule.syntax_check)(token.value()) {
            return vec![at.error(
                Code::InvalidIdSyntax,
                format!("'{token}' is not a syntactically valid {} identifier", rule.scheme),
            )];
        }
        match rule.checksum_check {
            Some(check) if !check(token.value()) => vec![at.error(
                Code::ChecksumFailure,
                format!("'{token}' fails its check digit"),
            )],
            _ => Vec::new(),
        }
    }

    pub fn normalize(&self, token: &IdentifierToken) -> IdentifierToken {
        let value = match self.get(token.scheme()) {
            Some(rule) => (rule.normalizer)(token.value()),
            None => token.value().to_owned(),
        };
        IdentifierToken::new(token.scheme(), &value).unwrap_or_else(|_| token.clone())
    }
}

/// Validates against the built-in registry.
pub fn validate_identifier(token: &IdentifierToken, mode: Mode, at: Locus) -> Vec<Diagnostic> {
    SchemeRegistry::builtin().validate(token, mode, at)
}

/// Normalizes against the built-in registry: DOIs lowercased, terminal `x`
/// check characters uppercased, everything else untouched.
pub fn normalize_identifier(token: &IdentifierToken) -> IdentifierToken {
    SchemeRegistry::builtin().normalize(token)
}

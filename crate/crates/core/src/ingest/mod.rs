//! Parsing of CSSCI and Web of Science plain-text exports.
//!
//! Both parsers are pure functions of their input text. Records that cannot be
//! delimited are skipped and reported through [`Diagnostic`]s rather than failing
//! the whole file, so one damaged record never hides the rest of an export.

mod cssci;
mod wos;

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use cssci::parse_cssci;
pub use wos::parse_wos;
pub(crate) use wos::cr_year;

/// Lowest year accepted anywhere in the pipeline.
pub const MIN_YEAR: i32 = 1400;
/// Highest year accepted anywhere in the pipeline.
pub const MAX_YEAR: i32 = 2100;
/// A reference may postdate its citing record by this many years (in-press items).
pub const IN_PRESS_GRACE: i32 = 1;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum IngestError {
    #[error("reference string is empty")]
    EmptyString,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum SourceFormat {
    #[serde(rename = "CSSCI")]
    Cssci,
    #[serde(rename = "WOS")]
    Wos,
}

impl SourceFormat {
    /// Lowercase tag used in directory and output file names.
    pub fn tag(self) -> &'static str {
        match self {
            SourceFormat::Cssci => "cssci",
            SourceFormat::Wos => "wos",
        }
    }
}

impl fmt::Display for SourceFormat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Language {
    Chinese,
    English,
}

impl Language {
    pub fn as_str(self) -> &'static str {
        match self {
            Language::Chinese => "Chinese",
            Language::English => "English",
        }
    }
}

impl fmt::Display for Language {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// One citing publication.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SourceRecord {
    pub record_id: String,
    pub title_native: String,
    pub title_english: Option<String>,
    pub authors: Vec<String>,
    pub journal: String,
    /// Absent when the year field could not be parsed; such records are kept but
    /// left out of per-citing-year statistics.
    pub pub_year: Option<i32>,
    pub keywords: Vec<String>,
    pub references: Vec<CitedReference>,
    pub source_format: SourceFormat,
}

/// One occurrence of a reference in a citing record's bibliography.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CitedReference {
    pub raw_string: String,
    pub ref_year: Option<i32>,
    pub language: Language,
    pub citing_record_id: String,
    /// 1-based position in the citing record's reference list.
    pub ordinal: u32,
}

impl CitedReference {
    /// Builds a reference from its raw text, deriving language and year the way the
    /// parsers do.
    ///
    /// `year_hint` takes precedence over [`extract_year`] when present. Years later than
    /// `citing_year + IN_PRESS_GRACE` are dropped.
    pub fn from_raw(
        raw: String,
        year_hint: Option<i32>,
        citing_year: Option<i32>,
        citing_record_id: &str,
        ordinal: u32,
    ) -> Result<Self, IngestError> {
        let language = classify_language(&raw)?;
        let ref_year = year_hint
            .or_else(|| extract_year(&raw))
            .filter(|&y| citing_year.is_none_or(|c| y <= c + IN_PRESS_GRACE));
        Ok(CitedReference {
            raw_string: raw,
            ref_year,
            language,
            citing_record_id: citing_record_id.to_owned(),
            ordinal,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DiagnosticKind {
    /// The record was skipped.
    MalformedRecord(String),
    /// The record was kept without a publication year.
    MissingYear,
}

/// A parser remark tied to a 1-based input line.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Diagnostic {
    pub line: usize,
    pub kind: DiagnosticKind,
}

impl Diagnostic {
    pub fn is_skip(&self) -> bool {
        matches!(self.kind, DiagnosticKind::MalformedRecord(_))
    }

    /// Formats the diagnostic as a single stderr line, e.g. `SKIP a.txt:12 <reason>`.
    pub fn render(&self, file: &str) -> String {
        match &self.kind {
            DiagnosticKind::MalformedRecord(reason) => {
                format!("SKIP {}:{} {}", file, self.line, reason)
            }
            DiagnosticKind::MissingYear => {
                format!("WARN {}:{} missing publication year", file, self.line)
            }
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ParseOutput {
    pub records: Vec<SourceRecord>,
    pub diagnostics: Vec<Diagnostic>,
}

impl ParseOutput {
    pub fn skipped(&self) -> usize {
        self.diagnostics.iter().filter(|d| d.is_skip()).count()
    }

    pub fn reference_count(&self) -> usize {
        self.records.iter().map(|r| r.references.len()).sum()
    }
}

/// Standalone 4-digit numbers in `[1400, 2100]`, left to right.
///
/// Digit runs longer than four characters never count as years.
fn year_tokens(raw: &str) -> impl Iterator<Item = i32> + '_ {
    let bytes = raw.as_bytes();
    let mut i = 0;
    std::iter::from_fn(move || {
        while i < bytes.len() {
            if !bytes[i].is_ascii_digit() {
                i += 1;
                continue;
            }
            let start = i;
            while i < bytes.len() && bytes[i].is_ascii_digit() {
                i += 1;
            }
            if i - start == 4 {
                let year: i32 = raw[start..i].parse().expect("four ascii digits");
                if (MIN_YEAR..=MAX_YEAR).contains(&year) {
                    return Some(year);
                }
            }
        }
        None
    })
}

/// Returns the last valid year token in `raw`.
pub fn extract_year(raw: &str) -> Option<i32> {
    year_tokens(raw).last()
}

/// First valid year token, used for the CSSCI `年代卷期` field.
pub(crate) fn first_year(raw: &str) -> Option<i32> {
    year_tokens(raw).next()
}

pub(crate) fn is_cjk(c: char) -> bool {
    matches!(c, '\u{4E00}'..='\u{9FFF}' | '\u{3400}'..='\u{4DBF}' | '\u{3000}'..='\u{303F}')
}

/// Chinese iff `raw` contains a CJK ideograph or CJK punctuation codepoint.
pub fn classify_language(raw: &str) -> Result<Language, IngestError> {
    if raw.trim().is_empty() {
        return Err(IngestError::EmptyString);
    }
    Ok(if raw.chars().any(is_cjk) {
        Language::Chinese
    } else {
        Language::English
    })
}

/// Collapses internal whitespace runs to one ASCII space and trims.
pub(crate) fn squash_whitespace(s: &str) -> String {
    s.split_whitespace().collect::<Vec<_>>().join(" ")
}

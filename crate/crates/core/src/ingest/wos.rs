//! Web of Science field-tagged plain text: two-letter tags at line start, indented
//! continuation lines, `ER` closing each record and `EF` closing the file.

use super::{
    squash_whitespace, CitedReference, Diagnostic, DiagnosticKind, ParseOutput,
    SourceFormat, SourceRecord, MAX_YEAR, MIN_YEAR,
};

/// Returns `(tag, value)` for a tagged line, `None` for a continuation line.
fn split_tag(line: &str) -> Option<(&str, &str)> {
    let bytes = line.as_bytes();
    if bytes.len() < 2 {
        return None;
    }
    let tag_ok = bytes[0].is_ascii_uppercase()
        && (bytes[1].is_ascii_uppercase() || bytes[1].is_ascii_digit());
    let sep_ok = bytes.len() == 2 || bytes[2] == b' ';
    if !(tag_ok && sep_ok) {
        return None;
    }
    Some((&line[..2], line.get(3..).unwrap_or("").trim()))
}

/// Year from the second comma-separated segment of a `CR` entry.
pub(crate) fn cr_year(raw: &str) -> Option<i32> {
    let seg = raw.split(',').nth(1)?.trim();
    if seg.len() != 4 || !seg.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    seg.parse().ok().filter(|y| (MIN_YEAR..=MAX_YEAR).contains(y))
}

#[derive(Default)]
struct RawRecord {
    start_line: usize,
    fields: Vec<(String, Vec<String>)>,
}

impl RawRecord {
    fn values<'a>(&'a self, tag: &'a str) -> impl Iterator<Item = &'a str> + 'a {
        self.fields
            .iter()
            .filter(move |(t, _)| t == tag)
            .flat_map(|(_, v)| v.iter().map(String::as_str))
    }

    fn joined(&self, tag: &str) -> String {
        squash_whitespace(&self.values(tag).collect::<Vec<_>>().join(" "))
    }

    fn into_record(self, record_id: String, diagnostics: &mut Vec<Diagnostic>) -> SourceRecord {
        let pub_year = self
            .values("PY")
            .next()
            .and_then(|v| v.trim().parse::<i32>().ok())
            .filter(|y| (MIN_YEAR..=MAX_YEAR).contains(y));
        if pub_year.is_none() {
            diagnostics.push(Diagnostic { line: self.start_line, kind: DiagnosticKind::MissingYear });
        }
        let references = self
            .values("CR")
            .map(|v| v.trim().to_owned())
            .filter(|raw| !raw.is_empty())
            .zip(1u32..)
            .filter_map(|(raw, n)| {
                let hint = cr_year(&raw);
                CitedReference::from_raw(raw, hint, pub_year, &record_id, n).ok()
            })
            .collect();
        let keywords = self
            .joined("DE")
            .split(';')
            .map(str::trim)
            .filter(|k| !k.is_empty())
            .map(str::to_owned)
            .collect();
        let authors = self
            .values("AU")
            .map(str::trim)
            .filter(|a| !a.is_empty())
            .map(str::to_owned)
            .collect();
        SourceRecord {
            title_native: self.joined("TI"),
            title_english: None,
            authors,
            journal: self.joined("SO"),
            pub_year,
            keywords,
            references,
            source_format: SourceFormat::Wos,
            record_id,
        }
    }
}

/// Parses a WoS plain-text export.
///
/// Record ids are `<source>#<n>`. A trailing record without `ER` is skipped with a
/// diagnostic pointing at its first line.
pub fn parse_wos(input: &str, source: &str) -> ParseOutput {
    let input = input.strip_prefix('\u{feff}').unwrap_or(input);
    let mut out = ParseOutput::default();
    let mut current: Option<RawRecord> = None;

    for (idx, line) in input.lines().enumerate() {
        let line_no = idx + 1;
        match split_tag(line) {
            Some(("ER", _)) => {
                let rec = current.take().unwrap_or(RawRecord { start_line: line_no, ..Default::default() });
                let id = format!("{}#{}", source, out.records.len() + 1);
                let record = rec.into_record(id, &mut out.diagnostics);
                out.records.push(record);
            }
            Some(("EF", _)) => break,
            Some(("FN" | "VR", _)) if current.is_none() => {}
            Some((tag, value)) => {
                let rec = current.get_or_insert_with(|| RawRecord { start_line: line_no, ..Default::default() });
                let values = if value.is_empty() { vec![] } else { vec![value.to_owned()] };
                rec.fields.push((tag.to_owned(), values));
            }
            None => {
                let value = line.trim();
                if value.is_empty() {
                    continue;
                }
                if let Some((_, values)) = current.as_mut().and_then(|r| r.fields.last_mut()) {
                    values.push(value.to_owned());
                }
            }
        }
    }
    if let Some(rec) = current {
        out.diagnostics.push(Diagnostic {
            line: rec.start_line,
            kind: DiagnosticKind::MalformedRecord("no ER terminator before end of input".into()),
        });
    }
    out
}

//! CSSCI field-tagged export: one `【标签】 value` field per line, a new record at every
//! `【来源篇名】`, and a numbered reference list after `【参考文献】`.

use std::collections::BTreeMap;

use super::{
    first_year, squash_whitespace, CitedReference, Diagnostic, DiagnosticKind, ParseOutput,
    SourceFormat, SourceRecord,
};

const TITLE: &str = "来源篇名";
const TITLE_EN: &str = "英文篇名";
const AUTHORS: &str = "来源作者";
const JOURNAL: &str = "期刊";
const YEAR_ISSUE: &str = "年代卷期";
const KEYWORDS: &str = "关键词";
const REFERENCES: &str = "参考文献";

/// Splits `【label】 rest` into the whitespace-free label and the trimmed rest.
fn split_label(line: &str) -> Option<(String, &str)> {
    let body = line.trim_start().strip_prefix('【')?;
    let close = body.find('】')?;
    let label: String = body[..close].chars().filter(|c| !c.is_whitespace()).collect();
    Some((label, body[close + '】'.len_utf8()..].trim()))
}

/// `N. text` at the start of a reference-list line.
fn split_numbered(line: &str) -> Option<(u32, &str)> {
    let t = line.trim_start();
    let digits = t.bytes().take_while(u8::is_ascii_digit).count();
    if digits == 0 || digits > 4 {
        return None;
    }
    let rest = t[digits..].strip_prefix('.')?;
    Some((t[..digits].parse().ok()?, rest.trim()))
}

#[derive(Default)]
struct RawRecord {
    start_line: usize,
    fields: BTreeMap<String, String>,
    refs: Vec<(u32, String)>,
}

impl RawRecord {
    fn push_field(&mut self, label: String, value: &str) {
        let slot = self.fields.entry(label).or_default();
        if !slot.is_empty() && !value.is_empty() {
            slot.push(' ');
        }
        slot.push_str(value);
    }

    fn push_reference_line(&mut self, line: &str) {
        let t = line.trim();
        if t.is_empty() {
            return;
        }
        let next = self.refs.last().map_or(1, |(n, _)| n + 1);
        match split_numbered(t) {
            // Numbered entries must continue the sequence; "1993. …" on a wrapped line
            // is text, not entry 1993.
            Some((n, text)) if self.refs.is_empty() || n == next => {
                self.refs.push((n, text.to_owned()));
            }
            _ => match self.refs.last_mut() {
                Some((_, text)) => {
                    if !text.is_empty() {
                        text.push(' ');
                    }
                    text.push_str(t);
                }
                None => self.refs.push((next, t.to_owned())),
            },
        }
    }

    fn field(&self, label: &str) -> &str {
        self.fields.get(label).map_or("", String::as_str)
    }

    fn into_record(self, record_id: String, diagnostics: &mut Vec<Diagnostic>) -> SourceRecord {
        let pub_year = first_year(self.field(YEAR_ISSUE));
        if pub_year.is_none() {
            diagnostics.push(Diagnostic { line: self.start_line, kind: DiagnosticKind::MissingYear });
        }
        let split_list = |s: &str| -> Vec<String> {
            s.split(['/', ';', '；'])
                .map(str::trim)
                .filter(|p| !p.is_empty())
                .map(str::to_owned)
                .collect()
        };
        let references = self
            .refs
            .iter()
            .filter_map(|(n, text)| {
                CitedReference::from_raw(text.trim().to_owned(), None, pub_year, &record_id, *n).ok()
            })
            .collect();
        let title_english = Some(squash_whitespace(self.field(TITLE_EN))).filter(|t| !t.is_empty());
        SourceRecord {
            title_native: squash_whitespace(self.field(TITLE)),
            title_english,
            authors: split_list(self.field(AUTHORS)),
            journal: squash_whitespace(self.field(JOURNAL)),
            pub_year,
            keywords: split_list(self.field(KEYWORDS)),
            references,
            source_format: SourceFormat::Cssci,
            record_id,
        }
    }
}

/// Parses a CSSCI plain-text export.
///
/// `source` names the input (usually the file name) and prefixes every record id as
/// `<source>#<n>`. Non-blank text before the first `【来源篇名】` is reported as one
/// skipped record.
pub fn parse_cssci(input: &str, source: &str) -> ParseOutput {
    let input = input.strip_prefix('\u{feff}').unwrap_or(input);
    let mut out = ParseOutput::default();
    let mut current: Option<RawRecord> = None;
    let mut current_label: Option<String> = None;
    let mut orphan_line: Option<usize> = None;

    let finish = |rec: RawRecord, out: &mut ParseOutput| {
        let id = format!("{}#{}", source, out.records.len() + 1);
        let record = rec.into_record(id, &mut out.diagnostics);
        out.records.push(record);
    };

    for (idx, line) in input.lines().enumerate() {
        let line_no = idx + 1;
        let labelled = split_label(line);
        if let Some((label, _)) = &labelled {
            if label == TITLE {
                if let Some(rec) = current.take() {
                    finish(rec, &mut out);
                }
                current = Some(RawRecord { start_line: line_no, ..Default::default() });
            }
        }
        let Some(rec) = current.as_mut() else {
            if !line.trim().is_empty() && orphan_line.is_none() {
                orphan_line = Some(line_no);
            }
            continue;
        };
        match labelled {
            Some((label, value)) => {
                if label == REFERENCES {
                    rec.push_reference_line(value);
                } else {
                    rec.push_field(label.clone(), value);
                }
                current_label = Some(label);
            }
            None => match current_label.as_deref() {
                Some(REFERENCES) => rec.push_reference_line(line),
                Some(label) => rec.push_field(label.to_owned(), line.trim()),
                None => {}
            },
        }
    }
    if let Some(rec) = current.take() {
        finish(rec, &mut out);
    }
    if let Some(line) = orphan_line {
        out.diagnostics.insert(
            0,
            Diagnostic {
                line,
                kind: DiagnosticKind::MalformedRecord(format!("missing 【{}】 start marker", TITLE)),
            },
        );
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ingest::Language;

    const SAMPLE: &str = include_str!("../../fixtures/1998-1.txt");

    #[test]
    fn sample_record() {
        let out = parse_cssci(SAMPLE, "1998-1.txt");
        assert!(out.diagnostics.is_empty(), "{:?}", out.diagnostics);
        assert_eq!(out.records.len(), 1);
        let rec = &out.records[0];
        assert_eq!(rec.record_id, "1998-1.txt#1");
        assert_eq!(rec.pub_year, Some(1998));
        assert_eq!(rec.journal, "情报理论与实践");
        assert_eq!(rec.title_native, "关于文献老化研究中若干问题的思考");
        assert_eq!(
            rec.title_english.as_deref(),
            Some("Thinking about Some Problems in the Research on Document Obsolescence")
        );
        assert_eq!(rec.authors, vec!["俞培果"]);
        assert_eq!(rec.keywords, vec!["文献老化", "文献计量学", "文献学"]);
        assert_eq!(rec.references.len(), 15);
        let ordinals: Vec<u32> = rec.references.iter().map(|r| r.ordinal).collect();
        assert_eq!(ordinals, (1..=15).collect::<Vec<_>>());
        let english = rec.references.iter().filter(|r| r.language == Language::English).count();
        assert_eq!(english, 5);
        assert!(rec.references[..5].iter().all(|r| r.language == Language::English));
        assert_eq!(rec.references[9].ref_year, Some(1991));
        assert_eq!(rec.references[2].ref_year, Some(1934));
        assert!(rec.references.iter().all(|r| r.citing_record_id == rec.record_id));
    }

    #[test]
    fn empty_input() {
        let out = parse_cssci("", "x");
        assert!(out.records.is_empty());
        assert!(out.diagnostics.is_empty());
    }

    #[test]
    fn two_record_batch() {
        let second = SAMPLE.replace("1998, 21(030):144-146, 131", "2003, 21(1):1-5");
        let batch = format!("{}\n{}", SAMPLE, second);
        let out = parse_cssci(&batch, "batch");
        let years: Vec<_> = out.records.iter().map(|r| r.pub_year).collect();
        assert_eq!(years, vec![Some(1998), Some(2003)]);
        assert_eq!(out.records[1].record_id, "batch#2");
        assert_eq!(out.reference_count(), 30);
    }

    #[test]
    fn wrapped_reference_lines_join_previous_entry() {
        let text = "【来源篇名】 t\n【年代卷期】 2001, 1(2)\n【参考文献】\n1. Smith, J. A long title that\n   wraps onto the next line. Journal, 1999, 3(1)\n2. 王. 题目. 北京: 出版社,\n1993.\n";
        let out = parse_cssci(text, "w");
        let refs = &out.records[0].references;
        assert_eq!(refs.len(), 2);
        assert_eq!(refs[0].raw_string, "Smith, J. A long title that wraps onto the next line. Journal, 1999, 3(1)");
        assert_eq!(refs[1].raw_string, "王. 题目. 北京: 出版社, 1993.");
        assert_eq!(refs[1].ref_year, Some(1993));
        assert_eq!(refs[1].ordinal, 2);
    }

    #[test]
    fn leading_garbage_is_one_skipped_record() {
        let text = format!("【期 刊】 orphan\nmore\n{}", SAMPLE);
        let out = parse_cssci(&text, "g");
        assert_eq!(out.records.len(), 1);
        assert_eq!(out.skipped(), 1);
        assert_eq!(out.diagnostics[0].line, 1);
    }

    #[test]
    fn unparseable_year_keeps_record() {
        let text = "【来源篇名】 t\n【年代卷期】 n.d.\n【参考文献】\n1. A, 1990\n";
        let out = parse_cssci(text, "y");
        assert_eq!(out.records.len(), 1);
        assert_eq!(out.records[0].pub_year, None);
        assert_eq!(out.records[0].references[0].ref_year, Some(1990));
        assert_eq!(out.diagnostics, vec![Diagnostic { line: 1, kind: DiagnosticKind::MissingYear }]);
        assert_eq!(out.skipped(), 0);
    }

    #[test]
    fn crlf_and_bom() {
        let text = format!("\u{feff}{}", SAMPLE.replace('\n', "\r\n"));
        assert_eq!(parse_cssci(&text, "1998-1.txt"), parse_cssci(SAMPLE, "1998-1.txt"));
    }
}

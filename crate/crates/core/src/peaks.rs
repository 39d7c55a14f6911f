//! Candidate peak years and per-year rankings of the most cited works.

use std::sync::LazyLock;

use regex::Regex;
use thiserror::Error;

use crate::dedup::ReferenceCluster;
use crate::ingest::Language;
use crate::spectroscopy::SpectroscopyRow;

/// Default minimum deviation for a peak candidate.
pub const DEFAULT_MIN_DEV: i64 = 5;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PeakError {
    #[error("empty spectrum")]
    EmptyInput,
    #[error("min_dev must be at least 1, got {0}")]
    InvalidMinDev(i64),
}

/// Years whose deviation is at least `min_dev` and a strict local maximum.
///
/// A year must beat its left neighbour strictly and at least match its right
/// neighbour, so on a plateau only the leftmost year is reported.
pub fn find_peaks(rows: &[SpectroscopyRow], min_dev: i64) -> Result<Vec<i32>, PeakError> {
    if rows.is_empty() {
        return Err(PeakError::EmptyInput);
    }
    if min_dev < 1 {
        return Err(PeakError::InvalidMinDev(min_dev));
    }
    Ok(rows
        .iter()
        .enumerate()
        .filter(|&(i, row)| {
            let dev = row.median_dev;
            let left_ok = i == 0 || dev > rows[i - 1].median_dev;
            let right_ok = rows.get(i + 1).is_none_or(|r| dev >= r.median_dev);
            dev >= min_dev && left_ok && right_ok
        })
        .map(|(_, row)| row.rpy)
        .collect())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DocumentKind {
    Journal,
    Book,
    Other,
}

static VOLUME_ISSUE: LazyLock<Regex> = LazyLock::new(|| {
    Regex::new(r"(?i)\d+\s*[(（]\s*\d*\s*[)）]|[(（]\s*\d+\s*[)）]|\bV\d+\b|\bvol\.?\s*\d+|\bno\.\s*\d+|第\s*\d+\s*[卷期]").unwrap()
});

static PUBLISHER: LazyLock<Regex> = LazyLock::new(|| {
    Regex::new(r"(?i)出版社|书局|\bpress\b|\bpublish|\buniv\b|\buniversity\b|[\p{Han}A-Za-z]+\s*[:：]\s*[\p{Han}A-Za-z]").unwrap()
});

/// Volume/issue markers mean a journal article, a publisher segment a book.
pub fn classify_document(raw: &str) -> DocumentKind {
    if VOLUME_ISSUE.is_match(raw) {
        DocumentKind::Journal
    } else if PUBLISHER.is_match(raw) {
        DocumentKind::Book
    } else {
        DocumentKind::Other
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ReportEntry {
    pub canonical: String,
    pub count: u64,
    /// Share of the year's citations, in percent.
    pub percentage: f64,
    pub language: Language,
    pub document_kind: DocumentKind,
}

#[derive(Debug, Clone, PartialEq)]
pub struct PeakReport {
    pub rpy: i32,
    pub year_total: u64,
    pub entries: Vec<ReportEntry>,
}

/// Ranks the clusters dated `rpy` by count (ties: canonical ascending), keeping `top_k`.
pub fn year_report(clusters: &[ReferenceCluster], rpy: i32, top_k: usize) -> PeakReport {
    let mut year: Vec<&ReferenceCluster> = clusters.iter().filter(|c| c.rpy == Some(rpy)).collect();
    let year_total: u64 = year.iter().map(|c| c.count as u64).sum();
    year.sort_by(|a, b| b.count.cmp(&a.count).then_with(|| a.canonical.cmp(&b.canonical)));
    let entries = year
        .into_iter()
        .take(top_k)
        .map(|c| ReportEntry {
            canonical: c.canonical.clone(),
            count: c.count as u64,
            percentage: 100.0 * c.count as f64 / year_total as f64,
            language: c.language,
            document_kind: classify_document(&c.canonical),
        })
        .collect();
    PeakReport { rpy, year_total, entries }
}

//! Per-year citation counts, 5-year median deviations and corpus statistics.

use std::collections::BTreeMap;

use num_rational::Ratio;
use thiserror::Error;

use crate::dedup::ReferenceCluster;
use crate::ingest::{Language, SourceRecord};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SpectroscopyError {
    #[error("range start {0} is after range end {1}")]
    InvertedRange(i32, i32),
    #[error("empty input")]
    EmptyInput,
    #[error("rows are not contiguous in year at {0}")]
    NonContiguous(i32),
}

/// One reference publication year of the spectrum.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SpectroscopyRow {
    pub rpy: i32,
    pub count: u64,
    /// `count` minus the median count of the surrounding 5-year window.
    pub median_dev: i64,
}

/// Counts for a year range plus the occurrences that could not be placed in it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RpySeries {
    pub rows: Vec<SpectroscopyRow>,
    /// Occurrences in clusters without a publication year.
    pub no_year: u64,
    /// Occurrences in clusters dated outside the range.
    pub out_of_range: u64,
}

/// Sums cluster counts per RPY over `start..=end`, materialising empty years as 0.
pub fn rpy_counts(clusters: &[ReferenceCluster], (start, end): (i32, i32)) -> Result<RpySeries, SpectroscopyError> {
    if start > end {
        return Err(SpectroscopyError::InvertedRange(start, end));
    }
    let mut rows: Vec<SpectroscopyRow> =
        (start..=end).map(|rpy| SpectroscopyRow { rpy, count: 0, median_dev: 0 }).collect();
    let (mut no_year, mut out_of_range) = (0, 0);
    for c in clusters {
        let n = c.count as u64;
        match c.rpy {
            None => no_year += n,
            Some(y) if y < start || y > end => out_of_range += n,
            Some(y) => rows[(y - start) as usize].count += n,
        }
    }
    Ok(RpySeries { rows, no_year, out_of_range })
}

/// Fills `median_dev` for contiguous rows.
///
/// Windows are truncated at the ends of the series (sizes 3, 4, 5, …, 5, 4, 3); an
/// even-sized window takes its lower middle element as the median.
pub fn median_deviation(rows: &[SpectroscopyRow]) -> Result<Vec<SpectroscopyRow>, SpectroscopyError> {
    if rows.is_empty() {
        return Err(SpectroscopyError::EmptyInput);
    }
    if let Some(w) = rows.windows(2).find(|w| w[1].rpy != w[0].rpy + 1) {
        return Err(SpectroscopyError::NonContiguous(w[1].rpy));
    }
    let counts: Vec<u64> = rows.iter().map(|r| r.count).collect();
    Ok(rows
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let lo = i.saturating_sub(2);
            let hi = (i + 3).min(counts.len());
            let mut window = [0u64; 5];
            let window = &mut window[..hi - lo];
            window.copy_from_slice(&counts[lo..hi]);
            let mid = (window.len() - 1) / 2;
            let median = *window.select_nth_unstable(mid).1;
            SpectroscopyRow { median_dev: row.count as i64 - median as i64, ..*row }
        })
        .collect())
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct CitingYearStats {
    pub refs_chinese: u64,
    pub refs_english: u64,
    pub n_papers: u64,
}

/// Language make-up of the citations to one RPY.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct LanguageShare {
    pub chinese: u64,
    pub english: u64,
}

impl LanguageShare {
    pub fn total(&self) -> u64 {
        self.chinese + self.english
    }

    pub fn fraction_chinese(&self) -> f64 {
        self.chinese as f64 / self.total() as f64
    }

    pub fn fraction_english(&self) -> f64 {
        self.english as f64 / self.total() as f64
    }

    fn add(&mut self, language: Language) {
        match language {
            Language::Chinese => self.chinese += 1,
            Language::English => self.english += 1,
        }
    }
}

/// Corpus-level descriptive statistics.
#[derive(Debug, Clone, PartialEq)]
pub struct CorpusStats {
    pub n_publications: u64,
    pub n_references_total: u64,
    pub n_references_chinese: u64,
    pub n_references_english: u64,
    pub avg_refs_per_paper: Ratio<u64>,
    pub pub_year_range: Option<(i32, i32)>,
    pub rpy_range: Option<(i32, i32)>,
    pub per_citing_year: BTreeMap<i32, CitingYearStats>,
    pub per_rpy_language: BTreeMap<i32, LanguageShare>,
}

fn widen(range: Option<(i32, i32)>, y: i32) -> Option<(i32, i32)> {
    Some(range.map_or((y, y), |(lo, hi)| (lo.min(y), hi.max(y))))
}

pub fn corpus_stats(records: &[SourceRecord], clusters: &[ReferenceCluster]) -> Result<CorpusStats, SpectroscopyError> {
    if records.is_empty() {
        return Err(SpectroscopyError::EmptyInput);
    }
    let mut chinese = 0u64;
    let mut english = 0u64;
    let mut pub_year_range = None;
    let mut per_citing_year: BTreeMap<i32, CitingYearStats> = BTreeMap::new();
    for rec in records {
        let zh = rec.references.iter().filter(|r| r.language == Language::Chinese).count() as u64;
        let en = rec.references.len() as u64 - zh;
        chinese += zh;
        english += en;
        if let Some(y) = rec.pub_year {
            pub_year_range = widen(pub_year_range, y);
            let slot = per_citing_year.entry(y).or_default();
            slot.refs_chinese += zh;
            slot.refs_english += en;
            slot.n_papers += 1;
        }
    }

    let mut rpy_range = None;
    let mut per_rpy_language: BTreeMap<i32, LanguageShare> = BTreeMap::new();
    for c in clusters {
        let Some(y) = c.rpy else { continue };
        rpy_range = widen(rpy_range, y);
        let share = per_rpy_language.entry(y).or_default();
        for m in &c.members {
            share.add(m.language);
        }
    }

    let n_publications = records.len() as u64;
    let total = chinese + english;
    Ok(CorpusStats {
        n_publications,
        n_references_total: total,
        n_references_chinese: chinese,
        n_references_english: english,
        avg_refs_per_paper: Ratio::new(total, n_publications),
        pub_year_range,
        rpy_range,
        per_citing_year,
        per_rpy_language,
    })
}

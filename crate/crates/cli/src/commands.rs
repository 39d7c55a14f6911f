use std::fmt;
use std::fs;
use std::path::{Path, PathBuf};

use rootcite::peaks::year_report;
use rootcite::spectroscopy::{corpus_stats, median_deviation, rpy_counts, CorpusStats};
use rootcite::{
    cluster, find_peaks, parse_cssci, parse_wos, DedupConfig, ParseOutput, Parallelism, SourceFormat, SourceRecord,
    SpectroscopyError, SpectroscopyRow,
};

use crate::error::CliError;
use crate::layout::ProjectLayout;
use crate::{output, store, svg};

pub const DEFAULT_TOP_K: usize = 10;

/// Creates (or re-validates) the project skeleton at `root`.
pub fn cmd_create(root: &Path) -> Result<ProjectLayout, CliError> {
    ProjectLayout::create(root)
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct IngestSummary {
    pub records: usize,
    pub refs: usize,
    pub skipped: usize,
    /// Records new to the store.
    pub appended: usize,
    /// `SKIP …` and `WARN …` lines, in file then line order.
    pub diagnostics: Vec<String>,
}

impl fmt::Display for IngestSummary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "records={} refs={} skipped={}", self.records, self.refs, self.skipped)
    }
}

/// Regular, non-hidden files of `dir`, sorted by name.
fn input_files(dir: &Path) -> Result<Vec<PathBuf>, CliError> {
    let entries = fs::read_dir(dir).map_err(|e| CliError::io(dir, e))?;
    let mut files = vec![];
    for entry in entries {
        let entry = entry.map_err(|e| CliError::io(dir, e))?;
        let hidden = entry.file_name().to_string_lossy().starts_with('.');
        if !hidden && entry.path().is_file() {
            files.push(entry.path());
        }
    }
    files.sort();
    Ok(files)
}

fn parse_file(path: &Path, label: &str, format: SourceFormat) -> Result<ParseOutput, CliError> {
    let bytes = fs::read(path).map_err(|e| CliError::io(path, e))?;
    let text = String::from_utf8(bytes).map_err(|_| CliError::InvalidUtf8(path.to_owned()))?;
    Ok(match format {
        SourceFormat::Cssci => parse_cssci(&text, label),
        SourceFormat::Wos => parse_wos(&text, label),
    })
}

/// Parses every file under `data_<format>/` and appends unseen records to the store.
///
/// Record ids are `data_<format>/<file>#<n>`, so ingesting the same files again adds
/// nothing.
pub fn cmd_ingest(layout: &ProjectLayout, format: SourceFormat, parallelism: Parallelism) -> Result<IngestSummary, CliError> {
    let dir = layout.data_dir(format);
    let files = input_files(&dir)?;
    if files.is_empty() {
        return Err(CliError::NoInputFiles(dir));
    }
    let prefix = format!("data_{}", format.tag());
    let labelled: Vec<(PathBuf, String)> = files
        .into_iter()
        .map(|p| {
            let label = format!("{}/{}", prefix, p.file_name().unwrap_or_default().to_string_lossy());
            (p, label)
        })
        .collect();
    let parsed = parallelism.map(&labelled, |(path, label)| parse_file(path, label, format));

    let mut summary = IngestSummary::default();
    let mut records: Vec<SourceRecord> = vec![];
    for ((_, label), out) in labelled.iter().zip(parsed) {
        let out = out?;
        summary.records += out.records.len();
        summary.refs += out.reference_count();
        summary.skipped += out.skipped();
        summary.diagnostics.extend(out.diagnostics.iter().map(|d| d.render(label)));
        records.extend(out.records);
    }
    summary.appended = store::append(&layout.store_path(), &records)?;
    Ok(summary)
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunOptions {
    pub dedup: DedupConfig,
    pub from: Option<i32>,
    pub to: Option<i32>,
    pub min_dev: i64,
    pub top_k: usize,
}

impl Default for RunOptions {
    fn default() -> Self {
        RunOptions {
            dedup: DedupConfig::default(),
            from: None,
            to: None,
            min_dev: rootcite::peaks::DEFAULT_MIN_DEV,
            top_k: DEFAULT_TOP_K,
        }
    }
}

/// Outcome of one source format's analysis.
#[derive(Debug, Clone, PartialEq)]
pub struct RunReport {
    pub source: SourceFormat,
    pub stats: CorpusStats,
    pub clusters: usize,
    pub range: (i32, i32),
    pub no_year: u64,
    pub out_of_range: u64,
    pub spectrum: Vec<SpectroscopyRow>,
    pub peaks: Vec<i32>,
    pub files: Vec<PathBuf>,
}

impl fmt::Display for RunReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tag = self.source.tag();
        let s = &self.stats;
        let avg = *s.avg_refs_per_paper.numer() as f64 / *s.avg_refs_per_paper.denom() as f64;
        writeln!(
            f,
            "{tag}: records={} refs={} chinese={} english={} avg_refs={avg:.2}",
            s.n_publications, s.n_references_total, s.n_references_chinese, s.n_references_english
        )?;
        writeln!(
            f,
            "{tag}: clusters={} range={}-{} no_year={} out_of_range={}",
            self.clusters, self.range.0, self.range.1, self.no_year, self.out_of_range
        )?;
        let peaks: Vec<String> = self.peaks.iter().map(i32::to_string).collect();
        write!(f, "{tag}: peaks={}", peaks.join(","))
    }
}

/// Year range of the spectrum: the explicit bounds, else earliest RPY to latest citing year.
fn resolve_range(
    records: &[SourceRecord],
    stats: &CorpusStats,
    options: &RunOptions,
    source: SourceFormat,
) -> Result<(i32, i32), CliError> {
    let no_dates = || CliError::NoDatedReferences(source.tag().to_owned());
    let start = match options.from {
        Some(y) => y,
        None => stats.rpy_range.ok_or_else(no_dates)?.0,
    };
    let end = match options.to {
        Some(y) => y,
        None => {
            let latest_citing = records.iter().filter_map(|r| r.pub_year).max();
            let latest = latest_citing.or(stats.rpy_range.map(|r| r.1)).ok_or_else(no_dates)?;
            latest.max(start)
        }
    };
    if start > end {
        return Err(SpectroscopyError::InvertedRange(start, end).into());
    }
    Ok((start, end))
}

fn run_source(
    layout: &ProjectLayout,
    source: SourceFormat,
    records: &[SourceRecord],
    options: &RunOptions,
) -> Result<RunReport, CliError> {
    let refs: Vec<_> = records.iter().flat_map(|r| r.references.iter().cloned()).collect();
    let clusters = cluster(&refs, &options.dedup)?;
    let stats = corpus_stats(records, &clusters)?;
    let range = resolve_range(records, &stats, options, source)?;
    let series = rpy_counts(&clusters, range)?;
    let spectrum = median_deviation(&series.rows)?;
    let peaks = find_peaks(&spectrum, options.min_dev)?;
    let reports: Vec<_> = spectrum
        .iter()
        .filter(|r| r.count > 0)
        .map(|r| year_report(&clusters, r.rpy, options.top_k))
        .collect();

    let out = layout.out_dir();
    let tag = source.tag();
    let files = vec![out.join(format!("median_{tag}.csv")), out.join(format!("result_{tag}.csv")), out.join(format!("spectrum_{tag}.svg"))];
    let contents = [
        output::median_csv(&spectrum).into_bytes(),
        output::result_csv(&reports)?,
        svg::render_spectrum(&spectrum, &format!("Reference publication year spectrum ({})", source)).into_bytes(),
    ];
    for (path, bytes) in files.iter().zip(contents) {
        fs::write(path, bytes).map_err(|e| CliError::io(path, e))?;
    }
    Ok(RunReport {
        source,
        stats,
        clusters: clusters.len(),
        range,
        no_year: series.no_year,
        out_of_range: series.out_of_range,
        spectrum,
        peaks,
        files,
    })
}

/// Analyses each source format present in the store and writes its files under `out/`.
///
/// Reads the store only; it is never modified here.
pub fn cmd_run(layout: &ProjectLayout, options: &RunOptions) -> Result<Vec<RunReport>, CliError> {
    let records = store::load(&layout.store_path())?;
    if records.is_empty() {
        return Err(CliError::EmptyStore);
    }
    [SourceFormat::Cssci, SourceFormat::Wos]
        .into_iter()
        .filter_map(|source| {
            let subset: Vec<SourceRecord> = records.iter().filter(|r| r.source_format == source).cloned().collect();
            (!subset.is_empty()).then(|| run_source(layout, source, &subset, options))
        })
        .collect()
}

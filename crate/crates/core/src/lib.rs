//! Reference publication year spectroscopy (RPYS) over CSSCI and Web of Science exports.
//!
//! The pipeline has four stages, each in its own module:
//!
//! 1. [`ingest`] parses plain-text exports into [`SourceRecord`]s carrying their
//!    [`CitedReference`] occurrences.
//! 2. [`dedup`] clusters variant spellings of the same cited work into
//!    [`ReferenceCluster`]s (MinHash + LSH by default, with exact Jaccard and
//!    Levenshtein modes for comparison).
//! 3. [`spectroscopy`] counts citations per reference publication year and computes the
//!    deviation of each year from its 5-year median.
//! 4. [`peaks`] flags candidate peak years and ranks the most cited works of a year.
//!
//! Data-parallel stages honour a [`Parallelism`] setting; the rayon path is only
//! compiled with the default `parallel` feature.

pub mod dedup;
pub mod exec;
pub mod ingest;
pub mod peaks;
pub mod spectroscopy;
pub mod synth;

pub use dedup::{cluster, ClusterId, DedupConfig, DedupError, DedupMode, ReferenceCluster};
pub use exec::Parallelism;
pub use ingest::{
    classify_language, extract_year, parse_cssci, parse_wos, CitedReference, Diagnostic,
    DiagnosticKind, IngestError, Language, ParseOutput, SourceFormat, SourceRecord,
};
pub use peaks::{find_peaks, year_report, DocumentKind, PeakError, PeakReport, ReportEntry};
pub use spectroscopy::{
    corpus_stats, median_deviation, rpy_counts, CorpusStats, RpySeries, SpectroscopyError,
    SpectroscopyRow,
};

//! CSV writers for the spectrum and the per-year top cited works.

use std::fmt::Write;

use rootcite::{PeakReport, SpectroscopyRow};

use crate::error::CliError;

/// `rpy,count,median_dev`, one row per year. All fields are numeric, so nothing is quoted.
pub fn median_csv(rows: &[SpectroscopyRow]) -> String {
    let mut s = String::from("rpy,count,median_dev\n");
    for r in rows {
        writeln!(s, "{},{},{}", r.rpy, r.count, r.median_dev).unwrap();
    }
    s
}

/// `rpy,canonical,count,percentage,language`, reports in the given order.
pub fn result_csv(reports: &[PeakReport]) -> Result<Vec<u8>, CliError> {
    let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(vec![]);
    w.write_record(["rpy", "canonical", "count", "percentage", "language"])?;
    for report in reports {
        for e in &report.entries {
            w.write_record([
                report.rpy.to_string(),
                e.canonical.clone(),
                e.count.to_string(),
                format!("{:.1}", e.percentage),
                e.language.to_string(),
            ])?;
        }
    }
    Ok(w.into_inner().expect("in-memory writer"))
}

//! Newline-delimited JSON record store, one `SourceRecord` per line.

use std::collections::HashSet;
use std::fs::{self, OpenOptions};
use std::io::{self, Write};
use std::path::Path;

use rootcite::SourceRecord;

use crate::error::CliError;

/// Reads every record; a missing store is empty.
pub fn load(path: &Path) -> Result<Vec<SourceRecord>, CliError> {
    let text = match fs::read_to_string(path) {
        Ok(t) => t,
        Err(e) if e.kind() == io::ErrorKind::NotFound => return Ok(vec![]),
        Err(e) => return Err(CliError::io(path, e)),
    };
    text.lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty())
        .map(|(i, l)| {
            serde_json::from_str(l).map_err(|source| CliError::Store { path: path.to_owned(), line: i + 1, source })
        })
        .collect()
}

/// Appends the records whose ids are not yet stored; returns how many were written.
pub fn append(path: &Path, records: &[SourceRecord]) -> Result<usize, CliError> {
    let mut known: HashSet<String> = load(path)?.into_iter().map(|r| r.record_id).collect();
    let mut buf = String::new();
    let mut written = 0;
    for r in records {
        if known.insert(r.record_id.clone()) {
            buf.push_str(&serde_json::to_string(r).expect("records serialize"));
            buf.push('\n');
            written += 1;
        }
    }
    if written > 0 {
        let mut f = OpenOptions::new().create(true).append(true).open(path).map_err(|e| CliError::io(path, e))?;
        f.write_all(buf.as_bytes()).map_err(|e| CliError::io(path, e))?;
    }
    Ok(written)
}

use std::collections::BTreeSet;

use super::DedupError;
use crate::ingest::CitedReference;

/// Shingle width in characters.
pub const SHINGLE_LEN: usize = 3;

/// A reference string reduced to the form used for similarity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NormalizedRef<'a> {
    pub norm_string: String,
    pub shingles: BTreeSet<String>,
    pub source: &'a CitedReference,
}

/// Maps fullwidth ASCII variants (U+FF01..U+FF5E) and the ideographic space to ASCII.
fn halfwidth(c: char) -> char {
    match c {
        '\u{FF01}'..='\u{FF5E}' => char::from_u32(c as u32 - 0xFEE0).unwrap_or(c),
        '\u{3000}' => ' ',
        _ => c,
    }
}

/// Lowercases Latin, folds fullwidth forms, turns every punctuation run into a single
/// space and trims. CJK ideographs pass through untouched.
pub fn normalize_text(raw: &str) -> String {
    let mut out = String::with_capacity(raw.len());
    let mut pending_space = false;
    for c in raw.chars().map(halfwidth) {
        if c.is_alphanumeric() {
            if pending_space && !out.is_empty() {
                out.push(' ');
            }
            pending_space = false;
            out.extend(c.to_lowercase());
        } else {
            pending_space = true;
        }
    }
    out
}

/// All contiguous character 3-grams; shorter strings are their own single shingle.
pub fn shingles(norm: &str) -> BTreeSet<String> {
    let chars: Vec<char> = norm.chars().collect();
    if chars.len() < SHINGLE_LEN {
        return BTreeSet::from([norm.to_owned()]);
    }
    chars.windows(SHINGLE_LEN).map(|w| w.iter().collect()).collect()
}

pub fn normalize(reference: &CitedReference) -> Result<NormalizedRef<'_>, DedupError> {
    if reference.raw_string.trim().is_empty() {
        return Err(DedupError::EmptyString);
    }
    let norm_string = normalize_text(&reference.raw_string);
    let shingles = shingles(&norm_string);
    Ok(NormalizedRef { norm_string, shingles, source: reference })
}

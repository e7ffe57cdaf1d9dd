//! Standard-format detection from the font-size distribution.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::doc_model::{FontSize, SpanDocument};
use crate::lexicon::HeadingLexicon;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DetectError {
    #[error("document carries no font metadata")]
    MissingMetadata,
}

#[derive(Debug, Clone, PartialEq)]
pub struct FontHistogram {
    pub buckets: BTreeMap<FontSize, usize>,
    pub first_occurrence: BTreeMap<FontSize, usize>,
    pub distinct_sizes_desc: Vec<f64>,
}

impl FontHistogram {
    pub fn count(&self, size: f64) -> usize {
        self.buckets.get(&FontSize(size)).copied().unwrap_or(0)
    }

    pub fn first_index(&self, size: f64) -> Option<usize> {
        self.first_occurrence.get(&FontSize(size)).copied()
    }
}

pub fn build_histogram(doc: &SpanDocument) -> Result<FontHistogram, DetectError> {
    if !doc.metadata_present {
        return Err(DetectError::MissingMetadata);
    }
    let mut buckets: BTreeMap<FontSize, usize> = BTreeMap::new();
    let mut first_occurrence = BTreeMap::new();
    for (i, span) in doc.spans.iter().enumerate() {
        let Some(size) = span.font_size else { continue };
        *buckets.entry(FontSize(size)).or_default() += 1;
        first_occurrence.entry(FontSize(size)).or_insert(i);
    }
    let distinct_sizes_desc = buckets.keys().rev().map(|s| s.0).collect();
    Ok(FontHistogram { buckets, first_occurrence, distinct_sizes_desc })
}

/// Thresholds for the standard-format signature.
#[derive(Debug, Clone, PartialEq)]
pub struct FormatSignature {
    pub min_heading_repeats: usize,
    pub max_heading_repeats: usize,
    pub min_heading_hits: usize,
    pub lexicon: HeadingLexicon,
}

impl Default for FormatSignature {
    fn default() -> Self {
        FormatSignature {
            min_heading_repeats: 3,
            max_heading_repeats: 15,
            min_heading_hits: 3,
            lexicon: HeadingLexicon::default(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum DocumentFormat {
    LinkedInFormat,
    Generic,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FormatVerdict {
    pub format: DocumentFormat,
    pub confidence_notes: Vec<String>,
}

impl FormatVerdict {
    pub fn is_linkedin(&self) -> bool {
        self.format == DocumentFormat::LinkedInFormat
    }
}

/// Conjunction of five rules; the first failing rule decides `Generic`,
/// and every evaluated rule is recorded in the notes.
pub fn detect_format(doc: &SpanDocument, sig: &FormatSignature) -> FormatVerdict {
    let mut notes = Vec::new();
    let verdict = |notes: Vec<String>, ok: bool| FormatVerdict {
        format: if ok { DocumentFormat::LinkedInFormat } else { DocumentFormat::Generic },
        confidence_notes: notes,
    };

    let hist = match build_histogram(doc) {
        Ok(h) => {
            notes.push("a: metadata present: pass".to_string());
            h
        }
        Err(_) => {
            notes.push("a: metadata present: fail".to_string());
            return verdict(notes, false);
        }
    };

    let distinct = hist.distinct_sizes_desc.len();
    let b = distinct >= 3;
    notes.push(format!("b: {distinct} distinct sizes (need >= 3): {}", pass(b)));
    if !b {
        return verdict(notes, false);
    }

    let largest = hist.distinct_sizes_desc[0];
    let c = hist.count(largest) == 1 && hist.first_index(largest) == Some(0);
    notes.push(format!(
        "c: largest size {largest} occurs {} time(s), first at span {:?}: {}",
        hist.count(largest),
        hist.first_index(largest),
        pass(c)
    ));
    if !c {
        return verdict(notes, false);
    }

    let heading = hist.distinct_sizes_desc[1];
    let repeats = hist.count(heading);
    let d = (sig.min_heading_repeats..=sig.max_heading_repeats).contains(&repeats);
    notes.push(format!(
        "d: heading size {heading} occurs {repeats} time(s) (need {}..={}): {}",
        sig.min_heading_repeats,
        sig.max_heading_repeats,
        pass(d)
    ));
    if !d {
        return verdict(notes, false);
    }

    let hits = doc
        .spans
        .iter()
        .filter(|s| s.font_size.map(FontSize) == Some(FontSize(heading)))
        .filter(|s| sig.lexicon.lookup(&s.text).is_some())
        .count();
    let e = hits >= sig.min_heading_hits;
    notes.push(format!("e: {hits} heading(s) in lexicon (need >= {}): {}", sig.min_heading_hits, pass(e)));
    verdict(notes, e)
}

fn pass(ok: bool) -> &'static str {
    if ok {
        "pass"
    } else {
        "fail"
    }
}

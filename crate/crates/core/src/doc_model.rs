//! Positioned-text document model and span-to-line assembly.
//!
//! Coordinates use a top-left origin with y growing downward. Units are
//! whatever the upstream converter emitted; nothing here normalizes scale
//! across documents.

use std::cmp::Ordering;
use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

/// Fallback tolerance used on pages with fewer than three spans.
pub const FALLBACK_Y_TOLERANCE: f64 = 2.0;

/// One positioned run of text.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TextSpan {
    pub text: String,
    pub page: u32,
    pub x: f64,
    pub y: f64,
    pub width: f64,
    pub height: f64,
    pub font_size: Option<f64>,
    pub font_id: Option<String>,
    pub bold: bool,
    pub italic: bool,
}

impl TextSpan {
    /// A span without font metadata, mostly useful for tests and the
    /// plain-text adapter.
    pub fn plain(text: impl Into<String>, page: u32, x: f64, y: f64, width: f64, height: f64) -> Self {
        TextSpan {
            text: text.into(),
            page,
            x,
            y,
            width,
            height,
            font_size: None,
            font_id: None,
            bold: false,
            italic: false,
        }
    }

    pub fn right(&self) -> f64 {
        self.x + self.width
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PageInfo {
    pub number: u32,
    pub width: f64,
    pub height: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FontSpec {
    pub size: f64,
    pub family: String,
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct SpanDocument {
    pub source_name: String,
    pub pages: Vec<PageInfo>,
    pub spans: Vec<TextSpan>,
    pub metadata_present: bool,
    pub font_table: BTreeMap<String, FontSpec>,
}

impl SpanDocument {
    pub fn page(&self, number: u32) -> Option<&PageInfo> {
        self.pages.iter().find(|p| p.number == number)
    }

    /// Copy of this document with every trace of font metadata removed.
    pub fn without_metadata(&self) -> SpanDocument {
        let mut doc = self.clone();
        for span in &mut doc.spans {
            span.font_size = None;
            span.font_id = None;
        }
        doc.font_table.clear();
        doc.metadata_present = false;
        doc
    }

    /// Modal font size over all spans carrying one. Ties resolve to the
    /// smaller size.
    pub fn body_font_size(&self) -> Option<f64> {
        let mut counts: BTreeMap<FontSize, usize> = BTreeMap::new();
        for size in self.spans.iter().filter_map(|s| s.font_size) {
            *counts.entry(FontSize(size)).or_default() += 1;
        }
        counts.into_iter().max_by(|a, b| a.1.cmp(&b.1).then(b.0.cmp(&a.0))).map(|(size, _)| size.0)
    }

    /// Checks the structural invariants every adapter must uphold.
    pub fn validate(&self) -> Result<(), String> {
        for (i, span) in self.spans.iter().enumerate() {
            if span.width < 0.0 || span.height < 0.0 {
                return Err(format!("span {i} has negative extent"));
            }
            if span.page < 1 || self.page(span.page).is_none() {
                return Err(format!("span {i} references unknown page {}", span.page));
            }
            if let Some(id) = &span.font_id {
                if !self.font_table.contains_key(id) {
                    return Err(format!("span {i} references unknown font {id}"));
                }
            }
            if span.font_size.is_none() == self.metadata_present {
                return Err(format!("span {i} disagrees with metadata_present"));
            }
        }
        Ok(())
    }
}

/// Totally ordered wrapper for font sizes so they can key maps.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct FontSize(pub f64);

impl Eq for FontSize {}

impl PartialOrd for FontSize {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for FontSize {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.total_cmp(&other.0)
    }
}

/// Spans sharing a page and (approximately) a vertical position.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Line {
    pub spans: Vec<TextSpan>,
    pub page: u32,
    pub baseline_y: f64,
    pub text: String,
}

impl Line {
    pub fn from_spans(mut spans: Vec<TextSpan>) -> Line {
        assert!(!spans.is_empty(), "a line needs at least one span");
        // stable: equal x keeps emission order
        spans.sort_by(|a, b| a.x.total_cmp(&b.x));
        let page = spans[0].page;
        let baseline_y = spans.iter().map(|s| s.y).fold(f64::INFINITY, f64::min);
        let text = spans.iter().map(|s| s.text.as_str()).collect::<Vec<_>>().join(" ");
        Line { spans, page, baseline_y, text }
    }

    pub fn left(&self) -> f64 {
        self.spans.first().map(|s| s.x).unwrap_or(0.0)
    }

    /// Largest font size on the line, if metadata is present.
    pub fn font_size(&self) -> Option<f64> {
        self.spans.iter().filter_map(|s| s.font_size).reduce(f64::max)
    }

    pub fn is_bold(&self) -> bool {
        self.spans.iter().all(|s| s.bold)
    }

    pub fn height(&self) -> f64 {
        self.spans.iter().map(|s| s.height).fold(0.0, f64::max)
    }
}

/// Default tolerance for one page: half the median span height, or
/// [`FALLBACK_Y_TOLERANCE`] when no span has a positive height.
pub fn default_y_tolerance(spans: &[&TextSpan]) -> f64 {
    if spans.is_empty() {
        return FALLBACK_Y_TOLERANCE;
    }
    let mut heights: Vec<f64> = spans.iter().map(|s| s.height).collect();
    let tol = 0.5 * median(&mut heights);
    if tol > 0.0 {
        tol
    } else {
        FALLBACK_Y_TOLERANCE
    }
}

/// Groups spans into lines using a fixed vertical tolerance.
///
/// Two spans on one page share a line iff they are connected through a chain
/// of spans whose pairwise |dy| is within `y_tolerance`.
pub fn assemble_lines(doc: &SpanDocument, y_tolerance: f64) -> Vec<Line> {
    assemble_spans(doc.spans.iter().collect(), |_| y_tolerance)
}

/// Same as [`assemble_lines`] with a per-page tolerance from
/// [`default_y_tolerance`].
pub fn assemble_lines_auto(doc: &SpanDocument) -> Vec<Line> {
    assemble_spans(doc.spans.iter().collect(), default_y_tolerance)
}

pub(crate) fn assemble_spans<F>(spans: Vec<&TextSpan>, tolerance_for: F) -> Vec<Line>
where
    F: Fn(&[&TextSpan]) -> f64,
{
    let mut by_page: BTreeMap<u32, Vec<&TextSpan>> = BTreeMap::new();
    for span in spans {
        by_page.entry(span.page).or_default().push(span);
    }

    let mut lines = Vec::new();
    for (_, mut page_spans) in by_page {
        let tol = tolerance_for(&page_spans);
        page_spans.sort_by(|a, b| a.y.total_cmp(&b.y));
        // Single linkage on sorted y is the transitive closure of |dy| <= tol.
        let mut current: Vec<TextSpan> = Vec::new();
        let mut last_y = f64::NEG_INFINITY;
        for span in page_spans {
            if !current.is_empty() && span.y - last_y > tol {
                lines.push(Line::from_spans(std::mem::take(&mut current)));
            }
            last_y = span.y;
            current.push(span.clone());
        }
        if !current.is_empty() {
            lines.push(Line::from_spans(current));
        }
    }
    sort_lines(&mut lines);
    lines
}

pub(crate) fn sort_lines(lines: &mut [Line]) {
    lines.sort_by(|a, b| {
        a.page.cmp(&b.page).then(a.baseline_y.total_cmp(&b.baseline_y)).then(a.left().total_cmp(&b.left()))
    });
}

pub(crate) fn median(values: &mut [f64]) -> f64 {
    if values.is_empty() {
        return 0.0;
    }
    values.sort_by(f64::total_cmp);
    let n = values.len();
    if n % 2 == 1 {
        values[n / 2]
    } else {
        0.5 * (values[n / 2 - 1] + values[n / 2])
    }
}

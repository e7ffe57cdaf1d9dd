//! Reading-order recovery and heading segmentation for free-form resumes.
//!
//! Column boundaries are found from horizontal gaps: word gaps on a line are
//! many and small, column gaps are few and wide. Once lines are in logical
//! order, headings are scored from a handful of surface features and used to
//! partition the text.

use serde::{Deserialize, Serialize};

use crate::doc_model::{
    assemble_lines_auto, assemble_spans, default_y_tolerance, median, Line, SpanDocument, TextSpan,
};
use crate::lexicon::is_generic_heading_keyword;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct ReflowConfig {
    pub median_multiplier: f64,
    pub mad_multiplier: f64,
    /// Below this many gaps the threshold is infinite.
    pub min_gaps: usize,
    /// Share of multi-span lines that must agree on a column split.
    pub column_line_fraction: f64,
    /// Split positions agree when within this fraction of the page width.
    pub column_position_tolerance: f64,
    pub max_columns: usize,
    pub heading_score_threshold: u32,
}

impl Default for ReflowConfig {
    fn default() -> Self {
        ReflowConfig {
            median_multiplier: 3.0,
            mad_multiplier: 4.0,
            min_gaps: 8,
            column_line_fraction: 0.30,
            column_position_tolerance: 0.05,
            max_columns: 3,
            heading_score_threshold: 2,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct GapStats {
    pub intra_word_gaps: Vec<f64>,
    pub candidate_column_gaps: Vec<f64>,
    pub threshold: f64,
}

fn line_gaps(line: &Line) -> impl Iterator<Item = (f64, &TextSpan)> + '_ {
    line.spans.windows(2).map(|w| ((w[1].x - w[0].right()).max(0.0), &w[1]))
}

/// Threshold separating word gaps from column gaps.
pub fn compute_gap_threshold(lines: &[Line], cfg: &ReflowConfig) -> GapStats {
    let gaps: Vec<f64> = lines.iter().flat_map(|l| line_gaps(l).map(|(g, _)| g)).collect();
    threshold_for(gaps, cfg)
}

pub(crate) fn threshold_for(gaps: Vec<f64>, cfg: &ReflowConfig) -> GapStats {
    let mut threshold = f64::INFINITY;
    if gaps.len() >= cfg.min_gaps {
        let mut sorted = gaps.clone();
        let med = median(&mut sorted);
        let mut deviations: Vec<f64> = gaps.iter().map(|g| (g - med).abs()).collect();
        let mad = median(&mut deviations);
        let t = (cfg.median_multiplier * med).max(med + cfg.mad_multiplier * mad);
        if t > 0.0 {
            threshold = t;
        }
    }
    let (candidate_column_gaps, intra_word_gaps) = gaps.into_iter().partition(|g| *g > threshold);
    GapStats { intra_word_gaps, candidate_column_gaps, threshold }
}

/// Lines of `doc` in logical reading order.
pub fn reflow(doc: &SpanDocument, cfg: &ReflowConfig) -> Vec<Line> {
    let lines = assemble_lines_auto(doc);
    let mut out = Vec::with_capacity(lines.len());

    let mut start = 0;
    while start < lines.len() {
        let page = lines[start].page;
        let end = start + lines[start..].iter().take_while(|l| l.page == page).count();
        let page_lines = &lines[start..end];
        let page_width =
            doc.page(page).map(|p| p.width).filter(|w| *w > 0.0).unwrap_or_else(|| {
                page_lines.iter().flat_map(|l| l.spans.iter().map(TextSpan::right)).fold(0.0, f64::max)
            });
        // per-page statistics: one page's columns must not move another's threshold
        let stats = compute_gap_threshold(page_lines, cfg);
        let splits = column_splits(page_lines, stats.threshold, page_width, cfg);
        if splits.is_empty() {
            out.extend(page_lines.iter().cloned());
        } else {
            let page_spans: Vec<&TextSpan> = page_lines.iter().flat_map(|l| l.spans.iter()).collect();
            let tol = default_y_tolerance(&page_spans);
            let mut columns: Vec<Vec<&TextSpan>> = vec![Vec::new(); splits.len() + 1];
            for span in page_spans {
                let col = splits.iter().filter(|s| span.x >= **s).count();
                columns[col].push(span);
            }
            for col in columns {
                out.extend(assemble_spans(col, |_| tol));
            }
        }
        start = end;
    }
    out
}

/// Left edges of the columns after the first, or empty for a one-column page.
fn column_splits(lines: &[Line], threshold: f64, page_width: f64, cfg: &ReflowConfig) -> Vec<f64> {
    let multi: Vec<&Line> = lines.iter().filter(|l| l.spans.len() >= 2).collect();
    if multi.is_empty() || !threshold.is_finite() {
        return Vec::new();
    }
    // per line: x where the span after each wide gap starts
    let positions: Vec<Vec<f64>> =
        multi.iter().map(|l| line_gaps(l).filter(|(g, _)| *g > threshold).map(|(_, s)| s.x).collect()).collect();
    let tol = cfg.column_position_tolerance * page_width;
    let needed = cfg.column_line_fraction * multi.len() as f64;
    let mut splits: Vec<f64> = Vec::new();

    while splits.len() + 1 < cfg.max_columns {
        let free = |q: &f64| splits.iter().all(|s| (q - s).abs() > tol);
        let mut best: Option<(usize, f64)> = None;
        for p in positions.iter().flatten().copied().filter(|q| free(q)) {
            let support = positions.iter().filter(|ps| ps.iter().any(|q| free(q) && (q - p).abs() <= tol)).count();
            let better = match best {
                None => true,
                Some((s, bp)) => support > s || (support == s && p < bp),
            };
            if better {
                best = Some((support, p));
            }
        }
        let Some((support, p)) = best else { break };
        if (support as f64) < needed {
            break;
        }
        let boundary = positions
            .iter()
            .flatten()
            .copied()
            .filter(|q| free(q) && (q - p).abs() <= tol)
            .fold(f64::INFINITY, f64::min);
        splits.push(boundary);
    }
    splits.sort_by(f64::total_cmp);
    splits
}

/// A headed block of logically ordered text.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Segment {
    pub heading_text: Option<String>,
    pub body: String,
    pub order_index: usize,
    pub source_page_range: (u32, u32),
}

impl Segment {
    pub fn new(heading_text: Option<String>, body: impl Into<String>) -> Self {
        Segment { heading_text, body: body.into(), order_index: 0, source_page_range: (1, 1) }
    }

    /// Body lines with blank paragraph separators removed.
    pub fn body_lines(&self) -> impl Iterator<Item = &str> {
        self.body.lines().map(str::trim).filter(|l| !l.is_empty())
    }
}

fn is_all_caps(text: &str) -> bool {
    let letters: Vec<char> = text.chars().filter(|c| c.is_alphabetic()).collect();
    if letters.is_empty() {
        return false;
    }
    let upper = letters.iter().filter(|c| c.is_uppercase()).count();
    upper as f64 / letters.len() as f64 >= 0.8
}

fn is_title_case(text: &str) -> bool {
    let words: Vec<&str> = text.split_whitespace().filter(|w| w.chars().any(char::is_alphabetic)).collect();
    if words.is_empty() {
        return false;
    }
    let capitalized = words.iter().all(|w| w.chars().find(|c| c.is_alphabetic()).is_some_and(char::is_uppercase));
    let terminal = text.trim_end().ends_with(['.', ',', ';', '!', '?']);
    capitalized && !terminal
}

/// Number of heading indicators a line fires (0..=4).
pub fn heading_score(line: &Line, body_size: Option<f64>, metadata_present: bool) -> u32 {
    let text = line.text.trim();
    let short = text.split_whitespace().count() <= 4;
    let cased = is_all_caps(text) || is_title_case(text);
    let larger = metadata_present && matches!((line.font_size(), body_size), (Some(s), Some(b)) if s > b);
    let styled = larger || line.is_bold();
    let keyword = is_generic_heading_keyword(text);
    [short, cased, styled, keyword].into_iter().filter(|f| *f).count() as u32
}

/// Indices of heading lines. The first and last lines never head a segment,
/// and among adjacent candidates the strongest (earliest on ties) wins so
/// that every heading is followed by body text.
pub fn select_headings(scores: &[u32], threshold: u32) -> Vec<usize> {
    let n = scores.len();
    let candidate = |i: usize| i > 0 && i + 1 < n && scores[i] >= threshold;
    let mut chosen = Vec::new();
    let mut i = 0;
    while i < n {
        if !candidate(i) {
            i += 1;
            continue;
        }
        let start = i;
        while i < n && candidate(i) {
            i += 1;
        }
        pick_in_run(start, i, scores, &mut chosen);
    }
    chosen.sort_unstable();
    chosen
}

fn pick_in_run(start: usize, end: usize, scores: &[u32], chosen: &mut Vec<usize>) {
    if start >= end {
        return;
    }
    let mut best = start;
    for i in start..end {
        if scores[i] > scores[best] {
            best = i;
        }
    }
    chosen.push(best);
    if best > start + 1 {
        pick_in_run(start, best - 1, scores, chosen);
    }
    pick_in_run(best + 2, end, scores, chosen);
}

fn join_body(lines: &[&Line], pitch: f64) -> String {
    let mut out = String::new();
    for (i, line) in lines.iter().enumerate() {
        if i > 0 {
            let prev = lines[i - 1];
            out.push('\n');
            let dy = line.baseline_y - prev.baseline_y;
            if line.page == prev.page && pitch > 0.0 && dy > 1.5 * pitch {
                out.push('\n');
            }
        }
        out.push_str(&line.text);
    }
    out
}

/// Typical vertical distance between consecutive lines.
pub(crate) fn line_pitch(lines: &[Line]) -> f64 {
    let mut dys: Vec<f64> = lines
        .windows(2)
        .filter(|w| w[0].page == w[1].page)
        .map(|w| w[1].baseline_y - w[0].baseline_y)
        .filter(|d| *d > 0.0)
        .collect();
    median(&mut dys)
}

/// Partitions logically ordered lines into segments at heading lines.
pub fn segment(lines: &[Line], doc: &SpanDocument, cfg: &ReflowConfig) -> Vec<Segment> {
    if lines.is_empty() {
        return Vec::new();
    }
    let body_size = doc.body_font_size();
    let scores: Vec<u32> = lines.iter().map(|l| heading_score(l, body_size, doc.metadata_present)).collect();
    let headings = select_headings(&scores, cfg.heading_score_threshold);
    let pitch = line_pitch(lines);

    let mut bounds: Vec<usize> = Vec::new();
    if headings.first() != Some(&0) {
        bounds.push(0);
    }
    bounds.extend(&headings);
    bounds.push(lines.len());

    let mut segments = Vec::new();
    for (k, w) in bounds.windows(2).enumerate() {
        let (from, to) = (w[0], w[1]);
        let headed = headings.binary_search(&from).is_ok();
        let body_from = if headed { from + 1 } else { from };
        let body: Vec<&Line> = lines[body_from..to].iter().collect();
        let pages = lines[from..to].iter().map(|l| l.page);
        let first = pages.clone().min().unwrap_or(1);
        let last = pages.max().unwrap_or(first);
        segments.push(Segment {
            heading_text: headed.then(|| lines[from].text.clone()),
            body: join_body(&body, pitch),
            order_index: k,
            source_page_range: (first, last),
        });
    }
    segments
}

//! Segment labelling: maps free-form resume segments onto the standard
//! section labels, and assembles a [`ParsedResume`] from a free-form
//! document.
//!
//! The bundled classifier is a nearest-centroid model over tf-idf vectors.
//! Anything implementing [`SegmentClassifier`] can replace it, including the
//! remote model client in [`crate::scoring`].

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::sync::OnceLock;

use regex::Regex;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::doc_model::SpanDocument;
use crate::generic_reflow::{reflow, segment, ReflowConfig, Segment};
use crate::linkedin_parser::{is_phone, parse_entry_header};
use crate::resume::{ParsedResume, ResumeSection, SectionLabel};
use crate::text::{self, smoothed_idf, tokenize};

/// Heading tokens are repeated this many times in the feature text.
pub const DEFAULT_HEADING_WEIGHT: usize = 3;

const MODEL_MAGIC: &str = "resumekit-centroid-model";
const MODEL_VERSION: u32 = 1;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ClassifyError {
    #[error("training corpus covers {0} label(s); at least 2 are required")]
    InsufficientCorpus(usize),
    #[error("training sample {0} has an empty body")]
    EmptySample(usize),
    #[error("model format: {0}")]
    ModelFormat(String),
    #[error("classifier unavailable: {0}")]
    Unavailable(String),
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ConvertError {
    #[error("structure error: {0}")]
    StructureError(String),
    #[error(transparent)]
    Classifier(#[from] ClassifyError),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LabeledSegment {
    pub segment: Segment,
    pub label: SectionLabel,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Classification {
    pub label: SectionLabel,
    pub confidence: f64,
}

pub trait SegmentClassifier: Send + Sync {
    fn classify_segment(&self, seg: &Segment) -> Result<Classification, ClassifyError>;
}

/// Tokens of body plus heading, the heading repeated `heading_weight` times.
pub fn feature_tokens(seg: &Segment, heading_weight: usize) -> Vec<String> {
    let mut tokens = tokenize(&seg.body);
    if let Some(h) = &seg.heading_text {
        let head = tokenize(h);
        for _ in 0..heading_weight {
            tokens.extend(head.iter().cloned());
        }
    }
    tokens
}

/// Nearest-centroid classifier over tf-idf vectors.
#[derive(Debug, Clone, PartialEq)]
pub struct CentroidModel {
    pub vocabulary: BTreeMap<String, usize>,
    pub idf: Vec<f64>,
    /// Unit-norm sparse centroid per label, sorted by token index.
    pub centroids: BTreeMap<SectionLabel, Vec<(usize, f64)>>,
    pub trained_on: BTreeMap<SectionLabel, usize>,
    pub heading_weight: usize,
}

impl CentroidModel {
    pub fn fit(corpus: &[LabeledSegment]) -> Result<Self, ClassifyError> {
        Self::fit_weighted(corpus, DEFAULT_HEADING_WEIGHT)
    }

    pub fn fit_weighted(corpus: &[LabeledSegment], heading_weight: usize) -> Result<Self, ClassifyError> {
        if let Some(i) = corpus.iter().position(|s| s.segment.body.trim().is_empty()) {
            return Err(ClassifyError::EmptySample(i));
        }
        let labels: std::collections::BTreeSet<SectionLabel> = corpus.iter().map(|s| s.label).collect();
        if labels.len() < 2 {
            return Err(ClassifyError::InsufficientCorpus(labels.len()));
        }

        let docs: Vec<Vec<String>> = corpus.iter().map(|s| feature_tokens(&s.segment, heading_weight)).collect();
        let (n, df) = text::document_frequencies(docs.iter().map(Vec::as_slice));
        let vocabulary: BTreeMap<String, usize> = df.keys().enumerate().map(|(i, t)| (t.clone(), i)).collect();
        let idf: Vec<f64> = df.values().map(|d| smoothed_idf(n, *d)).collect();

        let mut sums: BTreeMap<SectionLabel, Vec<f64>> = BTreeMap::new();
        let mut trained_on: BTreeMap<SectionLabel, usize> = BTreeMap::new();
        for (sample, tokens) in corpus.iter().zip(&docs) {
            let sum = sums.entry(sample.label).or_insert_with(|| vec![0.0; vocabulary.len()]);
            for (token, count) in text::term_counts(tokens) {
                let i = vocabulary[token];
                sum[i] += count * idf[i];
            }
            *trained_on.entry(sample.label).or_default() += 1;
        }
        // the mean's 1/k factor vanishes under normalization
        let centroids = sums
            .into_iter()
            .map(|(label, sum)| {
                let norm = sum.iter().map(|w| w * w).sum::<f64>().sqrt();
                let sparse = sum
                    .into_iter()
                    .enumerate()
                    .filter(|(_, w)| *w != 0.0)
                    .map(|(i, w)| (i, if norm > 0.0 { w / norm } else { 0.0 }))
                    .collect();
                (label, sparse)
            })
            .collect();

        Ok(CentroidModel { vocabulary, idf, centroids, trained_on, heading_weight })
    }

    fn vectorize(&self, seg: &Segment) -> BTreeMap<usize, f64> {
        let tokens = feature_tokens(seg, self.heading_weight);
        let mut v = BTreeMap::new();
        for (token, count) in text::term_counts(&tokens) {
            if let Some(&i) = self.vocabulary.get(token) {
                v.insert(i, count * self.idf[i]);
            }
        }
        v
    }

    /// Cosine of the segment against every centroid, in label order.
    pub fn similarities(&self, seg: &Segment) -> Vec<(SectionLabel, f64)> {
        let v = self.vectorize(seg);
        let norm = v.values().map(|w| w * w).sum::<f64>().sqrt();
        self.centroids
            .iter()
            .map(|(label, c)| {
                let cos = if norm == 0.0 {
                    0.0
                } else {
                    c.iter().filter_map(|(i, w)| v.get(i).map(|x| x * w)).sum::<f64>() / norm
                };
                (*label, cos)
            })
            .collect()
    }

    /// Best label and its cosine clamped to [0, 1]. Segments sharing no
    /// vocabulary with any centroid are `(Other, 0.0)`.
    pub fn classify(&self, seg: &Segment) -> Classification {
        let mut best = Classification { label: SectionLabel::Other, confidence: 0.0 };
        for (label, cos) in self.similarities(seg) {
            if cos > best.confidence {
                best = Classification { label, confidence: cos };
            }
        }
        best.confidence = best.confidence.clamp(0.0, 1.0);
        best
    }

    /// Same model with every idf weight multiplied by `factor`.
    pub fn with_idf_scaled(&self, factor: f64) -> Self {
        let mut m = self.clone();
        for w in &mut m.idf {
            *w *= factor;
        }
        m
    }

    /// Diffable text serialization.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "{MODEL_MAGIC} {MODEL_VERSION}");
        let _ = writeln!(out, "heading_weight {}", self.heading_weight);
        let _ = writeln!(out, "stopwords {}", text::STOPWORDS_VERSION);
        let _ = writeln!(out, "vocab {}", self.vocabulary.len());
        let mut by_index: Vec<(&String, usize)> = self.vocabulary.iter().map(|(t, i)| (t, *i)).collect();
        by_index.sort_by_key(|(_, i)| *i);
        for (token, i) in by_index {
            let _ = writeln!(out, "{token}\t{}", self.idf[i]);
        }
        for (label, centroid) in &self.centroids {
            let trained = self.trained_on.get(label).copied().unwrap_or(0);
            let _ = writeln!(out, "label {label} {trained} {}", centroid.len());
            let cells: Vec<String> = centroid.iter().map(|(i, w)| format!("{i}:{w}")).collect();
            let _ = writeln!(out, "{}", cells.join(" "));
        }
        out.push_str("end\n");
        out
    }

    pub fn from_text(s: &str) -> Result<Self, ClassifyError> {
        let bad = |what: &str| ClassifyError::ModelFormat(what.to_string());
        let mut lines = s.lines();
        let mut next = |what: &str| lines.next().ok_or_else(|| bad(&format!("truncated before {what}")));

        let header = next("header")?;
        if header != format!("{MODEL_MAGIC} {MODEL_VERSION}") {
            return Err(bad("unknown header"));
        }
        let field = |line: &str, key: &str| -> Result<usize, ClassifyError> {
            line.strip_prefix(key)
                .and_then(|v| v.trim().parse().ok())
                .ok_or_else(|| bad(&format!("expected `{key} <n>`")))
        };
        let heading_weight = field(next("heading_weight")?, "heading_weight")?;
        let stopwords = field(next("stopwords")?, "stopwords")?;
        if stopwords != text::STOPWORDS_VERSION as usize {
            return Err(bad("stopword list version mismatch"));
        }
        let n_vocab = field(next("vocab")?, "vocab")?;
        let mut vocabulary = BTreeMap::new();
        let mut idf = Vec::with_capacity(n_vocab);
        for i in 0..n_vocab {
            let line = next("vocabulary entry")?;
            let (token, w) = line.split_once('\t').ok_or_else(|| bad("vocabulary line"))?;
            vocabulary.insert(token.to_string(), i);
            idf.push(w.parse::<f64>().map_err(|_| bad("idf value"))?);
        }
        let mut centroids = BTreeMap::new();
        let mut trained_on = BTreeMap::new();
        loop {
            let line = next("end")?;
            if line == "end" {
                break;
            }
            let parts: Vec<&str> = line.split(' ').collect();
            if parts.len() != 4 || parts[0] != "label" {
                return Err(bad("label line"));
            }
            let label: SectionLabel = parts[1].parse().map_err(|_| bad("label name"))?;
            let trained: usize = parts[2].parse().map_err(|_| bad("label count"))?;
            let nnz: usize = parts[3].parse().map_err(|_| bad("label nnz"))?;
            let cells = next("centroid")?;
            let mut centroid = Vec::with_capacity(nnz);
            for cell in cells.split(' ').filter(|c| !c.is_empty()) {
                let (i, w) = cell.split_once(':').ok_or_else(|| bad("centroid cell"))?;
                let i: usize = i.parse().map_err(|_| bad("centroid index"))?;
                if i >= n_vocab {
                    return Err(bad("centroid index out of range"));
                }
                centroid.push((i, w.parse::<f64>().map_err(|_| bad("centroid weight"))?));
            }
            if centroid.len() != nnz {
                return Err(bad("centroid length"));
            }
            centroids.insert(label, centroid);
            trained_on.insert(label, trained);
        }
        Ok(CentroidModel { vocabulary, idf, centroids, trained_on, heading_weight })
    }
}

impl SegmentClassifier for CentroidModel {
    fn classify_segment(&self, seg: &Segment) -> Result<Classification, ClassifyError> {
        Ok(self.classify(seg))
    }
}

/// Labeled training segments from a parsed standard-format resume: the
/// preamble as `Bio`, then one segment per section.
pub fn labeled_segments(resume: &ParsedResume) -> Vec<LabeledSegment> {
    let mut out = Vec::new();
    let mut bio = vec![resume.name.clone()];
    bio.extend(resume.headline.clone());
    bio.extend(resume.location.clone());
    bio.extend(resume.contact.values().cloned());
    out.push(LabeledSegment { segment: Segment::new(None, bio.join("\n")), label: SectionLabel::Bio });
    for section in &resume.sections {
        let mut body: Vec<String> = Vec::new();
        if !section.free_text.is_empty() {
            body.push(section.free_text.clone());
        }
        for e in &section.entries {
            body.push(e.header_line());
            body.extend(e.date_line());
            if !e.description.is_empty() {
                body.push(e.description.clone());
            }
        }
        if body.is_empty() {
            continue;
        }
        out.push(LabeledSegment {
            segment: Segment::new(Some(section.heading_text.clone()), body.join("\n")),
            label: section.label,
        });
    }
    for (i, s) in out.iter_mut().enumerate() {
        s.segment.order_index = i;
    }
    out
}

fn email_anywhere() -> &'static Regex {
    static RE: OnceLock<Regex> = OnceLock::new();
    RE.get_or_init(|| Regex::new(r"[A-Za-z0-9._%+\-]+@[A-Za-z0-9.\-]+\.[A-Za-z]{2,}").unwrap())
}

fn phone_anywhere() -> &'static Regex {
    static RE: OnceLock<Regex> = OnceLock::new();
    RE.get_or_init(|| Regex::new(r"\+?\(?\d[\d\s().\-]{5,}\d").unwrap())
}

fn insert_unique(contact: &mut indexmap::IndexMap<String, String>, key: &str, value: String) {
    if contact.values().any(|v| *v == value) {
        return;
    }
    let mut slot = key.to_string();
    let mut n = 2;
    while contact.contains_key(&slot) {
        slot = format!("{key}_{n}");
        n += 1;
    }
    contact.insert(slot, value);
}

/// Email addresses and phone numbers found anywhere in the text.
pub fn mine_contact(text: &str) -> indexmap::IndexMap<String, String> {
    let mut contact = indexmap::IndexMap::new();
    for line in text.lines() {
        for m in email_anywhere().find_iter(line) {
            insert_unique(&mut contact, "email", m.as_str().to_string());
        }
        for m in phone_anywhere().find_iter(line) {
            let candidate = m.as_str().trim();
            if is_phone(candidate) {
                insert_unique(&mut contact, "phone", candidate.to_string());
            }
        }
    }
    contact
}

/// Converts a free-form document into the standard structure: reflow,
/// segment, label each headed segment, then assemble.
pub fn convert_to_standard(
    doc: &SpanDocument,
    classifier: &dyn SegmentClassifier,
    cfg: &ReflowConfig,
) -> Result<ParsedResume, ConvertError> {
    let lines = reflow(doc, cfg);
    let segments = segment(&lines, doc, cfg);
    let Some(first) = segments.first() else {
        return Err(ConvertError::StructureError("document has no text".into()));
    };
    let name = lines[0].text.clone();
    let mut resume = ParsedResume::new(&doc.source_name, &name);

    if segments.iter().all(|s| s.heading_text.is_none()) {
        let mut section = ResumeSection::new(SectionLabel::Other, "");
        section.free_text = first.body.clone();
        resume.contact = mine_contact(&first.body);
        resume.sections.push(section);
        return Ok(resume);
    }

    let mut headed = segments.iter();
    if first.heading_text.is_none() {
        headed.next();
        resume.contact = mine_contact(&first.body);
        let rest: Vec<&str> = first.body.lines().skip(1).collect();
        let rest = rest.join("\n");
        if !rest.trim().is_empty() {
            let mut bio = ResumeSection::new(SectionLabel::Bio, "");
            bio.free_text = rest.trim_matches('\n').to_string();
            resume.sections.push(bio);
        }
    }

    for seg in headed {
        let label = classifier.classify_segment(seg)?.label;
        let mut section = ResumeSection::new(label, seg.heading_text.clone().unwrap_or_default());
        section.free_text = seg.body.clone();
        if label == SectionLabel::Experience {
            section.entries = seg
                .body
                .split("\n\n")
                .map(|block| block.lines().map(str::trim).filter(|l| !l.is_empty()).collect::<Vec<_>>())
                .filter(|block| !block.is_empty())
                .map(|block| parse_entry_header(&block).into_entry())
                .collect();
        }
        match resume.sections.iter_mut().find(|s| s.label == label && label != SectionLabel::Other) {
            Some(existing) => {
                existing.free_text = format!("{}\n\n{}", existing.free_text, section.free_text);
                existing.entries.extend(section.entries);
            }
            None => resume.sections.push(section),
        }
    }
    Ok(resume)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ls(heading: Option<&str>, body: &str, label: SectionLabel) -> LabeledSegment {
        LabeledSegment { segment: Segment::new(heading.map(str::to_string), body), label }
    }

    #[test]
    fn disjoint_vocabularies_give_orthogonal_centroids() {
        let m = CentroidModel::fit(&[
            ls(None, "rust compiler parser", SectionLabel::Experience),
            ls(None, "university degree thesis", SectionLabel::Education),
        ])
        .unwrap();
        let a = &m.centroids[&SectionLabel::Experience];
        let b = &m.centroids[&SectionLabel::Education];
        let dot: f64 = a.iter().filter_map(|(i, w)| b.iter().find(|(j, _)| j == i).map(|(_, x)| w * x)).sum();
        assert_eq!(dot, 0.0);
        for c in m.centroids.values() {
            let n: f64 = c.iter().map(|(_, w)| w * w).sum::<f64>().sqrt();
            assert!((n - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn duplicating_samples_keeps_centroids_when_df_is_uniform() {
        // every token has df = 1, so all idf weights stay equal after doubling
        let corpus = vec![
            ls(None, "rust compiler parser", SectionLabel::Experience),
            ls(None, "university degree thesis", SectionLabel::Education),
        ];
        let mut doubled = corpus.clone();
        doubled.extend(corpus.clone());
        let a = CentroidModel::fit(&corpus).unwrap();
        let b = CentroidModel::fit(&doubled).unwrap();
        for (label, ca) in &a.centroids {
            let cb = &b.centroids[label];
            for ((i, w), (j, x)) in ca.iter().zip(cb) {
                assert_eq!(i, j);
                assert!((w - x).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn one_label_is_insufficient() {
        let err = CentroidModel::fit(&[ls(None, "a", SectionLabel::Skills), ls(None, "b", SectionLabel::Skills)]);
        assert_eq!(err.unwrap_err(), ClassifyError::InsufficientCorpus(1));
        assert_eq!(
            CentroidModel::fit(&[ls(None, " ", SectionLabel::Skills)]).unwrap_err(),
            ClassifyError::EmptySample(0)
        );
    }

    #[test]
    fn training_point_is_retrieved_and_oov_is_other() {
        let corpus = vec![
            ls(Some("Education"), "BSc computer science university", SectionLabel::Education),
            ls(Some("Experience"), "built distributed systems", SectionLabel::Experience),
            ls(Some("Skills"), "rust go python", SectionLabel::Skills),
        ];
        let m = CentroidModel::fit(&corpus).unwrap();
        let c = m.classify(&corpus[0].segment);
        assert_eq!(c.label, SectionLabel::Education);
        for (_, cos) in m.similarities(&corpus[0].segment) {
            assert!(c.confidence >= cos - 1e-12);
        }
        let oov = m.classify(&Segment::new(None, "zzqq xx"));
        assert_eq!((oov.label, oov.confidence), (SectionLabel::Other, 0.0));
    }

    #[test]
    fn heading_tokens_are_weighted() {
        let seg = Segment::new(Some("Work History".into()), "did things");
        let t = feature_tokens(&seg, 3);
        assert_eq!(t.iter().filter(|t| *t == "history").count(), 3);
        assert_eq!(t.iter().filter(|t| *t == "did").count(), 1);
    }

    #[test]
    fn model_text_round_trip() {
        let m = CentroidModel::fit(&[
            ls(Some("Education"), "BSc university", SectionLabel::Education),
            ls(Some("Experience"), "engineer 2019", SectionLabel::Experience),
        ])
        .unwrap();
        let text = m.to_text();
        assert_eq!(CentroidModel::from_text(&text).unwrap(), m);
        assert!(CentroidModel::from_text("garbage").is_err());
        assert!(CentroidModel::from_text(&text.replace("end\n", "")).is_err());
    }

    #[test]
    fn contact_mining() {
        let c = mine_contact("Jane Doe\njane@example.com | +1 555 010 2030 | Berlin");
        assert_eq!(c.get("email").map(String::as_str), Some("jane@example.com"));
        assert_eq!(c.get("phone").map(String::as_str), Some("+1 555 010 2030"));
    }
}

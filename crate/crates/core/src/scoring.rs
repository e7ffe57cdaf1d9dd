//! Pair scorers: a deterministic tf-idf baseline and an HTTP client for an
//! external model host.
//!
//! Remote wire contract: `POST {url}/score` with `{"text_a","text_b"}`
//! answered by `{"score": number}`; `POST {url}/classify` with
//! `{"heading","body"}` answered by `{"label","confidence"}`.

use std::collections::BTreeMap;
use std::sync::{Condvar, Mutex};
use std::time::Duration;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::generic_reflow::Segment;
use crate::pair_dataset::{PairLabel, PairSample};
use crate::section_classifier::{Classification, ClassifyError, SegmentClassifier};
use crate::text::{document_frequencies, smoothed_idf, tokenize};

pub const DEFAULT_THRESHOLD: f64 = 0.5;
pub const DEFAULT_TIMEOUT_MS: u64 = 5_000;
pub const DEFAULT_MAX_IN_FLIGHT: usize = 8;
pub const ENV_SCORER_URL: &str = "RESUME_SCORER_URL";
pub const ENV_SCORER_TIMEOUT_MS: &str = "RESUME_SCORER_TIMEOUT_MS";

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ScoreError {
    #[error("cannot fit a scorer on an empty corpus")]
    EmptyCorpus,
    #[error("scorer unavailable: {0}")]
    ScorerUnavailable(String),
    #[error("invalid scorer config: {0}")]
    InvalidConfig(String),
    #[error("no samples to evaluate")]
    EmptySamples,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PairScore {
    pub value: f64,
    pub scorer_id: &'static str,
}

impl PairScore {
    fn clamped(value: f64, scorer_id: &'static str) -> Self {
        PairScore { value: value.clamp(0.0, 1.0), scorer_id }
    }
}

pub trait PairScorer: Send + Sync {
    fn score(&self, text_a: &str, text_b: &str) -> Result<PairScore, ScoreError>;
    fn id(&self) -> &'static str;
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ScorerKind {
    #[default]
    Lexical,
    Remote,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct ScorerConfig {
    pub kind: ScorerKind,
    pub remote_url: Option<String>,
    pub timeout_ms: u64,
    pub max_in_flight: usize,
    pub threshold: f64,
    /// Fit the lexical idf on the candidates being ranked; otherwise on the
    /// whole background collection.
    pub corpus_fitted: bool,
}

impl Default for ScorerConfig {
    fn default() -> Self {
        ScorerConfig {
            kind: ScorerKind::Lexical,
            remote_url: None,
            timeout_ms: DEFAULT_TIMEOUT_MS,
            max_in_flight: DEFAULT_MAX_IN_FLIGHT,
            threshold: DEFAULT_THRESHOLD,
            corpus_fitted: true,
        }
    }
}

impl ScorerConfig {
    /// Environment overrides: a set scorer URL switches to the remote kind.
    pub fn with_env(mut self) -> Self {
        if let Ok(url) = std::env::var(ENV_SCORER_URL) {
            if !url.trim().is_empty() {
                self.kind = ScorerKind::Remote;
                self.remote_url = Some(url.trim().to_string());
            }
        }
        if let Some(ms) = std::env::var(ENV_SCORER_TIMEOUT_MS).ok().and_then(|v| v.trim().parse().ok()) {
            self.timeout_ms = ms;
        }
        self
    }

    pub fn validate(&self) -> Result<(), ScoreError> {
        if self.kind == ScorerKind::Remote && self.remote_url.as_deref().is_none_or(str::is_empty) {
            return Err(ScoreError::InvalidConfig("remote scorer requires remote_url".into()));
        }
        if self.max_in_flight == 0 {
            return Err(ScoreError::InvalidConfig("max_in_flight must be at least 1".into()));
        }
        Ok(())
    }
}

/// Tf-idf cosine over the shared tokenizer. Tokens unseen at fit time get
/// the idf of a zero document frequency.
#[derive(Debug, Clone, PartialEq)]
pub struct LexicalScorer {
    n_docs: usize,
    idf: BTreeMap<String, f64>,
}

pub fn fit_lexical<S: AsRef<str>>(corpus: &[S]) -> Result<LexicalScorer, ScoreError> {
    if corpus.is_empty() {
        return Err(ScoreError::EmptyCorpus);
    }
    let docs: Vec<Vec<String>> = corpus.iter().map(|d| tokenize(d.as_ref())).collect();
    let (n, df) = document_frequencies(docs.iter().map(Vec::as_slice));
    let idf = df.into_iter().map(|(t, d)| (t, smoothed_idf(n, d))).collect();
    Ok(LexicalScorer { n_docs: n, idf })
}

impl LexicalScorer {
    pub fn idf(&self, token: &str) -> f64 {
        self.idf.get(token).copied().unwrap_or_else(|| smoothed_idf(self.n_docs, 0))
    }

    pub fn n_docs(&self) -> usize {
        self.n_docs
    }

    /// Sorted (token, weight) pairs; the fixed order keeps sums bit-stable.
    fn vector(&self, text: &str) -> Vec<(String, f64)> {
        let mut tf: BTreeMap<String, f64> = BTreeMap::new();
        for t in tokenize(text) {
            *tf.entry(t).or_default() += 1.0;
        }
        tf.into_iter()
            .map(|(t, c)| {
                let w = c * self.idf(&t);
                (t, w)
            })
            .collect()
    }

    pub fn similarity(&self, a: &str, b: &str) -> f64 {
        let (va, vb) = (self.vector(a), self.vector(b));
        let na = va.iter().map(|(_, w)| w * w).sum::<f64>().sqrt();
        let nb = vb.iter().map(|(_, w)| w * w).sum::<f64>().sqrt();
        if na == 0.0 || nb == 0.0 {
            return 0.0;
        }
        let mut dot = 0.0;
        let (mut i, mut j) = (0, 0);
        while i < va.len() && j < vb.len() {
            match va[i].0.cmp(&vb[j].0) {
                std::cmp::Ordering::Less => i += 1,
                std::cmp::Ordering::Greater => j += 1,
                std::cmp::Ordering::Equal => {
                    dot += va[i].1 * vb[j].1;
                    i += 1;
                    j += 1;
                }
            }
        }
        // product of norms is commutative, so the result is exactly symmetric
        (dot / (na * nb)).clamp(0.0, 1.0)
    }
}

impl PairScorer for LexicalScorer {
    fn score(&self, text_a: &str, text_b: &str) -> Result<PairScore, ScoreError> {
        Ok(PairScore::clamped(self.similarity(text_a, text_b), "lexical"))
    }

    fn id(&self) -> &'static str {
        "lexical"
    }
}

/// Counting gate bounding concurrent requests.
#[derive(Debug)]
struct Gate {
    free: Mutex<usize>,
    cv: Condvar,
}

impl Gate {
    fn new(n: usize) -> Self {
        Gate { free: Mutex::new(n.max(1)), cv: Condvar::new() }
    }

    /// Waits at most `timeout` for a free slot.
    fn enter(&self, timeout: Duration) -> Option<GateGuard<'_>> {
        let free = self.free.lock().unwrap_or_else(|e| e.into_inner());
        let (mut free, waited) =
            self.cv.wait_timeout_while(free, timeout, |f| *f == 0).unwrap_or_else(|e| e.into_inner());
        if waited.timed_out() && *free == 0 {
            return None;
        }
        *free -= 1;
        Some(GateGuard(self))
    }
}

struct GateGuard<'a>(&'a Gate);

impl Drop for GateGuard<'_> {
    fn drop(&mut self) {
        *self.0.free.lock().unwrap_or_else(|e| e.into_inner()) += 1;
        self.0.cv.notify_one();
    }
}

#[derive(Debug)]
struct RemoteClient {
    base: String,
    http: reqwest::blocking::Client,
    gate: Gate,
    timeout: Duration,
}

impl RemoteClient {
    fn new(url: &str, timeout: Duration, max_in_flight: usize) -> Result<Self, ScoreError> {
        let http = reqwest::blocking::Client::builder()
            .timeout(timeout)
            .build()
            .map_err(|e| ScoreError::InvalidConfig(e.to_string()))?;
        Ok(RemoteClient { base: url.trim_end_matches('/').to_string(), http, gate: Gate::new(max_in_flight), timeout })
    }

    fn post<B: Serialize, R: for<'de> Deserialize<'de>>(&self, route: &str, body: &B) -> Result<R, String> {
        let _slot = self.gate.enter(self.timeout).ok_or("too many requests in flight")?;
        let resp = self.http.post(format!("{}/{route}", self.base)).json(body).send().map_err(|e| e.to_string())?;
        let status = resp.status();
        if !status.is_success() {
            return Err(format!("{route} returned {status}"));
        }
        let bytes = resp.bytes().map_err(|e| e.to_string())?;
        serde_json::from_slice(&bytes).map_err(|e| format!("malformed {route} response: {e}"))
    }
}

#[derive(Serialize)]
struct ScoreRequest<'a> {
    text_a: &'a str,
    text_b: &'a str,
}

#[derive(Deserialize)]
struct ScoreResponse {
    score: f64,
}

/// Client for an external pair-scoring model.
#[derive(Debug)]
pub struct RemoteScorer {
    client: RemoteClient,
}

impl RemoteScorer {
    pub fn new(url: &str, timeout: Duration, max_in_flight: usize) -> Result<Self, ScoreError> {
        Ok(RemoteScorer { client: RemoteClient::new(url, timeout, max_in_flight)? })
    }

    pub fn from_config(cfg: &ScorerConfig) -> Result<Self, ScoreError> {
        cfg.validate()?;
        let url = cfg.remote_url.as_deref().ok_or_else(|| ScoreError::InvalidConfig("missing remote_url".into()))?;
        RemoteScorer::new(url, Duration::from_millis(cfg.timeout_ms), cfg.max_in_flight)
    }
}

impl PairScorer for RemoteScorer {
    fn score(&self, text_a: &str, text_b: &str) -> Result<PairScore, ScoreError> {
        let resp: ScoreResponse =
            self.client.post("score", &ScoreRequest { text_a, text_b }).map_err(ScoreError::ScorerUnavailable)?;
        if !resp.score.is_finite() {
            return Err(ScoreError::ScorerUnavailable("non-finite score".into()));
        }
        Ok(PairScore::clamped(resp.score, "remote"))
    }

    fn id(&self) -> &'static str {
        "remote"
    }
}

#[derive(Serialize)]
struct ClassifyRequest<'a> {
    heading: Option<&'a str>,
    body: &'a str,
}

#[derive(Deserialize)]
struct ClassifyResponse {
    label: String,
    confidence: f64,
}

/// Section classifier backed by the external model's `/classify` route.
#[derive(Debug)]
pub struct RemoteClassifier {
    client: RemoteClient,
}

impl RemoteClassifier {
    pub fn new(url: &str, timeout: Duration, max_in_flight: usize) -> Result<Self, ScoreError> {
        Ok(RemoteClassifier { client: RemoteClient::new(url, timeout, max_in_flight)? })
    }
}

impl SegmentClassifier for RemoteClassifier {
    fn classify_segment(&self, seg: &Segment) -> Result<Classification, ClassifyError> {
        let req = ClassifyRequest { heading: seg.heading_text.as_deref(), body: &seg.body };
        let resp: ClassifyResponse = self.client.post("classify", &req).map_err(ClassifyError::Unavailable)?;
        let label =
            resp.label.parse().map_err(|e: crate::resume::UnknownLabel| ClassifyError::Unavailable(e.to_string()))?;
        let confidence = if resp.confidence.is_finite() { resp.confidence.clamp(0.0, 1.0) } else { 0.0 };
        Ok(Classification { label, confidence })
    }
}

/// Builds the scorer named by `cfg`; the lexical one is fitted on `corpus`.
pub fn build_scorer<S: AsRef<str>>(cfg: &ScorerConfig, corpus: &[S]) -> Result<Box<dyn PairScorer>, ScoreError> {
    cfg.validate()?;
    match cfg.kind {
        ScorerKind::Lexical => Ok(Box::new(fit_lexical(corpus)?)),
        ScorerKind::Remote => Ok(Box::new(RemoteScorer::from_config(cfg)?)),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct Confusion {
    pub true_positive: usize,
    pub false_positive: usize,
    pub true_negative: usize,
    pub false_negative: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EvalMetrics {
    pub samples: usize,
    pub threshold: f64,
    pub accuracy: f64,
    /// Zero when nothing is predicted positive.
    pub precision: f64,
    /// Zero when there are no positive samples.
    pub recall: f64,
    pub confusion: Confusion,
}

/// Predicts "same candidate" when the score reaches `threshold`.
pub fn evaluate_pairs(
    scorer: &dyn PairScorer,
    samples: &[PairSample],
    threshold: f64,
) -> Result<EvalMetrics, ScoreError> {
    if samples.is_empty() {
        return Err(ScoreError::EmptySamples);
    }
    let mut c = Confusion::default();
    for s in samples {
        let predicted = scorer.score(&s.text_a, &s.text_b)?.value >= threshold;
        match (predicted, s.label == PairLabel::Positive) {
            (true, true) => c.true_positive += 1,
            (true, false) => c.false_positive += 1,
            (false, false) => c.true_negative += 1,
            (false, true) => c.false_negative += 1,
        }
    }
    let ratio = |num: usize, den: usize| if den == 0 { 0.0 } else { num as f64 / den as f64 };
    Ok(EvalMetrics {
        samples: samples.len(),
        threshold,
        accuracy: ratio(c.true_positive + c.true_negative, samples.len()),
        precision: ratio(c.true_positive, c.true_positive + c.false_positive),
        recall: ratio(c.true_positive, c.true_positive + c.false_negative),
        confusion: c,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    struct Constant(f64);

    impl PairScorer for Constant {
        fn score(&self, _: &str, _: &str) -> Result<PairScore, ScoreError> {
            Ok(PairScore::clamped(self.0, "constant"))
        }
        fn id(&self) -> &'static str {
            "constant"
        }
    }

    fn sample(label: PairLabel) -> PairSample {
        PairSample { text_a: "x".into(), text_b: "y".into(), label, a_candidate: "A".into(), b_candidate: "B".into() }
    }

    #[test]
    fn idf_by_hand() {
        let s = fit_lexical(&["a b", "b c"]).unwrap();
        assert!((s.idf("b") - 1.0).abs() < 1e-12);
        assert!((s.idf("a") - ((3.0f64 / 2.0).ln() + 1.0)).abs() < 1e-12);
        assert!((s.idf("c") - s.idf("a")).abs() < 1e-12);
        assert!((s.idf("zzz") - (3.0f64.ln() + 1.0)).abs() < 1e-12);
    }

    #[test]
    fn empty_corpus_is_rejected() {
        assert_eq!(fit_lexical::<&str>(&[]).unwrap_err(), ScoreError::EmptyCorpus);
    }

    #[test]
    fn permuted_corpus_fits_the_same_scorer() {
        assert_eq!(fit_lexical(&["x y", "y z", "q"]).unwrap(), fit_lexical(&["q", "y z", "x y"]).unwrap());
    }

    #[test]
    fn self_disjoint_and_related() {
        let s = fit_lexical(&[
            "managed kubernetes clusters",
            "operated kubernetes deployments",
            "taught high school biology",
        ])
        .unwrap();
        assert!((s.similarity("rust and go", "rust and go") - 1.0).abs() < 1e-9);
        assert_eq!(s.similarity("alpha", "beta"), 0.0);
        assert_eq!(s.similarity("", "beta"), 0.0);
        let near = s.similarity("managed kubernetes clusters", "operated kubernetes deployments");
        let far = s.similarity("managed kubernetes clusters", "taught high school biology");
        assert!(near > far);
    }

    #[test]
    fn boundary_counts_as_positive() {
        let samples = vec![sample(PairLabel::Positive), sample(PairLabel::Negative)];
        let m = evaluate_pairs(&Constant(0.5), &samples, 0.5).unwrap();
        assert_eq!(m.accuracy, 0.5);
        assert_eq!(m.recall, 1.0);
        let all_pos = vec![sample(PairLabel::Positive); 3];
        assert_eq!(evaluate_pairs(&Constant(1.0), &all_pos, 0.5).unwrap().accuracy, 1.0);
        assert_eq!(evaluate_pairs(&Constant(1.0), &[], 0.5).unwrap_err(), ScoreError::EmptySamples);
    }

    #[test]
    fn remote_config_needs_url() {
        let cfg = ScorerConfig { kind: ScorerKind::Remote, ..ScorerConfig::default() };
        assert!(matches!(cfg.validate(), Err(ScoreError::InvalidConfig(_))));
    }

    #[test]
    fn unreachable_remote_is_unavailable() {
        let s = RemoteScorer::new("http://127.0.0.1:9", Duration::from_millis(200), 1).unwrap();
        assert!(matches!(s.score("a", "b"), Err(ScoreError::ScorerUnavailable(_))));
    }
}

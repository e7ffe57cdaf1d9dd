//! Same-candidate pair dataset built from experience descriptions.
//!
//! Two descriptions written by one candidate form a positive pair; one
//! description from each of two different candidates forms a negative pair.
//! Negatives are sampled to match the positive count.

use std::collections::{BTreeSet, HashSet};
use std::io::{BufRead, Write};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::resume::ParsedResume;
use crate::rng::SplitMix64;

/// Negative sampling gives up after this many draws per positive.
pub const MAX_DRAWS_PER_POSITIVE: usize = 50;

#[derive(Debug, Error)]
pub enum PairError {
    #[error("need at least two candidates with experiences and at least one positive pair")]
    InsufficientProfiles,
    #[error("duplicate candidate id {0}")]
    DuplicateCandidate(String),
    #[error("negative sampling exhausted after {draws} draws with {found} of {needed} negatives")]
    NegativeSamplingExhausted { draws: usize, found: usize, needed: usize },
    #[error("train fraction must lie strictly between 0 and 1, got {0}")]
    InvalidFraction(f64),
    #[error("degenerate split: {0}")]
    DegenerateSplit(String),
    #[error("dataset line {line}: {source}")]
    Json { line: usize, source: serde_json::Error },
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CandidateProfile {
    pub candidate_id: String,
    pub experiences: Vec<String>,
}

impl CandidateProfile {
    pub fn new(candidate_id: impl Into<String>, experiences: impl IntoIterator<Item = impl Into<String>>) -> Self {
        CandidateProfile {
            candidate_id: candidate_id.into(),
            experiences: experiences
                .into_iter()
                .map(Into::into)
                .map(|e: String| e.trim().to_string())
                .filter(|e| !e.is_empty())
                .collect(),
        }
    }

    pub fn from_resume(resume: &ParsedResume) -> Self {
        CandidateProfile::new(resume.candidate_id.clone(), resume.experience_descriptions())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PairLabel {
    Negative,
    Positive,
}

impl Serialize for PairLabel {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_u8(matches!(self, PairLabel::Positive) as u8)
    }
}

impl<'de> Deserialize<'de> for PairLabel {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        match u8::deserialize(d)? {
            0 => Ok(PairLabel::Negative),
            1 => Ok(PairLabel::Positive),
            other => Err(serde::de::Error::custom(format!("label must be 0 or 1, got {other}"))),
        }
    }
}

/// One dataset row; serialized as `{"text_a","text_b","label","a","b"}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairSample {
    pub text_a: String,
    pub text_b: String,
    pub label: PairLabel,
    #[serde(rename = "a")]
    pub a_candidate: String,
    #[serde(rename = "b")]
    pub b_candidate: String,
}

fn pair_key(a: &str, b: &str) -> (String, String) {
    if a <= b {
        (a.to_string(), b.to_string())
    } else {
        (b.to_string(), a.to_string())
    }
}

/// All within-candidate combinations, then an equal number of seeded
/// cross-candidate draws.
pub fn build_pairs(profiles: &[CandidateProfile], seed: u64) -> Result<Vec<PairSample>, PairError> {
    let mut ids = HashSet::new();
    for p in profiles {
        if !ids.insert(p.candidate_id.as_str()) {
            return Err(PairError::DuplicateCandidate(p.candidate_id.clone()));
        }
    }
    let with_experience: Vec<&CandidateProfile> = profiles.iter().filter(|p| !p.experiences.is_empty()).collect();
    if profiles.len() < 2 || with_experience.len() < 2 {
        return Err(PairError::InsufficientProfiles);
    }

    let mut seen: HashSet<(String, String)> = HashSet::new();
    let mut samples = Vec::new();
    for p in profiles {
        for i in 0..p.experiences.len() {
            for j in i + 1..p.experiences.len() {
                let (a, b) = (&p.experiences[i], &p.experiences[j]);
                if a == b || !seen.insert(pair_key(a, b)) {
                    continue;
                }
                samples.push(PairSample {
                    text_a: a.clone(),
                    text_b: b.clone(),
                    label: PairLabel::Positive,
                    a_candidate: p.candidate_id.clone(),
                    b_candidate: p.candidate_id.clone(),
                });
            }
        }
    }
    let positives = samples.len();
    if positives == 0 {
        return Err(PairError::InsufficientProfiles);
    }

    // pool of (profile, experience), contiguous per profile
    let mut pool: Vec<(usize, usize)> = Vec::new();
    let mut block: Vec<(usize, usize)> = Vec::new(); // (start, len) per with_experience index
    for (pi, p) in with_experience.iter().enumerate() {
        block.push((pool.len(), p.experiences.len()));
        pool.extend((0..p.experiences.len()).map(|e| (pi, e)));
    }

    let mut rng = SplitMix64::new(seed);
    let max_draws = MAX_DRAWS_PER_POSITIVE * positives;
    let mut draws = 0;
    let mut negatives = 0;
    while negatives < positives {
        if draws >= max_draws {
            return Err(PairError::NegativeSamplingExhausted { draws, found: negatives, needed: positives });
        }
        draws += 1;
        let (pa, ea) = pool[rng.below(pool.len())];
        let (start, len) = block[pa];
        let mut k = rng.below(pool.len() - len);
        if k >= start {
            k += len;
        }
        let (pb, eb) = pool[k];
        let (a, b) = (with_experience[pa], with_experience[pb]);
        let (ta, tb) = (&a.experiences[ea], &b.experiences[eb]);
        if ta == tb || !seen.insert(pair_key(ta, tb)) {
            continue;
        }
        samples.push(PairSample {
            text_a: ta.clone(),
            text_b: tb.clone(),
            label: PairLabel::Negative,
            a_candidate: a.candidate_id.clone(),
            b_candidate: b.candidate_id.clone(),
        });
        negatives += 1;
    }
    Ok(samples)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SplitReport {
    pub train_candidates: usize,
    pub test_candidates: usize,
    pub dropped: usize,
    pub train_positive: usize,
    pub train_negative: usize,
    pub test_positive: usize,
    pub test_negative: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Split {
    pub train: Vec<PairSample>,
    pub test: Vec<PairSample>,
    pub report: SplitReport,
}

/// Candidate-disjoint split. Samples straddling the two sides are dropped.
pub fn split(samples: &[PairSample], train_fraction: f64, seed: u64) -> Result<Split, PairError> {
    if !(train_fraction > 0.0 && train_fraction < 1.0) {
        return Err(PairError::InvalidFraction(train_fraction));
    }
    let mut candidates: Vec<&str> = samples
        .iter()
        .flat_map(|s| [s.a_candidate.as_str(), s.b_candidate.as_str()])
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    SplitMix64::new(seed).shuffle(&mut candidates);
    let n_train = (train_fraction * candidates.len() as f64).round() as usize;
    let train_side: HashSet<&str> = candidates[..n_train.min(candidates.len())].iter().copied().collect();

    let mut out = Split {
        train: Vec::new(),
        test: Vec::new(),
        report: SplitReport {
            train_candidates: train_side.len(),
            test_candidates: candidates.len() - train_side.len(),
            dropped: 0,
            train_positive: 0,
            train_negative: 0,
            test_positive: 0,
            test_negative: 0,
        },
    };
    for s in samples {
        let a = train_side.contains(s.a_candidate.as_str());
        let b = train_side.contains(s.b_candidate.as_str());
        let positive = s.label == PairLabel::Positive;
        match (a, b) {
            (true, true) => {
                out.train.push(s.clone());
                if positive {
                    out.report.train_positive += 1;
                } else {
                    out.report.train_negative += 1;
                }
            }
            (false, false) => {
                out.test.push(s.clone());
                if positive {
                    out.report.test_positive += 1;
                } else {
                    out.report.test_negative += 1;
                }
            }
            _ => out.report.dropped += 1,
        }
    }
    let r = &out.report;
    for (side, pos, neg) in [("train", r.train_positive, r.train_negative), ("test", r.test_positive, r.test_negative)]
    {
        if pos == 0 || neg == 0 {
            return Err(PairError::DegenerateSplit(format!(
                "{side} side has {pos} positive and {neg} negative samples"
            )));
        }
    }
    Ok(out)
}

pub fn write_jsonl<W: Write>(samples: &[PairSample], mut out: W) -> std::io::Result<()> {
    for s in samples {
        serde_json::to_writer(&mut out, s)?;
        out.write_all(b"\n")?;
    }
    Ok(())
}

pub fn to_jsonl(samples: &[PairSample]) -> Vec<u8> {
    let mut buf = Vec::new();
    write_jsonl(samples, &mut buf).expect("writing to a Vec cannot fail");
    buf
}

pub fn read_jsonl<R: BufRead>(input: R) -> Result<Vec<PairSample>, PairError> {
    let mut out = Vec::new();
    for (i, line) in input.lines().enumerate() {
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        out.push(serde_json::from_str(&line).map_err(|source| PairError::Json { line: i + 1, source })?);
    }
    Ok(out)
}

//! Candidate ranking against a job description.

use std::cmp::Ordering;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::pair_dataset::CandidateProfile;
use crate::scoring::{fit_lexical, LexicalScorer, PairScorer, RemoteScorer, ScoreError, ScorerConfig, ScorerKind};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum RankError {
    #[error("job description is empty")]
    EmptyJobDescription,
    #[error("no candidates to rank")]
    NoCandidates,
    #[error(transparent)]
    Scorer(#[from] ScoreError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Aggregation {
    #[default]
    Max,
    Mean,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScoredCandidate {
    pub candidate_id: String,
    pub score: f64,
    /// Index of the best-matching experience; absent without experiences.
    pub best_experience_index: Option<usize>,
    pub rank: usize,
}

pub fn rank_candidates(
    jd: &str,
    profiles: &[CandidateProfile],
    scorer: &dyn PairScorer,
) -> Result<Vec<ScoredCandidate>, RankError> {
    rank_candidates_with(jd, profiles, scorer, Aggregation::Max)
}

/// Scores candidates in parallel, then sorts by score descending with
/// candidate id as the tie-break.
pub fn rank_candidates_with(
    jd: &str,
    profiles: &[CandidateProfile],
    scorer: &dyn PairScorer,
    aggregation: Aggregation,
) -> Result<Vec<ScoredCandidate>, RankError> {
    if jd.trim().is_empty() {
        return Err(RankError::EmptyJobDescription);
    }
    if profiles.is_empty() {
        return Err(RankError::NoCandidates);
    }
    let scored: Vec<(f64, Option<usize>)> =
        profiles.par_iter().map(|p| aggregate(jd, p, scorer, aggregation)).collect::<Result<_, _>>()?;

    let mut out: Vec<ScoredCandidate> = profiles
        .iter()
        .zip(scored)
        .map(|(p, (score, best))| ScoredCandidate {
            candidate_id: p.candidate_id.clone(),
            score,
            best_experience_index: best,
            rank: 0,
        })
        .collect();
    out.sort_by(|a, b| {
        b.score.partial_cmp(&a.score).unwrap_or(Ordering::Equal).then_with(|| a.candidate_id.cmp(&b.candidate_id))
    });
    for (i, c) in out.iter_mut().enumerate() {
        c.rank = i + 1;
    }
    Ok(out)
}

fn aggregate(
    jd: &str,
    profile: &CandidateProfile,
    scorer: &dyn PairScorer,
    aggregation: Aggregation,
) -> Result<(f64, Option<usize>), ScoreError> {
    let mut best: Option<(usize, f64)> = None;
    let mut total = 0.0;
    for (i, exp) in profile.experiences.iter().enumerate() {
        let v = scorer.score(jd, exp)?.value;
        total += v;
        if best.is_none_or(|(_, b)| v > b) {
            best = Some((i, v));
        }
    }
    Ok(match (best, aggregation) {
        (None, _) => (0.0, None),
        (Some((i, v)), Aggregation::Max) => (v, Some(i)),
        (Some((i, _)), Aggregation::Mean) => (total / profile.experiences.len() as f64, Some(i)),
    })
}

/// Lexical scorer fitted on every experience being ranked plus the job
/// description itself.
pub fn fit_for_ranking(jd: &str, profiles: &[CandidateProfile]) -> Result<LexicalScorer, ScoreError> {
    let mut corpus: Vec<&str> = profiles.iter().flat_map(|p| p.experiences.iter().map(String::as_str)).collect();
    corpus.push(jd);
    fit_lexical(&corpus)
}

/// Ranks with the scorer named by `cfg`. The lexical scorer is fitted by
/// [`fit_for_ranking`] on `profiles`, or on `background` when
/// `corpus_fitted` is off.
pub fn rank_with_config(
    jd: &str,
    profiles: &[CandidateProfile],
    background: &[CandidateProfile],
    cfg: &ScorerConfig,
    aggregation: Aggregation,
) -> Result<Vec<ScoredCandidate>, RankError> {
    if jd.trim().is_empty() {
        return Err(RankError::EmptyJobDescription);
    }
    if profiles.is_empty() {
        return Err(RankError::NoCandidates);
    }
    match cfg.kind {
        ScorerKind::Lexical => {
            let corpus = if cfg.corpus_fitted { profiles } else { background };
            rank_candidates_with(jd, profiles, &fit_for_ranking(jd, corpus)?, aggregation)
        }
        ScorerKind::Remote => rank_candidates_with(jd, profiles, &RemoteScorer::from_config(cfg)?, aggregation),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn profiles() -> Vec<CandidateProfile> {
        vec![
            CandidateProfile::new("c", ["taught biology classes"]),
            CandidateProfile::new("a", ["built rust services", "led platform migration"]),
            CandidateProfile::new("b", Vec::<String>::new()),
        ]
    }

    #[test]
    fn verbatim_jd_ranks_first() {
        let jd = "led platform migration";
        let ps = profiles();
        let scorer = fit_for_ranking(jd, &ps).unwrap();
        let r = rank_candidates(jd, &ps, &scorer).unwrap();
        assert_eq!(r[0].candidate_id, "a");
        assert!((r[0].score - 1.0).abs() < 1e-9);
        assert_eq!(r[0].best_experience_index, Some(1));
        let b = r.iter().find(|c| c.candidate_id == "b").unwrap();
        assert_eq!((b.score, b.best_experience_index), (0.0, None));
        assert_eq!(r.iter().map(|c| c.rank).collect::<Vec<_>>(), vec![1, 2, 3]);
    }

    #[test]
    fn empty_profiles_rank_by_id() {
        let ps: Vec<_> = ["z", "m", "a"].iter().map(|id| CandidateProfile::new(*id, Vec::<String>::new())).collect();
        let scorer = fit_for_ranking("anything", &ps).unwrap();
        let r = rank_candidates("anything", &ps, &scorer).unwrap();
        assert_eq!(r.iter().map(|c| c.candidate_id.as_str()).collect::<Vec<_>>(), vec!["a", "m", "z"]);
    }

    #[test]
    fn blank_jd_is_rejected() {
        let ps = profiles();
        let scorer = fit_for_ranking("x", &ps).unwrap();
        assert_eq!(rank_candidates("  ", &ps, &scorer).unwrap_err(), RankError::EmptyJobDescription);
        assert_eq!(rank_candidates("x", &[], &scorer).unwrap_err(), RankError::NoCandidates);
    }

    #[test]
    fn mean_aggregation_averages() {
        let jd = "led platform migration";
        let ps = profiles();
        let scorer = fit_for_ranking(jd, &ps).unwrap();
        let r = rank_candidates_with(jd, &ps, &scorer, Aggregation::Mean).unwrap();
        let a = r.iter().find(|c| c.candidate_id == "a").unwrap();
        assert!((a.score - 0.5).abs() < 1e-9);
    }
}

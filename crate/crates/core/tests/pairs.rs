use std::collections::{BTreeSet, HashMap, HashSet};

use resumekit::pair_dataset::{build_pairs, read_jsonl, split, to_jsonl, CandidateProfile, PairError, PairLabel};
use resumekit::rng::SplitMix64;

mod common;
use common::{oracle_positives, random_profiles};

#[test]
fn counts_and_soundness_match_brute_force_on_25_sets() {
    for seed in 0..25u64 {
        let profiles = random_profiles(seed);
        let expected = oracle_positives(&profiles);
        let owner: HashMap<&str, &str> = profiles
            .iter()
            .flat_map(|p| p.experiences.iter().map(move |e| (e.as_str(), p.candidate_id.as_str())))
            .collect();
        let samples = match build_pairs(&profiles, seed) {
            Ok(s) => s,
            Err(PairError::InsufficientProfiles) if expected.is_empty() => continue,
            Err(e) => panic!("seed {seed}: {e}"),
        };
        let (pos, neg): (Vec<_>, Vec<_>) = samples.iter().partition(|s| s.label == PairLabel::Positive);
        assert_eq!(pos.len(), expected.len(), "seed {seed}");
        assert_eq!(neg.len(), pos.len(), "seed {seed}: balance");

        let got: Vec<(String, String, String)> =
            pos.iter().map(|s| (s.a_candidate.clone(), s.text_a.clone(), s.text_b.clone())).collect();
        assert_eq!(got, expected, "seed {seed}: positives in profile order");
        // positives precede negatives
        assert!(samples[..pos.len()].iter().all(|s| s.label == PairLabel::Positive));

        let mut seen = HashSet::new();
        for s in &neg {
            assert_ne!(s.a_candidate, s.b_candidate);
            assert_eq!(owner[s.text_a.as_str()], s.a_candidate);
            assert_eq!(owner[s.text_b.as_str()], s.b_candidate);
            let key: BTreeSet<&str> = [s.text_a.as_str(), s.text_b.as_str()].into();
            assert!(seen.insert(key), "seed {seed}: duplicate negative");
        }
    }
}

#[test]
fn same_seed_gives_identical_bytes() {
    for seed in [1u64, 99, 12345] {
        let profiles = random_profiles(seed);
        let a = to_jsonl(&build_pairs(&profiles, 7).unwrap());
        let b = to_jsonl(&build_pairs(&profiles, 7).unwrap());
        assert_eq!(a, b);
        assert_eq!(read_jsonl(a.as_slice()).unwrap(), build_pairs(&profiles, 7).unwrap());
    }
}

#[test]
fn worked_example_positives() {
    let profiles =
        vec![CandidateProfile::new("P1", ["E11", "E12", "E13"]), CandidateProfile::new("P2", ["E21", "E22"])];
    let samples = build_pairs(&profiles, 0).unwrap();
    let pos: Vec<(&str, &str)> = samples
        .iter()
        .filter(|s| s.label == PairLabel::Positive && s.a_candidate == "P1")
        .map(|s| (s.text_a.as_str(), s.text_b.as_str()))
        .collect();
    assert_eq!(pos, vec![("E11", "E12"), ("E11", "E13"), ("E12", "E13")]);
}

/// Applies the same seeded candidate shuffle, then assigns and counts by
/// direct enumeration.
fn oracle_split(samples: &[resumekit::PairSample], frac: f64, seed: u64) -> (usize, usize, usize) {
    let mut cands: Vec<&str> = samples
        .iter()
        .flat_map(|s| [s.a_candidate.as_str(), s.b_candidate.as_str()])
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    SplitMix64::new(seed).shuffle(&mut cands);
    let n_train = (frac * cands.len() as f64).round() as usize;
    let train: HashSet<&str> = cands[..n_train].iter().copied().collect();
    let mut sizes = (0, 0, 0);
    for s in samples {
        match (train.contains(s.a_candidate.as_str()), train.contains(s.b_candidate.as_str())) {
            (true, true) => sizes.0 += 1,
            (false, false) => sizes.1 += 1,
            _ => sizes.2 += 1,
        }
    }
    sizes
}

#[test]
fn split_sizes_match_oracle_on_twenty_samples() {
    // 3+2+4 experiences plus a one-experience candidate: 10 positives, 10 negatives
    let profiles = vec![
        CandidateProfile::new("a", ["a1", "a2", "a3"]),
        CandidateProfile::new("b", ["b1", "b2"]),
        CandidateProfile::new("c", ["c1", "c2", "c3", "c4"]),
        CandidateProfile::new("d", ["d1"]),
    ];
    let samples = build_pairs(&profiles, 5).unwrap();
    assert_eq!(samples.len(), 20);
    let mut checked = 0;
    for seed in 0..40u64 {
        let Ok(s) = split(&samples, 0.5, seed) else { continue };
        let (train, test, dropped) = oracle_split(&samples, 0.5, seed);
        assert_eq!((s.train.len(), s.test.len(), s.report.dropped), (train, test, dropped), "seed {seed}");
        let left: HashSet<&str> =
            s.train.iter().flat_map(|x| [x.a_candidate.as_str(), x.b_candidate.as_str()]).collect();
        assert!(s
            .test
            .iter()
            .all(|x| !left.contains(x.a_candidate.as_str()) && !left.contains(x.b_candidate.as_str())));
        checked += 1;
    }
    assert!(checked > 0, "no seed produced a non-degenerate split");
}

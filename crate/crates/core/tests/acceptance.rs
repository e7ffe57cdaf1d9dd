//! Acceptance run: one PASS/FAIL line per criterion, non-zero exit on any
//! failure. Runtime limits are wall-clock for the whole check.

mod common;

use std::collections::{BTreeSet, HashSet};
use std::io::{BufRead, BufReader};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::{Child, Command, Stdio};
use std::time::{Duration, Instant};

use resumekit::config::AppConfig;
use resumekit::fixtures::{gen_generic, gen_linkedin, Layout};
use resumekit::format_detector::{detect_format, DocumentFormat, FormatSignature};
use resumekit::generic_reflow::{reflow, ReflowConfig, Segment};
use resumekit::ingest::ingest_layout_xml;
use resumekit::lexicon::HeadingLexicon;
use resumekit::linkedin_parser::{is_lossless, parse_linkedin};
use resumekit::pair_dataset::{build_pairs, to_jsonl, CandidateProfile, PairLabel, PairSample};
use resumekit::pipeline::default_model;
use resumekit::ranking::{fit_for_ranking, rank_candidates, rank_candidates_with, rank_with_config, Aggregation};
use resumekit::resume::{read_json, SectionLabel};
use resumekit::rng::SplitMix64;
use resumekit::scoring::{evaluate_pairs, fit_lexical, PairScore, PairScorer, RemoteScorer, ScoreError};
use resumekit::service::rank_response_json;

use common::{line_texts, multiset, oracle_positives, random_layout, random_profiles, relay, stub};

type Outcome = Result<String, String>;
type Check = (&'static str, Option<u64>, fn() -> Outcome);

macro_rules! require {
    ($cond:expr, $($msg:tt)+) => {
        let holds: bool = $cond;
        if !holds {
            return Err(format!($($msg)+));
        }
    };
}

fn run_check(n: usize, name: &str, limit: Option<Duration>, f: impl FnOnce() -> Outcome) -> bool {
    let started = Instant::now();
    let result = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|p| {
        let msg = p.downcast_ref::<String>().cloned().or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()));
        Err(format!("panicked: {}", msg.unwrap_or_default()))
    });
    let elapsed = started.elapsed();
    let over = limit.filter(|l| elapsed > *l);
    let budget = limit.map_or(String::new(), |l| format!(", limit {:.0}s", l.as_secs_f64()));
    let (ok, detail) = match (&result, over) {
        (Ok(d), None) => (true, d.clone()),
        (Ok(d), Some(l)) => (false, format!("{d}; exceeded {:.1}s", l.as_secs_f64())),
        (Err(e), _) => (false, e.clone()),
    };
    println!("{} [{n}] {name} ({:.2}s{budget}): {detail}", if ok { "PASS" } else { "FAIL" }, elapsed.as_secs_f64());
    ok
}

fn detection() -> Outcome {
    let sig = FormatSignature::default();
    let mut total = 0;
    let mut stripped_ok = 0;
    for f in gen_linkedin(42, 50) {
        let (doc, _) = ingest_layout_xml(&f.source_name, &f.xml).map_err(|e| e.to_string())?;
        require!(detect_format(&doc, &sig).format == DocumentFormat::LinkedInFormat, "{} not detected", f.source_name);
        let stripped = doc.without_metadata();
        require!(
            detect_format(&stripped, &sig).format == DocumentFormat::Generic,
            "stripped {} not generic",
            f.source_name
        );
        total += 1;
        stripped_ok += 1;
    }
    for layout in [Layout::Single, Layout::TwoColumn] {
        for f in gen_generic(42, 25, layout) {
            let (doc, _) = ingest_layout_xml(&f.source_name, &f.xml).map_err(|e| e.to_string())?;
            require!(detect_format(&doc, &sig).format == DocumentFormat::Generic, "{} misdetected", f.source_name);
            total += 1;
        }
    }
    Ok(format!("{total}/100 correct, {stripped_ok}/50 stripped variants generic"))
}

fn lossless_parsing() -> Outcome {
    let lex = HeadingLexicon::default();
    let fixtures = gen_linkedin(42, 100);
    for f in &fixtures {
        let (doc, _) = ingest_layout_xml(&f.source_name, &f.xml).map_err(|e| e.to_string())?;
        let parsed = parse_linkedin(&doc, &lex).map_err(|e| format!("{}: {e}", f.source_name))?;
        require!(parsed == f.truth, "{} differs from truth", f.source_name);
        require!(is_lossless(&doc, &parsed), "{} loses text", f.source_name);
    }
    Ok(format!("{}/100 exact and lossless", fixtures.len()))
}

fn reflow_order() -> Outcome {
    let cfg = ReflowConfig::default();
    for layout in [Layout::TwoColumn, Layout::Single] {
        for f in gen_generic(42, 20, layout) {
            let (doc, _) = ingest_layout_xml(&f.source_name, &f.xml).map_err(|e| e.to_string())?;
            let lines = reflow(&doc, &cfg);
            require!(line_texts(&lines) == f.logical_lines, "{} order differs", f.source_name);
        }
    }
    for seed in 0..200u64 {
        let doc = random_layout(seed);
        let first = reflow(&doc, &cfg);
        let out = multiset(first.iter().flat_map(|l| l.spans.iter().map(|s| s.text.as_str())));
        require!(out == multiset(doc.spans.iter().map(|s| s.text.as_str())), "layout {seed}: spans not conserved");
        let second = reflow(&relay(&doc, &first), &cfg);
        require!(line_texts(&first) == line_texts(&second), "layout {seed}: not idempotent");
    }
    Ok("40/40 fixtures exact, 200/200 layouts conserve and are idempotent".into())
}

fn held_out_segments(n: usize) -> Vec<(Segment, SectionLabel)> {
    let mut out = Vec::new();
    let mut seed = 9001;
    while out.len() < n {
        for layout in [Layout::Single, Layout::TwoColumn] {
            for f in gen_generic(seed, 20, layout) {
                out.extend(f.segments.iter().filter(|s| s.heading.is_some()).map(|s| (s.to_segment(), s.label)));
            }
        }
        seed += 1;
    }
    out.truncate(n);
    out
}

fn classification() -> Outcome {
    let model = default_model();
    let segs = held_out_segments(200);
    let correct = segs.iter().filter(|(s, l)| model.classify(s).label == *l).count();
    require!(correct * 100 >= 90 * segs.len(), "accuracy {correct}/{} below 90%", segs.len());
    for factor in [0.001, 0.5, 3.0, 1000.0] {
        let scaled = model.with_idf_scaled(factor);
        for (s, _) in &segs {
            let (a, b) = (model.classify(s), scaled.classify(s));
            require!(a.label == b.label, "argmax changed under idf x{factor}");
            require!((a.confidence - b.confidence).abs() < 1e-9, "confidence changed under idf x{factor}");
            require!((0.0..=1.0).contains(&a.confidence), "confidence {} out of bounds", a.confidence);
        }
    }
    Ok(format!(
        "{correct}/{} held-out correct ({:.1}%), scale invariance and bounds hold",
        segs.len(),
        100.0 * correct as f64 / segs.len() as f64
    ))
}

fn pair_dataset() -> Outcome {
    let worked = vec![CandidateProfile::new("P1", ["E11", "E12", "E13"]), CandidateProfile::new("P2", ["E21", "E22"])];
    let samples = build_pairs(&worked, 0).map_err(|e| e.to_string())?;
    let p1: Vec<(&str, &str)> = samples
        .iter()
        .filter(|s| s.label == PairLabel::Positive && s.a_candidate == "P1")
        .map(|s| (s.text_a.as_str(), s.text_b.as_str()))
        .collect();
    require!(p1 == [("E11", "E12"), ("E11", "E13"), ("E12", "E13")], "worked example gave {p1:?}");

    let mut checked = 0;
    for seed in 0..25u64 {
        let profiles = random_profiles(seed);
        let expected = oracle_positives(&profiles);
        let Ok(samples) = build_pairs(&profiles, seed) else {
            require!(expected.is_empty(), "seed {seed}: build failed with positives available");
            continue;
        };
        let pos: Vec<(String, String, String)> = samples
            .iter()
            .filter(|s| s.label == PairLabel::Positive)
            .map(|s| (s.a_candidate.clone(), s.text_a.clone(), s.text_b.clone()))
            .collect();
        let neg = samples.len() - pos.len();
        require!(pos == expected, "seed {seed}: positives differ from oracle");
        require!(neg == pos.len(), "seed {seed}: {neg} negatives vs {} positives", pos.len());
        let mut seen = HashSet::new();
        for s in samples.iter().filter(|s| s.label == PairLabel::Negative) {
            require!(s.a_candidate != s.b_candidate, "seed {seed}: same-candidate negative");
            require!(
                seen.insert(BTreeSet::from([s.text_a.clone(), s.text_b.clone()])),
                "seed {seed}: duplicate negative"
            );
        }
        require!(to_jsonl(&samples) == to_jsonl(&build_pairs(&profiles, seed).unwrap()), "seed {seed}: bytes differ");
        checked += 1;
    }
    Ok(format!("worked example exact, {checked}/25 sets match oracle, balanced and byte-deterministic"))
}

struct Fixed(Vec<f64>, std::sync::Mutex<usize>);

impl PairScorer for Fixed {
    fn score(&self, _: &str, _: &str) -> Result<PairScore, ScoreError> {
        let mut i = self.1.lock().unwrap();
        *i += 1;
        Ok(PairScore { value: self.0[*i - 1], scorer_id: "fixed" })
    }
    fn id(&self) -> &'static str {
        "fixed"
    }
}

fn random_text(rng: &mut SplitMix64) -> String {
    const VOCAB: [&str; 9] = ["rust", "go", "data", "team", "led", "the", "build", "ops", "x9"];
    (0..rng.range(0, 7)).map(|_| *rng.pick(&VOCAB)).collect::<Vec<_>>().join(" ")
}

fn scoring() -> Outcome {
    let mut rng = SplitMix64::new(77);
    for trial in 0..500 {
        let corpus: Vec<String> = (0..rng.range(1, 5)).map(|_| random_text(&mut rng)).collect();
        let s = fit_lexical(&corpus).map_err(|e| e.to_string())?;
        let (a, b) = (random_text(&mut rng), random_text(&mut rng));
        let ab = s.similarity(&a, &b);
        require!(ab == s.similarity(&b, &a), "trial {trial}: asymmetric");
        require!((0.0..=1.0).contains(&ab), "trial {trial}: {ab} out of range");
        let aa = s.similarity(&a, &a);
        require!(aa == 0.0 || (aa - 1.0).abs() <= 1e-9, "trial {trial}: self-score {aa}");
    }
    let sample = |label| PairSample {
        text_a: "x".into(),
        text_b: "y".into(),
        label,
        a_candidate: "p".into(),
        b_candidate: if label == PairLabel::Positive { "p" } else { "q" }.into(),
    };
    let labels: Vec<PairLabel> =
        (0..10).map(|i| if i < 5 { PairLabel::Positive } else { PairLabel::Negative }).collect();
    let samples: Vec<PairSample> = labels.iter().map(|l| sample(*l)).collect();
    let scores = vec![0.9, 0.5, 0.49, 0.7, 0.1, 0.5, 0.2, 0.8, 0.0, 0.3];
    let m = evaluate_pairs(&Fixed(scores.clone(), Default::default()), &samples, 0.5).map_err(|e| e.to_string())?;
    let c = &m.confusion;
    require!(
        (c.true_positive, c.false_negative, c.false_positive, c.true_negative) == (3, 2, 2, 3),
        "confusion {c:?} differs from hand tally"
    );
    let mut last_recall = f64::INFINITY;
    for t in [0.0, 0.1, 0.3, 0.5, 0.7, 0.9, 1.0] {
        let r = evaluate_pairs(&Fixed(scores.clone(), Default::default()), &samples, t).unwrap().recall;
        require!(r <= last_recall, "recall rose at threshold {t}");
        last_recall = r;
    }

    let (url, rx) = stub(200, r#"{"score":1.7}"#, Duration::ZERO);
    let remote = RemoteScorer::new(&url, Duration::from_secs(2), 4).map_err(|e| e.to_string())?;
    let v = remote.score("a \"b\"", "c").map_err(|e| e.to_string())?.value;
    require!(v == 1.0, "1.7 clamped to {v}");
    let req = rx.recv().map_err(|e| e.to_string())?;
    require!(req.request_line == "POST /score HTTP/1.1", "request line {}", req.request_line);
    require!(
        req.body == br#"{"text_a":"a \"b\"","text_b":"c"}"#,
        "request body {:?}",
        String::from_utf8_lossy(&req.body)
    );
    let (url, _rx) = stub(200, r#"{"score":-0.2}"#, Duration::ZERO);
    let v =
        RemoteScorer::new(&url, Duration::from_secs(2), 4).unwrap().score("a", "b").map_err(|e| e.to_string())?.value;
    require!(v == 0.0, "-0.2 clamped to {v}");
    let (url, _rx) = stub(200, r#"{"score":0.5}"#, Duration::from_millis(1500));
    let started = Instant::now();
    let err = RemoteScorer::new(&url, Duration::from_millis(200), 4).unwrap().score("a", "b");
    require!(matches!(err, Err(ScoreError::ScorerUnavailable(_))), "slow stub gave {err:?}");
    require!(started.elapsed() < Duration::from_millis(1200), "timeout took {:?}", started.elapsed());
    Ok("500 property trials, 10-pair tally (3/2/2/3), stub remote: bytes, clamping, timeout".into())
}

fn ranking() -> Outcome {
    let profiles: Vec<CandidateProfile> =
        gen_linkedin(42, 12).iter().map(|f| CandidateProfile::from_resume(&f.truth)).collect();
    let target = profiles.iter().position(|p| !p.experiences.is_empty()).ok_or("no experiences")?;
    let jd = profiles[target].experiences[0].clone();
    let scorer = fit_for_ranking(&jd, &profiles).map_err(|e| e.to_string())?;
    let base = rank_candidates(&jd, &profiles, &scorer).map_err(|e| e.to_string())?;
    require!(
        base[0].candidate_id == profiles[target].candidate_id,
        "verbatim candidate ranked {}",
        base[0].candidate_id
    );

    let mut rng = SplitMix64::new(5);
    for i in 0..50 {
        let mut shuffled = profiles.clone();
        rng.shuffle(&mut shuffled);
        require!(rank_candidates(&jd, &shuffled, &scorer).unwrap() == base, "shuffle {i} changed the ranking");
    }
    let extra: Vec<String> =
        gen_linkedin(43, 30).iter().flat_map(|f| CandidateProfile::from_resume(&f.truth).experiences).collect();
    let mut corpus: Vec<&str> = extra.iter().map(String::as_str).collect();
    corpus.extend(profiles.iter().flat_map(|p| p.experiences.iter().map(String::as_str)));
    let fixed = fit_lexical(&corpus).unwrap();
    let before = rank_candidates(&jd, &profiles, &fixed).unwrap();
    for i in 0..100 {
        let who = rng.below(profiles.len());
        let mut changed = profiles.clone();
        changed[who].experiences.push(rng.pick(&extra).clone());
        let after = rank_candidates(&jd, &changed, &fixed).unwrap();
        let score = |r: &[resumekit::ScoredCandidate]| {
            r.iter().find(|c| c.candidate_id == profiles[who].candidate_id).unwrap().score
        };
        require!(score(&after) >= score(&before), "trial {i}: appending lowered the score");
    }

    let five = vec![
        CandidateProfile::new("e", ["rust compiler work", "wrote rust tooling"]),
        CandidateProfile::new("d", ["taught chemistry"]),
        CandidateProfile::new("c", ["rust services in production"]),
        CandidateProfile::new("b", Vec::<String>::new()),
        CandidateProfile::new("a", ["taught chemistry"]),
    ];
    let jd = "rust services";
    let scorer = fit_for_ranking(jd, &five).unwrap();
    let mut oracle: Vec<(String, f64)> = five
        .iter()
        .map(|p| {
            let best = p.experiences.iter().map(|e| scorer.similarity(jd, e)).fold(0.0, f64::max);
            (p.candidate_id.clone(), best)
        })
        .collect();
    oracle.sort_by(|x, y| y.1.total_cmp(&x.1).then(x.0.cmp(&y.0)));
    let got: Vec<(String, f64)> = rank_candidates_with(jd, &five, &scorer, Aggregation::Max)
        .unwrap()
        .into_iter()
        .map(|c| (c.candidate_id, c.score))
        .collect();
    require!(got == oracle, "5-candidate order {got:?} vs oracle {oracle:?}");
    Ok("verbatim jd ranks 1, 50 shuffles stable, 100 append trials monotone, 5-candidate oracle exact".into())
}

struct Served {
    child: Child,
    base: String,
}

impl Drop for Served {
    fn drop(&mut self) {
        let _ = self.child.kill();
        let _ = self.child.wait();
    }
}

fn spawn_server(store: &std::path::Path, cwd: &std::path::Path) -> Result<Served, String> {
    let mut child = Command::new(env!("CARGO_BIN_EXE_resumekit"))
        .args(["serve", "--bind", "127.0.0.1:0", "--store"])
        .arg(store)
        .current_dir(cwd)
        .env_remove("RESUME_SCORER_URL")
        .env_remove("RESUME_STORE_DIR")
        .env_remove("RESUME_BIND_ADDR")
        .stdout(Stdio::piped())
        .stderr(Stdio::null())
        .spawn()
        .map_err(|e| e.to_string())?;
    let mut line = String::new();
    BufReader::new(child.stdout.take().unwrap()).read_line(&mut line).map_err(|e| e.to_string())?;
    let base = line.trim().strip_prefix("listening on ").ok_or(format!("unexpected banner {line:?}"))?.to_string();
    Ok(Served { child, base })
}

fn service_e2e() -> Outcome {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let store = dir.path().join("store");
    let client = reqwest::blocking::Client::new();
    let get = |url: String| client.get(url).send().and_then(|r| r.error_for_status()).map_err(|e| e.to_string());

    let server = spawn_server(&store, dir.path())?;
    let mut form = reqwest::blocking::multipart::Form::new();
    for f in gen_linkedin(42, 3) {
        form = form.part("files", reqwest::blocking::multipart::Part::bytes(f.xml).file_name(f.source_name));
    }
    let resp = client.post(format!("{}/api/resumes", server.base)).multipart(form).send().map_err(|e| e.to_string())?;
    require!(resp.status() == 202, "upload returned {}", resp.status());
    let job_id =
        resp.json::<serde_json::Value>().map_err(|e| e.to_string())?["job_id"].as_str().unwrap_or("").to_string();
    let job: serde_json::Value =
        get(format!("{}/api/jobs/{job_id}", server.base))?.json().map_err(|e| e.to_string())?;
    let ids: Vec<String> = job["outcomes"]
        .as_array()
        .into_iter()
        .flatten()
        .filter_map(|o| o["candidate_id"].as_str().map(String::from))
        .collect();
    require!(ids.len() == 3, "job outcomes {job}");

    let comment = "solid, \"distributed\" systems";
    let status = client
        .post(format!("{}/api/comments", server.base))
        .json(&serde_json::json!({"candidate_id": ids[0], "stage": "screening", "text": comment}))
        .send()
        .map_err(|e| e.to_string())?
        .status();
    require!(status == 204, "comment returned {status}");
    let export = get(format!("{}/api/export.csv", server.base))?.bytes().map_err(|e| e.to_string())?.to_vec();
    let mut reader = csv::Reader::from_reader(export.as_slice());
    let header = reader.headers().map_err(|e| e.to_string())?.clone();
    let col = header.iter().position(|h| h == "comment_screening").ok_or("no comment column")?;
    let rows: Vec<csv::StringRecord> = reader.records().collect::<Result<_, _>>().map_err(|e| e.to_string())?;
    let row = rows.iter().find(|r| r.get(0) == Some(ids[0].as_str())).ok_or("commented row missing")?;
    require!(row.get(col) == Some(comment), "comment cell {:?}", row.get(col));

    let mut profiles = Vec::new();
    for id in &ids {
        let bytes = get(format!("{}/api/resumes/{id}", server.base))?.bytes().map_err(|e| e.to_string())?;
        profiles.push(CandidateProfile::from_resume(&read_json(&bytes).map_err(|e| e.to_string())?));
    }
    let jd = profiles[1].experiences.first().cloned().unwrap_or_else(|| "software engineer".into());
    let cfg = AppConfig::default();
    let expected = rank_with_config(&jd, &profiles, &profiles, &cfg.scoring, cfg.ranking.aggregation)
        .map_err(|e| e.to_string())?;
    let ranked = client
        .post(format!("{}/api/rank", server.base))
        .json(&serde_json::json!({"job_description": jd}))
        .send()
        .and_then(|r| r.bytes())
        .map_err(|e| e.to_string())?;
    require!(ranked.to_vec() == rank_response_json(&expected), "rank bytes differ from library");
    drop(server);

    let server = spawn_server(&store, dir.path())?;
    let again = get(format!("{}/api/export.csv", server.base))?.bytes().map_err(|e| e.to_string())?;
    require!(again.to_vec() == export, "export changed across restart");
    Ok("3 uploads parsed, comment exported, export identical after restart, rank bytes match library".into())
}

fn main() {
    let checks: [Check; 8] = [
        ("format detection", Some(1), detection),
        ("lossless standard-format parsing", Some(5), lossless_parsing),
        ("reading-order recovery", None, reflow_order),
        ("section classification", None, classification),
        ("pair dataset", None, pair_dataset),
        ("pair scoring and evaluation", None, scoring),
        ("ranking", None, ranking),
        ("service end to end", Some(10), service_e2e),
    ];
    // a warm model keeps its one-time fit out of the timed checks
    let _ = default_model();
    let mut failed = 0;
    for (i, (name, limit, f)) in checks.into_iter().enumerate() {
        if !run_check(i + 1, name, limit.map(Duration::from_secs), f) {
            failed += 1;
        }
    }
    println!("acceptance: {} passed, {failed} failed", 8 - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}

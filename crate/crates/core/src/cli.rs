//! Command-line front end.
//!
//! Every subcommand is deterministic for fixed inputs, flags and seeds.
//! Per-file work runs in parallel, but output follows input order.

use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::config::AppConfig;
use crate::exporters::{emit_csv_with_stages, NoComments};
use crate::fixtures::write_fixtures;
use crate::pair_dataset::{build_pairs, read_jsonl, split, to_jsonl, CandidateProfile, PairLabel};
use crate::pipeline::{FormatChoice, Pipeline};
use crate::ranking::{rank_with_config, Aggregation};
use crate::resume::{emit_json, read_json, ParsedResume};
use crate::scoring::{build_scorer, evaluate_pairs, EvalMetrics, ScorerKind};
use crate::service::{rank_response_json, serve};

#[derive(Debug, Parser)]
#[command(name = "resumekit", version, about = "Resume parsing and candidate ranking")]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalArgs,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct GlobalArgs {
    /// TOML configuration file.
    #[arg(long, global = true, value_name = "PATH")]
    pub config: Option<PathBuf>,
    /// Machine-readable JSON output.
    #[arg(long, global = true)]
    pub json: bool,
    /// Worker threads for per-file work (default: logical CPUs).
    #[arg(long, global = true, value_name = "N")]
    pub jobs: Option<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutFormat {
    Json,
    Csv,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Parse documents into resume JSON or one combined CSV.
    Parse {
        #[arg(required = true, value_name = "FILE")]
        files: Vec<PathBuf>,
        #[arg(long, value_enum, default_value_t = FormatChoice::Auto)]
        format: FormatChoice,
        #[arg(long = "out", value_enum, default_value_t = OutFormat::Json)]
        out: OutFormat,
        /// Write to this file instead of stdout.
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Build the balanced experience-pair dataset from a resume directory.
    Pairs {
        #[arg(value_name = "RESUME_DIR")]
        dir: PathBuf,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_name = "PATH")]
        out: PathBuf,
        /// Also write candidate-disjoint `.train.jsonl` and `.test.jsonl` splits.
        #[arg(long, value_name = "FRACTION")]
        split: Option<f64>,
    },
    /// Rank candidates against a job description.
    Rank {
        #[arg(long, value_name = "FILE")]
        jd: PathBuf,
        #[arg(long, value_name = "DIR")]
        resumes: PathBuf,
        #[arg(long, value_enum)]
        scorer: Option<ScorerKind>,
        #[arg(long, value_enum)]
        aggregation: Option<Aggregation>,
    },
    /// Score a pair dataset and report accuracy, precision and recall.
    Eval {
        #[arg(long, value_name = "PATH")]
        dataset: PathBuf,
        #[arg(long)]
        threshold: Option<f64>,
        #[arg(long, value_enum)]
        scorer: Option<ScorerKind>,
    },
    /// Write seeded synthetic fixtures with ground-truth sidecars.
    GenFixtures {
        #[arg(long, default_value_t = 42)]
        seed: u64,
        #[arg(long, default_value_t = 10)]
        count: usize,
        #[arg(long, value_name = "DIR")]
        out: PathBuf,
    },
    /// Run the HTTP service.
    Serve {
        #[arg(long, value_name = "ADDR")]
        bind: Option<String>,
        #[arg(long, value_name = "DIR")]
        store: Option<PathBuf>,
    },
}

impl ValueEnum for ScorerKind {
    fn value_variants<'a>() -> &'a [Self] {
        &[ScorerKind::Lexical, ScorerKind::Remote]
    }
    fn to_possible_value(&self) -> Option<clap::builder::PossibleValue> {
        Some(match self {
            ScorerKind::Lexical => clap::builder::PossibleValue::new("lexical"),
            ScorerKind::Remote => clap::builder::PossibleValue::new("remote"),
        })
    }
}

impl ValueEnum for Aggregation {
    fn value_variants<'a>() -> &'a [Self] {
        &[Aggregation::Max, Aggregation::Mean]
    }
    fn to_possible_value(&self) -> Option<clap::builder::PossibleValue> {
        Some(match self {
            Aggregation::Max => clap::builder::PossibleValue::new("max"),
            Aggregation::Mean => clap::builder::PossibleValue::new("mean"),
        })
    }
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Failure(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Failure(_) => 1,
        }
    }
}

fn fail(e: impl std::fmt::Display) -> CliError {
    CliError::Failure(e.to_string())
}

pub fn run(cli: Cli) -> Result<(), CliError> {
    let mut cfg = AppConfig::resolve(cli.global.config.as_deref()).map_err(|e| CliError::Usage(e.to_string()))?;
    if let Some(n) = cli.global.jobs {
        if n == 0 {
            return Err(CliError::Usage("--jobs must be at least 1".into()));
        }
        // a second build only fails if a pool already exists, which is fine
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    }
    let json = cli.global.json;
    match cli.command {
        Command::Parse { files, format, out, output } => cmd_parse(&cfg, &files, format, out, output.as_deref()),
        Command::Pairs { dir, seed, out, split } => cmd_pairs(&cfg, &dir, seed, &out, split, json),
        Command::Rank { jd, resumes, scorer, aggregation } => {
            if let Some(kind) = scorer {
                cfg.scoring.kind = kind;
                cfg.scoring.validate().map_err(|e| CliError::Usage(e.to_string()))?;
            }
            let aggregation = aggregation.unwrap_or(cfg.ranking.aggregation);
            cmd_rank(&cfg, &jd, &resumes, aggregation, json)
        }
        Command::Eval { dataset, threshold, scorer } => {
            if let Some(kind) = scorer {
                cfg.scoring.kind = kind;
            }
            let threshold = threshold.unwrap_or(cfg.scoring.threshold);
            if !threshold.is_finite() {
                return Err(CliError::Usage("--threshold must be finite".into()));
            }
            cmd_eval(&cfg, &dataset, threshold, json)
        }
        Command::GenFixtures { seed, count, out } => {
            let paths = write_fixtures(&out, seed, count).map_err(fail)?;
            if json {
                let names: Vec<String> = paths.iter().map(|p| p.display().to_string()).collect();
                print_json(&serde_json::json!({ "seed": seed, "count": count, "files": names }))
            } else {
                write_stdout(format!("wrote {} fixtures to {}\n", paths.len(), out.display()).as_bytes())
            }
        }
        Command::Serve { bind, store } => {
            if let Some(b) = bind {
                cfg.service.bind_addr = b;
            }
            if let Some(s) = store {
                cfg.service.store_dir = s;
            }
            cmd_serve(cfg, json)
        }
    }
}

fn write_stdout(bytes: &[u8]) -> Result<(), CliError> {
    let mut out = std::io::stdout().lock();
    out.write_all(bytes).and_then(|_| out.flush()).map_err(fail)
}

fn print_json<T: Serialize>(value: &T) -> Result<(), CliError> {
    let mut bytes = serde_json::to_vec_pretty(value).map_err(fail)?;
    bytes.push(b'\n');
    write_stdout(&bytes)
}

fn report_failures(failures: &[(PathBuf, String)]) -> Result<(), CliError> {
    if failures.is_empty() {
        return Ok(());
    }
    for (path, err) in failures {
        eprintln!("error: {}: {err}", path.display());
    }
    Err(CliError::Failure(format!("{} file(s) failed", failures.len())))
}

fn source_name(path: &Path) -> String {
    path.file_name().map(|n| n.to_string_lossy().into_owned()).unwrap_or_else(|| path.display().to_string())
}

fn parse_files(pipeline: &Pipeline, files: &[PathBuf], choice: FormatChoice) -> Vec<Result<ParsedResume, String>> {
    files
        .par_iter()
        .map(|path| {
            let bytes = std::fs::read(path).map_err(|e| e.to_string())?;
            pipeline.parse_bytes(&source_name(path), &bytes, choice).map(|o| o.resume).map_err(|e| e.to_string())
        })
        .collect()
}

fn cmd_parse(
    cfg: &AppConfig,
    files: &[PathBuf],
    choice: FormatChoice,
    out: OutFormat,
    output: Option<&Path>,
) -> Result<(), CliError> {
    let pipeline = Pipeline::from_config(cfg).map_err(fail)?;
    let results = parse_files(&pipeline, files, choice);
    let mut resumes = Vec::new();
    let mut failures = Vec::new();
    for (path, r) in files.iter().zip(results) {
        match r {
            Ok(resume) => resumes.push(resume),
            Err(e) => failures.push((path.clone(), e)),
        }
    }
    let bytes = match out {
        OutFormat::Json => resumes
            .iter()
            .flat_map(|r| {
                let mut b = emit_json(r);
                b.push(b'\n');
                b
            })
            .collect(),
        OutFormat::Csv => emit_csv_with_stages(&resumes, &NoComments, &cfg.service.stages),
    };
    match output {
        Some(path) => std::fs::write(path, &bytes).map_err(|e| fail(format!("{}: {e}", path.display())))?,
        None => write_stdout(&bytes)?,
    }
    report_failures(&failures)
}

/// Resume JSON (`*.json` but not `*.truth.json`) is read as is; `.xml` and
/// `.txt` documents go through the pipeline. Files are taken in name order.
fn load_resume_dir(pipeline: &Pipeline, dir: &Path) -> Result<Vec<ParsedResume>, CliError> {
    let mut paths: Vec<PathBuf> = std::fs::read_dir(dir)
        .map_err(|e| fail(format!("{}: {e}", dir.display())))?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| {
            let name = source_name(p);
            p.is_file() && !name.ends_with(".truth.json") && [".json", ".xml", ".txt"].iter().any(|x| name.ends_with(x))
        })
        .collect();
    paths.sort();
    if paths.is_empty() {
        return Err(CliError::Usage(format!("no resumes found in {}", dir.display())));
    }
    let results: Vec<Result<ParsedResume, String>> = paths
        .par_iter()
        .map(|p| {
            if source_name(p).ends_with(".json") {
                let bytes = std::fs::read(p).map_err(|e| e.to_string())?;
                read_json(&bytes).map_err(|e| e.to_string())
            } else {
                let bytes = std::fs::read(p).map_err(|e| e.to_string())?;
                pipeline
                    .parse_bytes(&source_name(p), &bytes, FormatChoice::Auto)
                    .map(|o| o.resume)
                    .map_err(|e| e.to_string())
            }
        })
        .collect();
    let mut resumes = Vec::new();
    let mut failures = Vec::new();
    for (p, r) in paths.into_iter().zip(results) {
        match r {
            Ok(r) => resumes.push(r),
            Err(e) => failures.push((p, e)),
        }
    }
    report_failures(&failures)?;
    Ok(resumes)
}

fn cmd_pairs(
    cfg: &AppConfig,
    dir: &Path,
    seed: u64,
    out: &Path,
    frac: Option<f64>,
    json: bool,
) -> Result<(), CliError> {
    let pipeline = Pipeline::from_config(cfg).map_err(fail)?;
    let profiles: Vec<CandidateProfile> =
        load_resume_dir(&pipeline, dir)?.iter().map(CandidateProfile::from_resume).collect();
    let samples = build_pairs(&profiles, seed).map_err(fail)?;
    std::fs::write(out, to_jsonl(&samples)).map_err(|e| fail(format!("{}: {e}", out.display())))?;
    let positives = samples.iter().filter(|s| s.label == PairLabel::Positive).count();
    let mut summary = serde_json::json!({
        "candidates": profiles.len(),
        "positives": positives,
        "negatives": samples.len() - positives,
        "samples": samples.len(),
        "out": out.display().to_string(),
    });
    if let Some(f) = frac {
        let s = split(&samples, f, seed).map_err(fail)?;
        let stem = out.with_extension("");
        let train = PathBuf::from(format!("{}.train.jsonl", stem.display()));
        let test = PathBuf::from(format!("{}.test.jsonl", stem.display()));
        std::fs::write(&train, to_jsonl(&s.train)).map_err(fail)?;
        std::fs::write(&test, to_jsonl(&s.test)).map_err(fail)?;
        summary["split"] = serde_json::to_value(&s.report).map_err(fail)?;
    }
    if json {
        print_json(&summary)
    } else {
        write_stdout(
            format!(
                "{} samples ({} positive, {} negative) from {} candidates -> {}\n",
                samples.len(),
                positives,
                samples.len() - positives,
                profiles.len(),
                out.display()
            )
            .as_bytes(),
        )
    }
}

fn cmd_rank(cfg: &AppConfig, jd: &Path, dir: &Path, aggregation: Aggregation, json: bool) -> Result<(), CliError> {
    let jd_text = std::fs::read_to_string(jd).map_err(|e| fail(format!("{}: {e}", jd.display())))?;
    let pipeline = Pipeline::from_config(cfg).map_err(fail)?;
    let resumes = load_resume_dir(&pipeline, dir)?;
    let profiles: Vec<CandidateProfile> = resumes.iter().map(CandidateProfile::from_resume).collect();
    let ranked = rank_with_config(&jd_text, &profiles, &profiles, &cfg.scoring, aggregation).map_err(fail)?;
    if json {
        let mut bytes = rank_response_json(&ranked);
        bytes.push(b'\n');
        return write_stdout(&bytes);
    }
    let mut text = String::from("rank  score   candidate_id      name\n");
    for c in &ranked {
        let name = resumes.iter().find(|r| r.candidate_id == c.candidate_id).map_or("", |r| r.name.as_str());
        text.push_str(&format!("{:<5} {:.4}  {}  {}\n", c.rank, c.score, c.candidate_id, name));
    }
    write_stdout(text.as_bytes())
}

fn cmd_eval(cfg: &AppConfig, dataset: &Path, threshold: f64, json: bool) -> Result<(), CliError> {
    let file = std::fs::File::open(dataset).map_err(|e| fail(format!("{}: {e}", dataset.display())))?;
    let samples = read_jsonl(std::io::BufReader::new(file)).map_err(fail)?;
    // idf comes from the distinct texts of the dataset, in first-seen order
    let mut corpus: Vec<&str> = Vec::new();
    for s in &samples {
        for t in [s.text_a.as_str(), s.text_b.as_str()] {
            if !corpus.contains(&t) {
                corpus.push(t);
            }
        }
    }
    let scorer = build_scorer(&cfg.scoring, &corpus).map_err(fail)?;
    let m = evaluate_pairs(scorer.as_ref(), &samples, threshold).map_err(fail)?;
    if json {
        print_json(&m)
    } else {
        write_stdout(eval_table(&m).as_bytes())
    }
}

fn eval_table(m: &EvalMetrics) -> String {
    let c = &m.confusion;
    format!(
        "samples    {}\nthreshold  {}\naccuracy   {:.4}\nprecision  {:.4}\nrecall     {:.4}\n\n           pred+  pred-\nactual+    {:<6} {}\nactual-    {:<6} {}\n",
        m.samples, m.threshold, m.accuracy, m.precision, m.recall, c.true_positive, c.false_negative, c.false_positive, c.true_negative
    )
}

fn cmd_serve(cfg: AppConfig, json: bool) -> Result<(), CliError> {
    let rt = tokio::runtime::Builder::new_multi_thread().enable_all().build().map_err(fail)?;
    rt.block_on(serve(cfg, |addr| {
        let line = if json {
            format!("{}\n", serde_json::json!({ "listening": addr.to_string() }))
        } else {
            format!("listening on http://{addr}\n")
        };
        let _ = write_stdout(line.as_bytes());
    }))
    .map_err(fail)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn clap_definition_is_consistent() {
        use clap::CommandFactory;
        Cli::command().debug_assert();
    }

    #[test]
    fn parse_requires_files() {
        let err = Cli::try_parse_from(["resumekit", "parse", "--out", "csv"]).unwrap_err();
        assert_eq!(err.exit_code(), 2);
    }

    #[test]
    fn global_flags_after_subcommand() {
        let cli = Cli::try_parse_from(["resumekit", "eval", "--dataset", "d.jsonl", "--json", "--jobs", "2"]).unwrap();
        assert!(cli.global.json);
        assert_eq!(cli.global.jobs, Some(2));
    }
}

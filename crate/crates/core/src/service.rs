//! HTTP service: batch upload, resume lookup, comments, ranking and export.
//!
//! Handlers run concurrently. The record store sits behind a read-write
//! lock, so appends are serialized while reads proceed in parallel. Parsing
//! and scoring are blocking work and run off the async executor.

use std::collections::HashMap;
use std::net::SocketAddr;
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::{Arc, Mutex, RwLock};

use axum::extract::{DefaultBodyLimit, Multipart, Path, State};
use axum::http::{header, StatusCode};
use axum::response::{IntoResponse, Response};
use axum::routing::{get, post};
use axum::{Json, Router};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::config::{AppConfig, ClassifierKind};
use crate::exporters::emit_csv_with_stages;
use crate::format_detector::DocumentFormat;
use crate::pair_dataset::CandidateProfile;
use crate::pipeline::{FormatChoice, Pipeline, PipelineError};
use crate::ranking::{rank_with_config, RankError, ScoredCandidate};
use crate::resume::emit_json;
use crate::scoring::{ScoreError, ScorerKind};
use crate::store::{RecordStore, StoreError, StoredResume};

#[derive(Debug, Error)]
pub enum ServiceError {
    #[error(transparent)]
    Store(#[from] StoreError),
    #[error(transparent)]
    Pipeline(#[from] PipelineError),
    #[error("binding {addr}: {source}")]
    Bind { addr: String, source: std::io::Error },
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum JobStatus {
    Pending,
    Done,
    Failed,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FileOutcome {
    pub filename: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub verdict: Option<DocumentFormat>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub candidate_id: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BatchJob {
    pub job_id: String,
    pub status: JobStatus,
    pub outcomes: Vec<FileOutcome>,
}

/// One row of the rank response.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RankRow {
    pub candidate_id: String,
    pub score: f64,
    pub rank: usize,
}

impl From<&ScoredCandidate> for RankRow {
    fn from(c: &ScoredCandidate) -> Self {
        RankRow { candidate_id: c.candidate_id.clone(), score: c.score, rank: c.rank }
    }
}

pub struct AppState {
    pub config: AppConfig,
    pipeline: Pipeline,
    store: RwLock<RecordStore>,
    jobs: Mutex<HashMap<String, BatchJob>>,
    next_job: AtomicU64,
    // jobs live in memory only; the boot time keeps ids unique across restarts
    boot_tag: String,
}

impl AppState {
    pub fn new(config: AppConfig) -> Result<Arc<Self>, ServiceError> {
        let pipeline = Pipeline::from_config(&config)?;
        let store = RecordStore::open(&config.service.store_dir)?;
        tracing::info!(records = store.len(), dir = %config.service.store_dir.display(), "store replayed");
        Ok(Arc::new(AppState {
            config,
            pipeline,
            store: RwLock::new(store),
            jobs: Mutex::new(HashMap::new()),
            next_job: AtomicU64::new(1),
            boot_tag: format!("{:x}", chrono::Utc::now().timestamp_millis()),
        }))
    }

    fn read_store(&self) -> std::sync::RwLockReadGuard<'_, RecordStore> {
        self.store.read().unwrap_or_else(|e| e.into_inner())
    }

    fn write_store(&self) -> std::sync::RwLockWriteGuard<'_, RecordStore> {
        self.store.write().unwrap_or_else(|e| e.into_inner())
    }

    fn put_job(&self, job: BatchJob) {
        self.jobs.lock().unwrap_or_else(|e| e.into_inner()).insert(job.job_id.clone(), job);
    }
}

struct ApiError(StatusCode, String);

impl ApiError {
    fn new(status: StatusCode, msg: impl Into<String>) -> Self {
        ApiError(status, msg.into())
    }
}

impl IntoResponse for ApiError {
    fn into_response(self) -> Response {
        (self.0, Json(serde_json::json!({ "error": self.1 }))).into_response()
    }
}

impl From<StoreError> for ApiError {
    fn from(e: StoreError) -> Self {
        tracing::error!(error = %e, "store failure");
        ApiError::new(StatusCode::INTERNAL_SERVER_ERROR, e.to_string())
    }
}

impl From<tokio::task::JoinError> for ApiError {
    fn from(e: tokio::task::JoinError) -> Self {
        ApiError::new(StatusCode::INTERNAL_SERVER_ERROR, format!("worker failed: {e}"))
    }
}

pub fn router(state: Arc<AppState>) -> Router {
    // per-file caps are enforced while reading; this only bounds a whole batch
    let body_limit = state.config.service.max_file_bytes.saturating_mul(64);
    Router::new()
        .route("/api/resumes", post(upload).get(list_resumes))
        .route("/api/resumes/{id}", get(get_resume))
        .route("/api/jobs/{id}", get(get_job))
        .route("/api/export.csv", get(export_csv))
        .route("/api/comments", post(post_comment))
        .route("/api/rank", post(rank))
        .route("/api/config", get(get_config))
        .layer(DefaultBodyLimit::max(body_limit))
        .with_state(state)
}

/// Binds, reports the bound address, then serves until ctrl-c.
pub async fn serve(config: AppConfig, on_bound: impl FnOnce(SocketAddr)) -> Result<(), ServiceError> {
    let addr = config.service.bind_addr.clone();
    let state = tokio::task::spawn_blocking(move || AppState::new(config))
        .await
        .map_err(|e| ServiceError::Io(std::io::Error::other(e)))??;
    let listener = tokio::net::TcpListener::bind(&addr).await.map_err(|source| ServiceError::Bind { addr, source })?;
    on_bound(listener.local_addr()?);
    axum::serve(listener, router(state))
        .with_graceful_shutdown(async {
            let _ = tokio::signal::ctrl_c().await;
        })
        .await?;
    Ok(())
}

struct Upload {
    filename: String,
    bytes: Result<Vec<u8>, String>,
}

async fn read_uploads(mut multipart: Multipart, cap: usize) -> Result<Vec<Upload>, ApiError> {
    let bad = |e: axum::extract::multipart::MultipartError| ApiError::new(StatusCode::BAD_REQUEST, e.body_text());
    let mut files = Vec::new();
    while let Some(mut field) = multipart.next_field().await.map_err(bad)? {
        let Some(filename) = field.file_name().map(str::to_string) else { continue };
        let mut buf = Vec::new();
        let mut too_large = false;
        while let Some(chunk) = field.chunk().await.map_err(bad)? {
            if buf.len() + chunk.len() > cap {
                too_large = true;
                buf.clear();
            } else if !too_large {
                buf.extend_from_slice(&chunk);
            }
        }
        let bytes = if too_large { Err(format!("file exceeds the {cap}-byte limit")) } else { Ok(buf) };
        files.push(Upload { filename, bytes });
    }
    Ok(files)
}

async fn upload(State(state): State<Arc<AppState>>, multipart: Multipart) -> Result<Response, ApiError> {
    let files = read_uploads(multipart, state.config.service.max_file_bytes).await?;
    if files.is_empty() {
        return Err(ApiError::new(StatusCode::BAD_REQUEST, "no files in upload"));
    }
    let n = state.next_job.fetch_add(1, Ordering::Relaxed);
    let job_id = format!("job-{}-{n}", state.boot_tag);
    state.put_job(BatchJob { job_id: job_id.clone(), status: JobStatus::Pending, outcomes: Vec::new() });

    let worker = state.clone();
    let id = job_id.clone();
    let result = tokio::task::spawn_blocking(move || process_batch(&worker, &id, files)).await;
    if let Err(e) = result {
        tracing::error!(job = %job_id, error = %e, "batch worker failed");
        state.put_job(BatchJob { job_id: job_id.clone(), status: JobStatus::Failed, outcomes: Vec::new() });
    }
    Ok((StatusCode::ACCEPTED, Json(serde_json::json!({ "job_id": job_id }))).into_response())
}

fn process_batch(state: &AppState, job_id: &str, files: Vec<Upload>) {
    let parsed: Vec<_> = files
        .par_iter()
        .map(|f| {
            let bytes = f.bytes.as_ref().map_err(Clone::clone)?;
            state.pipeline.parse_bytes(&f.filename, bytes, FormatChoice::Auto).map_err(|e| e.to_string())
        })
        .collect();
    let mut outcomes = Vec::with_capacity(files.len());
    {
        let mut store = state.write_store();
        for (file, result) in files.iter().zip(parsed) {
            let outcome = match result {
                Ok(out) => {
                    let id = out.resume.candidate_id.clone();
                    let stored =
                        StoredResume { resume: out.resume, format: out.format, source_name: file.filename.clone() };
                    match store.upsert_resume(stored) {
                        Ok(()) => FileOutcome {
                            filename: file.filename.clone(),
                            verdict: Some(out.format),
                            candidate_id: Some(id),
                            error: None,
                        },
                        Err(e) => FileOutcome {
                            filename: file.filename.clone(),
                            verdict: Some(out.format),
                            candidate_id: None,
                            error: Some(format!("persisting: {e}")),
                        },
                    }
                }
                Err(e) => {
                    FileOutcome { filename: file.filename.clone(), verdict: None, candidate_id: None, error: Some(e) }
                }
            };
            outcomes.push(outcome);
        }
    }
    tracing::info!(job = job_id, files = outcomes.len(), "batch processed");
    state.put_job(BatchJob { job_id: job_id.to_string(), status: JobStatus::Done, outcomes });
}

async fn get_job(State(state): State<Arc<AppState>>, Path(id): Path<String>) -> Result<Json<BatchJob>, ApiError> {
    let jobs = state.jobs.lock().unwrap_or_else(|e| e.into_inner());
    jobs.get(&id).cloned().map(Json).ok_or_else(|| ApiError::new(StatusCode::NOT_FOUND, format!("unknown job {id}")))
}

#[derive(Serialize)]
struct ResumeSummary {
    candidate_id: String,
    name: String,
    headline: Option<String>,
    format: DocumentFormat,
    source_name: String,
}

async fn list_resumes(State(state): State<Arc<AppState>>) -> Json<Vec<ResumeSummary>> {
    let store = state.read_store();
    Json(
        store
            .resumes()
            .map(|s| ResumeSummary {
                candidate_id: s.resume.candidate_id.clone(),
                name: s.resume.name.clone(),
                headline: s.resume.headline.clone(),
                format: s.format,
                source_name: s.source_name.clone(),
            })
            .collect(),
    )
}

async fn get_resume(State(state): State<Arc<AppState>>, Path(id): Path<String>) -> Result<Response, ApiError> {
    let store = state.read_store();
    let stored =
        store.get(&id).ok_or_else(|| ApiError::new(StatusCode::NOT_FOUND, format!("unknown candidate {id}")))?;
    Ok(([(header::CONTENT_TYPE, "application/json")], emit_json(&stored.resume)).into_response())
}

async fn export_csv(State(state): State<Arc<AppState>>) -> Response {
    let store = state.read_store();
    let resumes: Vec<_> = store.resumes().map(|s| s.resume.clone()).collect();
    let bytes = emit_csv_with_stages(&resumes, &*store, &state.config.service.stages);
    (
        [
            (header::CONTENT_TYPE, "text/csv; charset=utf-8"),
            (header::CONTENT_DISPOSITION, "attachment; filename=\"candidates.csv\""),
        ],
        bytes,
    )
        .into_response()
}

#[derive(Deserialize)]
struct CommentRequest {
    candidate_id: String,
    stage: String,
    text: String,
}

async fn post_comment(
    State(state): State<Arc<AppState>>,
    Json(req): Json<CommentRequest>,
) -> Result<StatusCode, ApiError> {
    if !state.config.service.stages.contains(&req.stage) {
        return Err(ApiError::new(StatusCode::UNPROCESSABLE_ENTITY, format!("unknown stage {}", req.stage)));
    }
    tokio::task::spawn_blocking(move || {
        let mut store = state.write_store();
        if !store.contains(&req.candidate_id) {
            return Err(ApiError::new(StatusCode::NOT_FOUND, format!("unknown candidate {}", req.candidate_id)));
        }
        store.upsert_comment(&req.candidate_id, &req.stage, &req.text)?;
        Ok(StatusCode::NO_CONTENT)
    })
    .await?
}

#[derive(Deserialize)]
struct RankRequest {
    job_description: String,
    candidate_ids: Option<Vec<String>>,
}

async fn rank(
    State(state): State<Arc<AppState>>,
    Json(req): Json<RankRequest>,
) -> Result<Json<Vec<RankRow>>, ApiError> {
    if req.job_description.trim().is_empty() {
        return Err(ApiError::new(StatusCode::UNPROCESSABLE_ENTITY, "job_description is empty"));
    }
    let (profiles, background) = {
        let store = state.read_store();
        let all: Vec<CandidateProfile> = store.resumes().map(|s| CandidateProfile::from_resume(&s.resume)).collect();
        let chosen: Vec<CandidateProfile> = match &req.candidate_ids {
            None => all.clone(),
            Some(ids) => ids
                .iter()
                .map(|id| {
                    store
                        .get(id)
                        .map(|s| CandidateProfile::from_resume(&s.resume))
                        .ok_or_else(|| ApiError::new(StatusCode::NOT_FOUND, format!("unknown candidate {id}")))
                })
                .collect::<Result<_, _>>()?,
        };
        (chosen, all)
    };
    if profiles.is_empty() {
        return Ok(Json(Vec::new()));
    }
    let ranked = tokio::task::spawn_blocking(move || {
        rank_with_config(
            &req.job_description,
            &profiles,
            &background,
            &state.config.scoring,
            state.config.ranking.aggregation,
        )
    })
    .await?;
    match ranked {
        Ok(r) => Ok(Json(r.iter().map(RankRow::from).collect())),
        Err(RankError::Scorer(ScoreError::ScorerUnavailable(msg))) => {
            Err(ApiError::new(StatusCode::SERVICE_UNAVAILABLE, format!("scorer unavailable: {msg}")))
        }
        Err(RankError::EmptyJobDescription) => {
            Err(ApiError::new(StatusCode::UNPROCESSABLE_ENTITY, "job_description is empty"))
        }
        Err(e) => Err(ApiError::new(StatusCode::INTERNAL_SERVER_ERROR, e.to_string())),
    }
}

#[derive(Serialize)]
struct ConfigView {
    stages: Vec<String>,
    scorer_kind: ScorerKind,
    classifier_kind: ClassifierKind,
    max_file_bytes: usize,
}

async fn get_config(State(state): State<Arc<AppState>>) -> Json<ConfigView> {
    let c = &state.config;
    Json(ConfigView {
        stages: c.service.stages.clone(),
        scorer_kind: c.scoring.kind,
        classifier_kind: c.classifier.kind,
        max_file_bytes: c.service.max_file_bytes,
    })
}

/// Rank response bytes exactly as the service would send them.
pub fn rank_response_json(ranked: &[ScoredCandidate]) -> Vec<u8> {
    let rows: Vec<RankRow> = ranked.iter().map(RankRow::from).collect();
    serde_json::to_vec(&rows).expect("rank rows serialize")
}

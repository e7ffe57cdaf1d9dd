//! C ABI over `resumekit`.
//!
//! Handles are opaque and owned by the caller once returned; free them with
//! the matching `*_free` function. Strings returned through `out_*`
//! pointers are NUL-terminated UTF-8 and must be released with
//! [`resume_string_free`]. Every entry point returns a [`ResumeStatus`];
//! on failure [`resume_last_error_message`] describes the error for the
//! calling thread. Panics never cross the boundary.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;
use std::sync::Arc;

use resumekit::format_detector::{detect_format, DocumentFormat, FormatSignature};
use resumekit::ingest::{ingest_auto, IngestError};
use resumekit::linkedin_parser::ParseError;
use resumekit::pair_dataset::CandidateProfile;
use resumekit::pipeline::{default_model, FormatChoice, Pipeline, PipelineError};
use resumekit::ranking::{fit_for_ranking, rank_candidates, RankError};
use resumekit::resume::emit_json;
use resumekit::scoring::{fit_lexical, LexicalScorer};
use resumekit::section_classifier::{CentroidModel, ClassifyError, ConvertError};
use resumekit::service::rank_response_json;

pub const RESUME_FORMAT_AUTO: u32 = 0;
pub const RESUME_FORMAT_LINKEDIN: u32 = 1;
pub const RESUME_FORMAT_GENERIC: u32 = 2;

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ResumeStatus {
    Ok = 0,
    NullArgument = 1,
    InvalidUtf8 = 2,
    InvalidArgument = 3,
    MalformedInput = 4,
    NotLinkedinFormat = 5,
    StructureError = 6,
    ClassifierError = 7,
    ScorerError = 8,
    Panic = 99,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ResumeDocumentFormat {
    Linkedin = 0,
    Generic = 1,
}

/// Parsing pipeline with its section classifier.
pub struct ResumeModel {
    pipeline: Pipeline,
}

/// Fitted lexical pair scorer.
pub struct ResumeScorer {
    inner: LexicalScorer,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

struct Failure(ResumeStatus, String);

impl From<PipelineError> for Failure {
    fn from(e: PipelineError) -> Self {
        let status = match &e {
            PipelineError::Ingest(IngestError::MalformedInput(_)) => ResumeStatus::MalformedInput,
            PipelineError::Parse(ParseError::NotLinkedInFormat(_)) => ResumeStatus::NotLinkedinFormat,
            PipelineError::Parse(ParseError::StructureError(_)) => ResumeStatus::StructureError,
            PipelineError::Convert(ConvertError::StructureError(_)) => ResumeStatus::StructureError,
            PipelineError::Convert(ConvertError::Classifier(_)) => ResumeStatus::ClassifierError,
            PipelineError::Config(_) | PipelineError::Model(_) => ResumeStatus::InvalidArgument,
        };
        Failure(status, e.to_string())
    }
}

impl From<ClassifyError> for Failure {
    fn from(e: ClassifyError) -> Self {
        Failure(ResumeStatus::ClassifierError, e.to_string())
    }
}

/// Runs `f`, recording any error or panic for `resume_last_error_message`.
fn guard(f: impl FnOnce() -> Result<(), Failure>) -> ResumeStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => ResumeStatus::Ok,
        Ok(Err(Failure(status, msg))) => {
            set_error(msg);
            status
        }
        Err(payload) => {
            let msg = payload
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| payload.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "unknown panic".into());
            set_error(format!("panic: {msg}"));
            ResumeStatus::Panic
        }
    }
}

fn null(name: &str) -> Failure {
    Failure(ResumeStatus::NullArgument, format!("{name} is null"))
}

unsafe fn str_arg<'a>(p: *const c_char, name: &str) -> Result<&'a str, Failure> {
    if p.is_null() {
        return Err(null(name));
    }
    CStr::from_ptr(p).to_str().map_err(|e| Failure(ResumeStatus::InvalidUtf8, format!("{name}: {e}")))
}

unsafe fn bytes_arg<'a>(p: *const u8, len: usize, name: &str) -> Result<&'a [u8], Failure> {
    if len == 0 {
        return Ok(&[]);
    }
    if p.is_null() {
        return Err(null(name));
    }
    Ok(std::slice::from_raw_parts(p, len))
}

unsafe fn write_out<T>(out: *mut T, value: T) -> Result<(), Failure> {
    if out.is_null() {
        return Err(null("output pointer"));
    }
    out.write(value);
    Ok(())
}

fn into_c_string(bytes: Vec<u8>) -> Result<*mut c_char, Failure> {
    CString::new(bytes)
        .map(CString::into_raw)
        .map_err(|_| Failure(ResumeStatus::InvalidArgument, "output contains a NUL byte".into()))
}

/// Message for the last failed call on this thread, or null. Valid until
/// the next failing call on the same thread; do not free.
#[no_mangle]
pub extern "C" fn resume_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Releases a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn resume_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Pipeline with the built-in section model.
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn resume_model_default(out: *mut *mut ResumeModel) -> ResumeStatus {
    guard(|| {
        let model = Box::new(ResumeModel { pipeline: Pipeline::default() });
        write_out(out, Box::into_raw(model))
    })
}

/// Pipeline with a centroid model read from its text serialization.
///
/// # Safety
/// `model_text` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn resume_model_load(model_text: *const c_char, out: *mut *mut ResumeModel) -> ResumeStatus {
    guard(|| {
        let text = str_arg(model_text, "model_text")?;
        let model = CentroidModel::from_text(text)?;
        let pipeline = Pipeline { classifier: Arc::new(model), ..Pipeline::default() };
        write_out(out, Box::into_raw(Box::new(ResumeModel { pipeline })))
    })
}

/// Text serialization of the built-in section model.
///
/// # Safety
/// `out_text` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn resume_model_default_text(out_text: *mut *mut c_char) -> ResumeStatus {
    guard(|| write_out(out_text, into_c_string(default_model().to_text().into_bytes())?))
}

/// # Safety
/// `model` must come from this library and not have been freed. Null is
/// ignored.
#[no_mangle]
pub unsafe extern "C" fn resume_model_free(model: *mut ResumeModel) {
    if !model.is_null() {
        drop(Box::from_raw(model));
    }
}

/// Parses one document into resume JSON. `format` is one of the
/// `RESUME_FORMAT_*` constants. A null `model` uses the built-in one.
///
/// # Safety
/// `source_name` must be NUL-terminated, `bytes` must point to `len`
/// readable bytes and `out_json` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn resume_parse_document(
    model: *const ResumeModel,
    source_name: *const c_char,
    bytes: *const u8,
    len: usize,
    format: u32,
    out_json: *mut *mut c_char,
) -> ResumeStatus {
    guard(|| {
        let name = str_arg(source_name, "source_name")?;
        let data = bytes_arg(bytes, len, "bytes")?;
        let choice = match format {
            RESUME_FORMAT_AUTO => FormatChoice::Auto,
            RESUME_FORMAT_LINKEDIN => FormatChoice::LinkedIn,
            RESUME_FORMAT_GENERIC => FormatChoice::Generic,
            other => return Err(Failure(ResumeStatus::InvalidArgument, format!("unknown format {other}"))),
        };
        let fallback;
        let pipeline = match model.as_ref() {
            Some(m) => &m.pipeline,
            None => {
                fallback = Pipeline::default();
                &fallback
            }
        };
        let outcome = pipeline.parse_bytes(name, data, choice)?;
        write_out(out_json, into_c_string(emit_json(&outcome.resume))?)
    })
}

/// Runs format detection with the default signature.
///
/// # Safety
/// `bytes` must point to `len` readable bytes and `out_format` must be a
/// valid pointer.
#[no_mangle]
pub unsafe extern "C" fn resume_detect_format(
    bytes: *const u8,
    len: usize,
    out_format: *mut ResumeDocumentFormat,
) -> ResumeStatus {
    guard(|| {
        let data = bytes_arg(bytes, len, "bytes")?;
        let (doc, _, _) =
            ingest_auto("input", data).map_err(|e| Failure(ResumeStatus::MalformedInput, e.to_string()))?;
        let format = match detect_format(&doc, &FormatSignature::default()).format {
            DocumentFormat::LinkedInFormat => ResumeDocumentFormat::Linkedin,
            DocumentFormat::Generic => ResumeDocumentFormat::Generic,
        };
        write_out(out_format, format)
    })
}

/// Fits a lexical scorer on `count` NUL-terminated texts.
///
/// # Safety
/// `texts` must point to `count` valid string pointers and `out` must be a
/// valid pointer.
#[no_mangle]
pub unsafe extern "C" fn resume_scorer_fit(
    texts: *const *const c_char,
    count: usize,
    out: *mut *mut ResumeScorer,
) -> ResumeStatus {
    guard(|| {
        if count > 0 && texts.is_null() {
            return Err(null("texts"));
        }
        let ptrs = if count == 0 { &[][..] } else { std::slice::from_raw_parts(texts, count) };
        let corpus = ptrs.iter().map(|p| str_arg(*p, "texts[i]")).collect::<Result<Vec<_>, _>>()?;
        let inner = fit_lexical(&corpus).map_err(|e| Failure(ResumeStatus::ScorerError, e.to_string()))?;
        write_out(out, Box::into_raw(Box::new(ResumeScorer { inner })))
    })
}

/// Similarity of two texts in [0, 1].
///
/// # Safety
/// `scorer` must be live, `a` and `b` NUL-terminated and `out_score` valid.
#[no_mangle]
pub unsafe extern "C" fn resume_scorer_score(
    scorer: *const ResumeScorer,
    a: *const c_char,
    b: *const c_char,
    out_score: *mut f64,
) -> ResumeStatus {
    guard(|| {
        let s = scorer.as_ref().ok_or_else(|| null("scorer"))?;
        let (a, b) = (str_arg(a, "a")?, str_arg(b, "b")?);
        write_out(out_score, s.inner.similarity(a, b))
    })
}

/// # Safety
/// `scorer` must come from this library and not have been freed. Null is
/// ignored.
#[no_mangle]
pub unsafe extern "C" fn resume_scorer_free(scorer: *mut ResumeScorer) {
    if !scorer.is_null() {
        drop(Box::from_raw(scorer));
    }
}

/// Ranks candidates with a lexical scorer fitted on the request.
///
/// Request: `{"job_description": "...", "candidates": [{"candidate_id":
/// "...", "experiences": ["..."]}]}`. Response: a JSON array of
/// `{"candidate_id", "score", "rank"}` in rank order.
///
/// # Safety
/// `request_json` must be NUL-terminated and `out_json` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn resume_rank_json(request_json: *const c_char, out_json: *mut *mut c_char) -> ResumeStatus {
    guard(|| {
        #[derive(serde::Deserialize)]
        struct Request {
            job_description: String,
            candidates: Vec<CandidateProfile>,
        }
        let text = str_arg(request_json, "request_json")?;
        let req: Request =
            serde_json::from_str(text).map_err(|e| Failure(ResumeStatus::InvalidArgument, format!("request: {e}")))?;
        let profiles: Vec<CandidateProfile> =
            req.candidates.into_iter().map(|p| CandidateProfile::new(p.candidate_id, p.experiences)).collect();
        let rank_err = |e: RankError| {
            let status = match e {
                RankError::Scorer(_) => ResumeStatus::ScorerError,
                _ => ResumeStatus::InvalidArgument,
            };
            Failure(status, e.to_string())
        };
        if req.job_description.trim().is_empty() {
            return Err(rank_err(RankError::EmptyJobDescription));
        }
        if profiles.is_empty() {
            return Err(rank_err(RankError::NoCandidates));
        }
        let scorer = fit_for_ranking(&req.job_description, &profiles).map_err(|e| rank_err(e.into()))?;
        let ranked = rank_candidates(&req.job_description, &profiles, &scorer).map_err(rank_err)?;
        write_out(out_json, into_c_string(rank_response_json(&ranked))?)
    })
}

//! Append-only NDJSON record log of resume and comment upserts.
//!
//! State is rebuilt by replaying the log in order; the last write for a key
//! wins. Resumes keep their first-insertion position so exports are stable
//! across restarts.

use std::collections::BTreeMap;
use std::fs::{File, OpenOptions};
use std::io::Write;
use std::path::{Path, PathBuf};

use chrono::{DateTime, SecondsFormat, Utc};
use indexmap::IndexMap;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::exporters::CommentLookup;
use crate::format_detector::DocumentFormat;
use crate::resume::ParsedResume;

pub const LOG_FILE: &str = "records.ndjson";

#[derive(Debug, Error)]
pub enum StoreError {
    #[error("record log {path} line {line}: {reason}")]
    Corrupt { path: PathBuf, line: usize, reason: String },
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StoredResume {
    pub resume: ParsedResume,
    pub format: DocumentFormat,
    pub source_name: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Comment {
    pub text: String,
    pub updated_at: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
enum Record {
    ResumeUpsert(StoredResume),
    CommentUpsert { candidate_id: String, stage: String, text: String, updated_at: String },
}

#[derive(Debug)]
pub struct RecordStore {
    path: PathBuf,
    log: File,
    resumes: IndexMap<String, StoredResume>,
    comments: BTreeMap<(String, String), Comment>,
}

impl RecordStore {
    /// Opens (creating if needed) the log in `dir` and replays it.
    pub fn open(dir: &Path) -> Result<Self, StoreError> {
        std::fs::create_dir_all(dir)?;
        let path = dir.join(LOG_FILE);
        let mut store = RecordStore {
            log: OpenOptions::new().create(true).append(true).read(true).open(&path)?,
            path,
            resumes: IndexMap::new(),
            comments: BTreeMap::new(),
        };
        store.replay()?;
        Ok(store)
    }

    fn replay(&mut self) -> Result<(), StoreError> {
        let bytes = std::fs::read(&self.path)?;
        let mut offset = 0;
        let mut line_no = 0;
        while offset < bytes.len() {
            line_no += 1;
            let end = bytes[offset..].iter().position(|b| *b == b'\n').map(|i| offset + i);
            let line = &bytes[offset..end.unwrap_or(bytes.len())];
            if line.iter().all(u8::is_ascii_whitespace) {
                offset = end.map_or(bytes.len(), |e| e + 1);
                continue;
            }
            let Some(end) = end else {
                // a torn final append is cut off so later appends stay parseable
                tracing::warn!(path = %self.path.display(), line = line_no, "truncating torn final record");
                self.log.set_len(offset as u64)?;
                return Ok(());
            };
            let rec = serde_json::from_slice::<Record>(line).map_err(|e| StoreError::Corrupt {
                path: self.path.clone(),
                line: line_no,
                reason: e.to_string(),
            })?;
            self.apply(rec);
            offset = end + 1;
        }
        Ok(())
    }

    fn apply(&mut self, rec: Record) {
        match rec {
            Record::ResumeUpsert(stored) => {
                self.resumes.insert(stored.resume.candidate_id.clone(), stored);
            }
            Record::CommentUpsert { candidate_id, stage, text, updated_at } => {
                self.comments.insert((candidate_id, stage), Comment { text, updated_at });
            }
        }
    }

    fn append(&mut self, rec: Record) -> Result<(), StoreError> {
        let mut line = serde_json::to_vec(&rec).expect("record serialization is infallible");
        line.push(b'\n');
        self.log.write_all(&line)?;
        self.log.flush()?;
        self.apply(rec);
        Ok(())
    }

    pub fn upsert_resume(&mut self, stored: StoredResume) -> Result<(), StoreError> {
        self.append(Record::ResumeUpsert(stored))
    }

    pub fn upsert_comment(&mut self, candidate_id: &str, stage: &str, text: &str) -> Result<(), StoreError> {
        self.upsert_comment_at(candidate_id, stage, text, Utc::now())
    }

    pub fn upsert_comment_at(
        &mut self,
        candidate_id: &str,
        stage: &str,
        text: &str,
        at: DateTime<Utc>,
    ) -> Result<(), StoreError> {
        self.append(Record::CommentUpsert {
            candidate_id: candidate_id.to_string(),
            stage: stage.to_string(),
            text: text.to_string(),
            updated_at: at.to_rfc3339_opts(SecondsFormat::Millis, true),
        })
    }

    pub fn path(&self) -> &Path {
        &self.path
    }

    pub fn get(&self, candidate_id: &str) -> Option<&StoredResume> {
        self.resumes.get(candidate_id)
    }

    pub fn contains(&self, candidate_id: &str) -> bool {
        self.resumes.contains_key(candidate_id)
    }

    pub fn len(&self) -> usize {
        self.resumes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.resumes.is_empty()
    }

    /// Resumes in first-insertion order.
    pub fn resumes(&self) -> impl Iterator<Item = &StoredResume> {
        self.resumes.values()
    }

    pub fn comment_entry(&self, candidate_id: &str, stage: &str) -> Option<&Comment> {
        self.comments.get(&(candidate_id.to_string(), stage.to_string()))
    }

    pub fn comments_for(&self, candidate_id: &str) -> BTreeMap<String, Comment> {
        self.comments.iter().filter(|((c, _), _)| c == candidate_id).map(|((_, s), v)| (s.clone(), v.clone())).collect()
    }
}

impl CommentLookup for RecordStore {
    fn comment(&self, candidate_id: &str, stage: &str) -> Option<&str> {
        self.comment_entry(candidate_id, stage).map(|c| c.text.as_str())
    }
}

//! Recruiter CSV and batch JSON export.

use std::collections::BTreeMap;

use crate::resume::{emit_json, ExperienceEntry, ParsedResume, ResumeSection, SectionLabel};

/// Comment stages in column order; `decision` gets its own bare column.
pub const DEFAULT_STAGES: [&str; 5] = ["screening", "interview_1", "interview_2", "final", "decision"];

const DECISION_STAGE: &str = "decision";

const FIXED_COLUMNS: [&str; 13] = [
    "candidate_id",
    "name",
    "headline",
    "location",
    "email",
    "phone",
    "summary",
    "experience",
    "education",
    "skills",
    "certifications",
    "languages",
    "recommendations",
];

const SECTION_COLUMNS: [SectionLabel; 7] = [
    SectionLabel::Summary,
    SectionLabel::Experience,
    SectionLabel::Education,
    SectionLabel::Skills,
    SectionLabel::Certifications,
    SectionLabel::Languages,
    SectionLabel::Recommendations,
];

/// Read access to stored comments.
pub trait CommentLookup {
    fn comment(&self, candidate_id: &str, stage: &str) -> Option<&str>;
}

impl CommentLookup for BTreeMap<(String, String), String> {
    fn comment(&self, candidate_id: &str, stage: &str) -> Option<&str> {
        self.get(&(candidate_id.to_string(), stage.to_string())).map(String::as_str)
    }
}

/// No comments at all.
pub struct NoComments;

impl CommentLookup for NoComments {
    fn comment(&self, _: &str, _: &str) -> Option<&str> {
        None
    }
}

pub fn csv_header<S: AsRef<str>>(stages: &[S]) -> Vec<String> {
    let mut cols: Vec<String> = FIXED_COLUMNS.iter().map(|c| c.to_string()).collect();
    cols.extend(stages.iter().map(|s| {
        let s = s.as_ref();
        if s == DECISION_STAGE {
            s.to_string()
        } else {
            format!("comment_{s}")
        }
    }));
    cols
}

/// Newlines become the two characters `\n` so every record is one line.
fn flatten(s: &str) -> String {
    s.replace("\r\n", "\\n").replace(['\n', '\r'], "\\n")
}

fn entry_text(e: &ExperienceEntry) -> String {
    let mut parts = vec![e.header_line()];
    parts.extend(e.date_line());
    if !e.description.is_empty() {
        parts.push(e.description.clone());
    }
    parts.join("\n")
}

fn section_cell(section: Option<&ResumeSection>) -> String {
    let Some(s) = section else { return String::new() };
    let mut items: Vec<String> = Vec::new();
    if !s.free_text.is_empty() && (s.entries.is_empty() || !s.label.has_entries()) {
        items.push(s.free_text.clone());
    }
    items.extend(s.entries.iter().map(entry_text));
    flatten(&items.join(" | "))
}

pub fn emit_csv(resumes: &[ParsedResume], comments: &dyn CommentLookup) -> Vec<u8> {
    emit_csv_with_stages(resumes, comments, &DEFAULT_STAGES)
}

/// RFC 4180 with CRLF rows, one row per resume in input order.
pub fn emit_csv_with_stages<S: AsRef<str>>(
    resumes: &[ParsedResume],
    comments: &dyn CommentLookup,
    stages: &[S],
) -> Vec<u8> {
    let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::CRLF).from_writer(Vec::new());
    w.write_record(csv_header(stages)).expect("in-memory csv write");
    for r in resumes {
        let contact = |k: &str| flatten(r.contact.get(k).map(String::as_str).unwrap_or(""));
        let mut row = vec![
            r.candidate_id.clone(),
            flatten(&r.name),
            flatten(r.headline.as_deref().unwrap_or("")),
            flatten(r.location.as_deref().unwrap_or("")),
            contact("email"),
            contact("phone"),
        ];
        row.extend(SECTION_COLUMNS.iter().map(|l| section_cell(r.section(*l))));
        row.extend(stages.iter().map(|s| flatten(comments.comment(&r.candidate_id, s.as_ref()).unwrap_or(""))));
        w.write_record(&row).expect("in-memory csv write");
    }
    w.into_inner().expect("in-memory csv flush")
}

/// JSON array of canonical resume objects.
pub fn emit_batch_json(resumes: &[ParsedResume]) -> Vec<u8> {
    let mut out = b"[".to_vec();
    for (i, r) in resumes.iter().enumerate() {
        if i > 0 {
            out.push(b',');
        }
        out.extend(emit_json(r));
    }
    out.push(b']');
    out
}

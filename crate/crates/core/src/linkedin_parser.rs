//! Lossless parser for the standard (LinkedIn profile export) layout.
//!
//! The layout has four font tiers: a name printed once at the largest size,
//! section headings at the second-largest size, entry subheadings (a third
//! size, or bold body text when only three sizes exist) and body text at the
//! modal size.

use std::sync::OnceLock;

use regex::Regex;
use thiserror::Error;

use crate::doc_model::{assemble_lines_auto, Line, SpanDocument};
use crate::format_detector::{build_histogram, detect_format, FormatSignature};
use crate::lexicon::HeadingLexicon;
use crate::resume::{month_number, DateEnd, ExperienceEntry, ParsedResume, ResumeSection, SectionLabel, YearMonth};
use crate::text::normalize_ws;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ParseError {
    #[error("document is not in the standard format: {0}")]
    NotLinkedInFormat(String),
    #[error("structure error: {0}")]
    StructureError(String),
}

/// Parses with the default signature thresholds and the given lexicon.
pub fn parse_linkedin(doc: &SpanDocument, lexicon: &HeadingLexicon) -> Result<ParsedResume, ParseError> {
    let sig = FormatSignature { lexicon: lexicon.clone(), ..FormatSignature::default() };
    parse_linkedin_with(doc, &sig)
}

pub fn parse_linkedin_with(doc: &SpanDocument, sig: &FormatSignature) -> Result<ParsedResume, ParseError> {
    let verdict = detect_format(doc, sig);
    if !verdict.is_linkedin() {
        let failed = verdict.confidence_notes.iter().find(|n| n.ends_with("fail")).cloned().unwrap_or_default();
        return Err(ParseError::NotLinkedInFormat(failed));
    }
    parse_tiers(doc, &sig.lexicon)
}

struct Tiers {
    name: f64,
    heading: f64,
    body: f64,
    subheading: Option<f64>,
}

impl Tiers {
    fn is_subheading(&self, line: &Line) -> bool {
        match (self.subheading, line.font_size()) {
            (Some(sub), Some(size)) => size == sub,
            (None, Some(size)) => size == self.body && line.is_bold(),
            _ => false,
        }
    }
}

enum Block {
    Preamble,
    Section(usize),
}

struct OpenSection {
    section: ResumeSection,
    free_lines: Vec<String>,
    entries: Vec<Vec<String>>,
}

fn parse_tiers(doc: &SpanDocument, lexicon: &HeadingLexicon) -> Result<ParsedResume, ParseError> {
    let hist = build_histogram(doc).map_err(|e| ParseError::StructureError(e.to_string()))?;
    let sizes = &hist.distinct_sizes_desc;
    if sizes.len() < 3 || hist.count(sizes[0]) != 1 {
        return Err(ParseError::StructureError("no unique largest-font span".into()));
    }
    let tiers = Tiers {
        name: sizes[0],
        heading: sizes[1],
        body: doc.body_font_size().unwrap_or(sizes[sizes.len() - 1]),
        subheading: sizes.get(2).copied().filter(|_| sizes.len() >= 4),
    };

    let lines = assemble_lines_auto(doc);
    let mut name: Option<String> = None;
    let mut preamble: Vec<String> = Vec::new();
    let mut sections: Vec<OpenSection> = Vec::new();
    let mut block = Block::Preamble;

    for line in &lines {
        let size = line.font_size();
        if size == Some(tiers.name) && name.is_none() {
            name = Some(line.text.clone());
            continue;
        }
        if size == Some(tiers.heading) {
            let label = match lexicon.lookup(&line.text) {
                Some(l) if !sections.iter().any(|s| s.section.label == l) => l,
                _ => SectionLabel::Other,
            };
            sections.push(OpenSection {
                section: ResumeSection::new(label, line.text.clone()),
                free_lines: Vec::new(),
                entries: Vec::new(),
            });
            block = Block::Section(sections.len() - 1);
            continue;
        }
        match block {
            Block::Preamble => preamble.push(line.text.clone()),
            Block::Section(i) => {
                let open = &mut sections[i];
                if open.section.label.has_entries() && tiers.is_subheading(line) {
                    open.entries.push(vec![line.text.clone()]);
                } else if let Some(entry) = open.entries.last_mut() {
                    entry.push(line.text.clone());
                } else {
                    open.free_lines.push(line.text.clone());
                }
            }
        }
    }

    let name = name.ok_or_else(|| ParseError::StructureError("no largest-font span".into()))?;
    if sections.is_empty() {
        return Err(ParseError::StructureError("no section headings".into()));
    }

    let mut resume = ParsedResume::new(&doc.source_name, &name);
    let mut rest = preamble.into_iter();
    resume.headline = rest.next();
    resume.location = rest.next();
    for line in rest {
        let key = contact_kind(&line);
        let mut slot = key.to_string();
        let mut n = 2;
        while resume.contact.contains_key(&slot) {
            slot = format!("{key}_{n}");
            n += 1;
        }
        resume.contact.insert(slot, line);
    }

    for open in sections {
        let mut section = open.section;
        section.free_text = open.free_lines.join("\n");
        section.entries = open.entries.iter().map(|lines| parse_entry_header(lines).into_entry()).collect();
        resume.sections.push(section);
    }
    Ok(resume)
}

/// Classifies a contact line as `email`, `phone` or `link`.
pub fn contact_kind(line: &str) -> &'static str {
    if email_re().is_match(line.trim()) {
        "email"
    } else if is_phone(line) {
        "phone"
    } else {
        "link"
    }
}

pub(crate) fn email_re() -> &'static Regex {
    static RE: OnceLock<Regex> = OnceLock::new();
    RE.get_or_init(|| Regex::new(r"^[A-Za-z0-9._%+\-]+@[A-Za-z0-9.\-]+\.[A-Za-z]{2,}$").unwrap())
}

pub(crate) fn is_phone(s: &str) -> bool {
    let s = s.trim();
    let digits = s.chars().filter(|c| c.is_ascii_digit()).count();
    (7..=15).contains(&digits) && s.chars().all(|c| c.is_ascii_digit() || " +-().".contains(c))
}

/// Result of splitting an entry block into header fields and description.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EntryHeader {
    pub title: String,
    pub organization: Option<String>,
    pub date_from: Option<YearMonth>,
    pub date_to: Option<DateEnd>,
    pub duration_text: Option<String>,
    pub remainder: Vec<String>,
}

impl EntryHeader {
    pub fn into_entry(self) -> ExperienceEntry {
        ExperienceEntry {
            title: self.title,
            organization: self.organization,
            date_from: self.date_from,
            date_to: self.date_to,
            duration_text: self.duration_text,
            description: normalize_ws(&self.remainder.join(" ")),
        }
    }
}

fn date_re() -> &'static Regex {
    static RE: OnceLock<Regex> = OnceLock::new();
    RE.get_or_init(|| {
        Regex::new(
            r"^(?:([A-Za-z]+)\s+)?(\d{4})\s*[-–—]\s*(?:(?:([A-Za-z]+)\s+)?(\d{4})|([Pp]resent))(?:\s*\(([^()]+)\))?$",
        )
        .unwrap()
    })
}

/// Parses `Month YYYY - Month YYYY (duration)` (months optional, `Present`
/// allowed as the end).
pub fn parse_date_line(line: &str) -> Option<(YearMonth, DateEnd, Option<String>)> {
    let caps = date_re().captures(line.trim())?;
    let month = |i: usize| -> Option<Option<u8>> {
        match caps.get(i) {
            Some(m) => month_number(m.as_str()).map(Some),
            None => Some(None),
        }
    };
    let from = YearMonth::new(caps[2].parse().ok()?, month(1)?);
    let to = if caps.get(5).is_some() {
        DateEnd::Present
    } else {
        DateEnd::Date(YearMonth::new(caps[4].parse().ok()?, month(3)?))
    };
    let duration = caps.get(6).map(|m| m.as_str().trim().to_string());
    Some((from, to, duration))
}

/// Splits an entry block: `title at organization`, an optional date line,
/// then description lines.
pub fn parse_entry_header<S: AsRef<str>>(lines: &[S]) -> EntryHeader {
    let mut iter = lines.iter().map(|l| l.as_ref().trim().to_string()).peekable();
    let first = iter.next().unwrap_or_default();
    let (title, organization) = match first.rfind(" at ") {
        Some(i) => (first[..i].trim().to_string(), Some(first[i + 4..].trim().to_string())),
        None => (first, None),
    };
    let mut header =
        EntryHeader { title, organization, date_from: None, date_to: None, duration_text: None, remainder: Vec::new() };
    if let Some(dates) = iter.peek().and_then(|l| parse_date_line(l)) {
        iter.next();
        header.date_from = Some(dates.0);
        header.date_to = Some(dates.1);
        header.duration_text = dates.2;
    }
    header.remainder = iter.collect();
    header
}

/// Whitespace-normalized concatenation of every input span, in line order,
/// compared against the parsed resume's text content. Dashes are folded so
/// re-rendered date lines compare equal.
pub fn is_lossless(doc: &SpanDocument, resume: &ParsedResume) -> bool {
    let input: Vec<String> = assemble_lines_auto(doc).into_iter().map(|l| l.text).collect();
    fold(&input.join(" ")) == fold(&resume.text_content().join(" "))
}

fn fold(s: &str) -> String {
    normalize_ws(&s.replace(['–', '—', '-'], " - "))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn header_with_org_and_dates() {
        let h = parse_entry_header(&["Software Engineer at Acme Corp", "January 2015 - March 2017 (2 years 3 months)"]);
        assert_eq!(h.title, "Software Engineer");
        assert_eq!(h.organization.as_deref(), Some("Acme Corp"));
        assert_eq!(h.date_from, Some(YearMonth::new(2015, Some(1))));
        assert_eq!(h.date_to, Some(DateEnd::Date(YearMonth::new(2017, Some(3)))));
        assert_eq!(h.duration_text.as_deref(), Some("2 years 3 months"));
        assert!(h.remainder.is_empty());
    }

    #[test]
    fn degenerate_header() {
        let h = parse_entry_header(&["Consultant"]);
        assert_eq!(h.title, "Consultant");
        assert_eq!(h.organization, None);
        assert_eq!(h.date_from, None);
        assert_eq!(h.date_to, None);
    }

    #[test]
    fn present_end_date() {
        let (from, to, dur) = parse_date_line("June 2019 - Present").unwrap();
        assert_eq!(from, YearMonth::new(2019, Some(6)));
        assert_eq!(to, DateEnd::Present);
        assert_eq!(dur, None);
        assert!(parse_date_line("2010 – 2014").is_some());
        assert!(parse_date_line("Smarch 2010 - 2014").is_none());
        assert!(parse_date_line("worked 2010 - 2014 on things").is_none());
    }

    #[test]
    fn last_at_wins() {
        let h = parse_entry_header(&["Head of Data at Scale at Big Co", "built things"]);
        assert_eq!(h.title, "Head of Data at Scale");
        assert_eq!(h.organization.as_deref(), Some("Big Co"));
        assert_eq!(h.remainder, vec!["built things"]);
    }

    #[test]
    fn non_date_second_line_is_description() {
        let h = parse_entry_header(&["Analyst at Bank", "Modelled risk.", "More."]);
        assert_eq!(h.date_from, None);
        assert_eq!(h.into_entry().description, "Modelled risk. More.");
    }

    #[test]
    fn contact_kinds() {
        assert_eq!(contact_kind("jane.doe@example.com"), "email");
        assert_eq!(contact_kind("+1 (555) 010-2030"), "phone");
        assert_eq!(contact_kind("www.linkedin.com/in/janedoe"), "link");
        assert_eq!(contact_kind("12345"), "link");
    }
}

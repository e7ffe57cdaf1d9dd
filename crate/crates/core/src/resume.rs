//! Structured resume representation and its `resume/v1` JSON encoding.

use std::fmt;
use std::str::FromStr;

use indexmap::IndexMap;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use sha2::{Digest, Sha256};
use thiserror::Error;

/// Schema identifier of the JSON encoding produced by [`emit_json`].
pub const RESUME_SCHEMA: &str = "resume/v1";

/// Standard resume categories. Declaration order is the tie-break order used
/// by classifiers.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum SectionLabel {
    Bio,
    Summary,
    Experience,
    Education,
    Skills,
    Certifications,
    Languages,
    Honors,
    Publications,
    Projects,
    Recommendations,
    Other,
}

impl SectionLabel {
    pub const ALL: [SectionLabel; 12] = [
        SectionLabel::Bio,
        SectionLabel::Summary,
        SectionLabel::Experience,
        SectionLabel::Education,
        SectionLabel::Skills,
        SectionLabel::Certifications,
        SectionLabel::Languages,
        SectionLabel::Honors,
        SectionLabel::Publications,
        SectionLabel::Projects,
        SectionLabel::Recommendations,
        SectionLabel::Other,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            SectionLabel::Bio => "Bio",
            SectionLabel::Summary => "Summary",
            SectionLabel::Experience => "Experience",
            SectionLabel::Education => "Education",
            SectionLabel::Skills => "Skills",
            SectionLabel::Certifications => "Certifications",
            SectionLabel::Languages => "Languages",
            SectionLabel::Honors => "Honors",
            SectionLabel::Publications => "Publications",
            SectionLabel::Projects => "Projects",
            SectionLabel::Recommendations => "Recommendations",
            SectionLabel::Other => "Other",
        }
    }

    /// Sections whose content is split into dated entries.
    pub fn has_entries(self) -> bool {
        matches!(self, SectionLabel::Experience | SectionLabel::Education)
    }
}

impl fmt::Display for SectionLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Error, Clone, PartialEq)]
#[error("unknown section label {0:?}")]
pub struct UnknownLabel(pub String);

impl FromStr for SectionLabel {
    type Err = UnknownLabel;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        SectionLabel::ALL
            .into_iter()
            .find(|l| l.as_str().eq_ignore_ascii_case(s.trim()))
            .ok_or_else(|| UnknownLabel(s.to_string()))
    }
}

pub const MONTHS: [&str; 12] = [
    "January",
    "February",
    "March",
    "April",
    "May",
    "June",
    "July",
    "August",
    "September",
    "October",
    "November",
    "December",
];

/// Month number (1-based) for a full or three-letter English month name.
pub fn month_number(name: &str) -> Option<u8> {
    let lower = name.to_ascii_lowercase();
    MONTHS
        .iter()
        .position(|m| {
            let m = m.to_ascii_lowercase();
            lower == m || (lower.len() == 3 && m.starts_with(&lower))
        })
        .map(|i| i as u8 + 1)
}

/// A calendar point with optional month.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct YearMonth {
    pub year: i32,
    pub month: Option<u8>,
}

impl YearMonth {
    pub fn new(year: i32, month: Option<u8>) -> Self {
        YearMonth { year, month }
    }

    /// `Month YYYY` or `YYYY`, the form printed on resumes.
    pub fn display_long(&self) -> String {
        match self.month {
            Some(m) => format!("{} {}", MONTHS[(m - 1) as usize], self.year),
            None => self.year.to_string(),
        }
    }

    /// Lexicographic comparison that only looks at months when both sides
    /// carry one.
    pub fn not_after(&self, other: &YearMonth) -> bool {
        match self.year.cmp(&other.year) {
            std::cmp::Ordering::Less => true,
            std::cmp::Ordering::Greater => false,
            std::cmp::Ordering::Equal => match (self.month, other.month) {
                (Some(a), Some(b)) => a <= b,
                _ => true,
            },
        }
    }
}

impl fmt::Display for YearMonth {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.month {
            Some(m) => write!(f, "{:04}-{:02}", self.year, m),
            None => write!(f, "{:04}", self.year),
        }
    }
}

impl FromStr for YearMonth {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || format!("invalid date {s:?}");
        let (year, month) = match s.split_once('-') {
            Some((y, m)) => {
                let m: u8 = m.parse().map_err(|_| bad())?;
                if !(1..=12).contains(&m) {
                    return Err(bad());
                }
                (y, Some(m))
            }
            None => (s, None),
        };
        if year.len() != 4 {
            return Err(bad());
        }
        Ok(YearMonth { year: year.parse().map_err(|_| bad())?, month })
    }
}

impl Serialize for YearMonth {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for YearMonth {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// End of a date range.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum DateEnd {
    Date(YearMonth),
    Present,
}

impl DateEnd {
    pub fn display_long(&self) -> String {
        match self {
            DateEnd::Date(d) => d.display_long(),
            DateEnd::Present => "Present".to_string(),
        }
    }
}

impl Serialize for DateEnd {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            DateEnd::Date(d) => d.serialize(s),
            DateEnd::Present => s.serialize_str("present"),
        }
    }
}

impl<'de> Deserialize<'de> for DateEnd {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        if s == "present" {
            Ok(DateEnd::Present)
        } else {
            s.parse().map(DateEnd::Date).map_err(serde::de::Error::custom)
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExperienceEntry {
    pub title: String,
    pub organization: Option<String>,
    pub date_from: Option<YearMonth>,
    pub date_to: Option<DateEnd>,
    pub duration_text: Option<String>,
    pub description: String,
}

impl ExperienceEntry {
    pub fn header_line(&self) -> String {
        match &self.organization {
            Some(org) => format!("{} at {}", self.title, org),
            None => self.title.clone(),
        }
    }

    /// Printed date line, e.g. `January 2015 - March 2017 (2 years 3 months)`.
    pub fn date_line(&self) -> Option<String> {
        let from = self.date_from?;
        let to = self.date_to?;
        let mut line = format!("{} - {}", from.display_long(), to.display_long());
        if let Some(d) = &self.duration_text {
            line.push_str(&format!(" ({d})"));
        }
        Some(line)
    }

    pub fn dates_consistent(&self) -> bool {
        match (self.date_from, self.date_to) {
            (Some(from), Some(DateEnd::Date(to))) => from.not_after(&to),
            _ => true,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ResumeSection {
    pub label: SectionLabel,
    pub heading_text: String,
    pub free_text: String,
    pub entries: Vec<ExperienceEntry>,
}

impl ResumeSection {
    pub fn new(label: SectionLabel, heading_text: impl Into<String>) -> Self {
        ResumeSection { label, heading_text: heading_text.into(), free_text: String::new(), entries: Vec::new() }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ParsedResume {
    pub candidate_id: String,
    pub name: String,
    pub headline: Option<String>,
    pub location: Option<String>,
    pub contact: IndexMap<String, String>,
    pub sections: Vec<ResumeSection>,
    pub provenance: String,
}

impl ParsedResume {
    pub fn new(source_name: &str, name: &str) -> Self {
        ParsedResume {
            candidate_id: candidate_id(source_name, name),
            name: name.to_string(),
            headline: None,
            location: None,
            contact: IndexMap::new(),
            sections: Vec::new(),
            provenance: source_name.to_string(),
        }
    }

    pub fn section(&self, label: SectionLabel) -> Option<&ResumeSection> {
        self.sections.iter().find(|s| s.label == label)
    }

    /// Descriptions of every experience entry, non-empty after trim.
    pub fn experience_descriptions(&self) -> Vec<String> {
        self.sections
            .iter()
            .filter(|s| s.label == SectionLabel::Experience)
            .flat_map(|s| s.entries.iter())
            .map(|e| e.description.trim().to_string())
            .filter(|d| !d.is_empty())
            .collect()
    }

    /// Every string the resume carries, in reading order, with header and
    /// date lines re-rendered as printed.
    pub fn text_content(&self) -> Vec<String> {
        let mut out = vec![self.name.clone()];
        out.extend(self.headline.clone());
        out.extend(self.location.clone());
        out.extend(self.contact.values().cloned());
        for section in &self.sections {
            out.push(section.heading_text.clone());
            if !section.free_text.is_empty() {
                out.push(section.free_text.clone());
            }
            for entry in &section.entries {
                out.push(entry.header_line());
                out.extend(entry.date_line());
                if !entry.description.is_empty() {
                    out.push(entry.description.clone());
                }
            }
        }
        out
    }
}

/// First 16 hex characters of SHA-256 over the source name followed by the
/// candidate name.
pub fn candidate_id(source_name: &str, name: &str) -> String {
    let mut hasher = Sha256::new();
    hasher.update(source_name.as_bytes());
    hasher.update(name.as_bytes());
    let digest = hasher.finalize();
    hex::encode(&digest[..8])
}

/// Canonical `resume/v1` bytes. Key order is fixed by field order.
pub fn emit_json(resume: &ParsedResume) -> Vec<u8> {
    serde_json::to_vec(resume).expect("resume serialization is infallible")
}

pub fn read_json(bytes: &[u8]) -> Result<ParsedResume, serde_json::Error> {
    serde_json::from_slice(bytes)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn minimal_resume_json() {
        let r = ParsedResume::new("a.xml", "Jane Doe");
        let json = String::from_utf8(emit_json(&r)).unwrap();
        assert_eq!(
            json,
            format!(
                "{{\"candidate_id\":\"{}\",\"name\":\"Jane Doe\",\"headline\":null,\"location\":null,\"contact\":{{}},\"sections\":[],\"provenance\":\"a.xml\"}}",
                r.candidate_id
            )
        );
        assert_eq!(read_json(json.as_bytes()).unwrap(), r);
    }

    #[test]
    fn candidate_id_is_16_hex_and_stable() {
        let id = candidate_id("a.xml", "Jane Doe");
        assert_eq!(id.len(), 16);
        assert!(id.chars().all(|c| c.is_ascii_hexdigit()));
        assert_eq!(id, candidate_id("a.xml", "Jane Doe"));
        assert_ne!(id, candidate_id("b.xml", "Jane Doe"));
    }

    #[test]
    fn dates_serialize_in_three_forms() {
        let e = ExperienceEntry {
            title: "T".into(),
            organization: None,
            date_from: Some(YearMonth::new(2015, Some(1))),
            date_to: Some(DateEnd::Present),
            duration_text: None,
            description: String::new(),
        };
        let v = serde_json::to_value(&e).unwrap();
        assert_eq!(v["date_from"], "2015-01");
        assert_eq!(v["date_to"], "present");
        let y: YearMonth = serde_json::from_str("\"2014\"").unwrap();
        assert_eq!(y, YearMonth::new(2014, None));
        assert!(serde_json::from_str::<YearMonth>("\"2014-13\"").is_err());
    }

    #[test]
    fn month_names() {
        assert_eq!(month_number("January"), Some(1));
        assert_eq!(month_number("sep"), Some(9));
        assert_eq!(month_number("Sept"), None);
        assert_eq!(month_number("Mayday"), None);
    }

    #[test]
    fn label_round_trip() {
        for l in SectionLabel::ALL {
            assert_eq!(l.as_str().parse::<SectionLabel>().unwrap(), l);
        }
        assert!("Hobbies".parse::<SectionLabel>().is_err());
    }
}

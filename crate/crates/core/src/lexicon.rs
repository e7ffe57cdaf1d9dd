//! Heading lexicons: printed heading text mapped to section labels.

use std::path::Path;

use thiserror::Error;

use crate::resume::SectionLabel;

const DEFAULT_LINKEDIN: &str = include_str!("../data/linkedin_lexicon.txt");

/// Keywords that mark a heading in free-form resumes.
pub const GENERIC_HEADING_KEYWORDS: [&str; 14] = [
    "Experience",
    "Education",
    "Skills",
    "Projects",
    "Objective",
    "Summary",
    "Work History",
    "Certifications",
    "Awards",
    "Languages",
    "Interests",
    "Publications",
    "Contact",
    "References",
];

#[derive(Debug, Error)]
pub enum LexiconError {
    #[error("lexicon line {line}: {reason}")]
    Syntax { line: usize, reason: String },
    #[error("reading lexicon: {0}")]
    Io(#[from] std::io::Error),
}

#[derive(Debug, Clone, PartialEq)]
pub struct HeadingLexicon {
    entries: Vec<(String, SectionLabel)>,
}

impl Default for HeadingLexicon {
    fn default() -> Self {
        HeadingLexicon::parse(DEFAULT_LINKEDIN).expect("embedded lexicon is valid")
    }
}

impl HeadingLexicon {
    /// Parses `heading => Label` lines; `#` starts a comment.
    pub fn parse(text: &str) -> Result<Self, LexiconError> {
        let mut entries = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (heading, label) = line
                .split_once("=>")
                .ok_or_else(|| LexiconError::Syntax { line: i + 1, reason: "expected `heading => Label`".into() })?;
            let label: SectionLabel = label.trim().parse().map_err(|e: crate::resume::UnknownLabel| {
                LexiconError::Syntax { line: i + 1, reason: e.to_string() }
            })?;
            let heading = heading.trim();
            if heading.is_empty() {
                return Err(LexiconError::Syntax { line: i + 1, reason: "empty heading".into() });
            }
            entries.push((heading.to_lowercase(), label));
        }
        Ok(HeadingLexicon { entries })
    }

    pub fn load(path: &Path) -> Result<Self, LexiconError> {
        Self::parse(&std::fs::read_to_string(path)?)
    }

    /// Case-insensitive exact lookup of a printed heading.
    pub fn lookup(&self, heading: &str) -> Option<SectionLabel> {
        let key = heading.trim().to_lowercase();
        self.entries.iter().find(|(h, _)| *h == key).map(|(_, l)| *l)
    }

    pub fn headings(&self) -> impl Iterator<Item = &str> {
        self.entries.iter().map(|(h, _)| h.as_str())
    }
}

/// True when `line` (minus a trailing colon) equals one of the generic
/// heading keywords, ignoring case.
pub fn is_generic_heading_keyword(line: &str) -> bool {
    let t = line.trim().trim_end_matches(':').trim();
    GENERIC_HEADING_KEYWORDS.iter().any(|k| k.eq_ignore_ascii_case(t))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_lexicon_lookups() {
        let lex = HeadingLexicon::default();
        assert_eq!(lex.lookup("Honors and Awards"), Some(SectionLabel::Honors));
        assert_eq!(lex.lookup("SKILLS & EXPERTISE"), Some(SectionLabel::Skills));
        assert_eq!(lex.lookup("  experience "), Some(SectionLabel::Experience));
        assert_eq!(lex.lookup("Contact"), Some(SectionLabel::Bio));
        assert_eq!(lex.lookup("Volunteer Experience"), None);
        assert_eq!(lex.headings().count(), 12);
    }

    #[test]
    fn syntax_errors_carry_line_numbers() {
        let err = HeadingLexicon::parse("# c\nSummary => Summary\nbogus\n").unwrap_err();
        assert!(err.to_string().contains("line 3"));
        assert!(HeadingLexicon::parse("X => Nope").is_err());
    }

    #[test]
    fn generic_keywords() {
        assert!(is_generic_heading_keyword("WORK HISTORY"));
        assert!(is_generic_heading_keyword("Skills:"));
        assert!(!is_generic_heading_keyword("Skills and tools"));
    }
}

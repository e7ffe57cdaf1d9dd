//! Seeded synthetic resumes with known ground truth.
//!
//! Standard-format fixtures render a [`ParsedResume`] into `pdf2xml` using
//! the canonical tiers (name 29pt once, headings 16pt, bold 12pt entry
//! headers, 12pt body). Free-form fixtures render word-level spans in one
//! or two columns and record the logical line order and section labels.

mod content;
mod pdf2xml;
mod words;

use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::generic_reflow::Segment;
use crate::resume::{emit_json, ParsedResume, ResumeSection, SectionLabel};
use crate::rng::SplitMix64;

use content::{sample_candidate, Candidate};
use pdf2xml::{Font, Placed};

const PAGE_WIDTH: i64 = 612;
const PAGE_HEIGHT: i64 = 792;
const TOP_MARGIN: i64 = 50;
const BOTTOM_LIMIT: i64 = 742;
const LINKEDIN_WRAP: usize = 90;

const LINKEDIN_SALT: u64 = 0x4c49_4e4b;
const GENERIC_SALT: u64 = 0x4745_4e45;

#[derive(Debug, Clone, PartialEq)]
pub struct LinkedInFixture {
    pub source_name: String,
    pub truth: ParsedResume,
    pub xml: Vec<u8>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Layout {
    Single,
    TwoColumn,
}

impl Layout {
    fn tag(self) -> &'static str {
        match self {
            Layout::Single => "single",
            Layout::TwoColumn => "two-column",
        }
    }
}

/// Font arrangements that never match the standard-format signature.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GenericStyle {
    /// One font size throughout.
    Uniform,
    /// Headings and name larger than the body; only two sizes.
    TwoSizes,
    /// Name shares the heading size, so the largest size repeats.
    SharedNameSize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TruthSegment {
    pub heading: Option<String>,
    pub label: SectionLabel,
    pub body_lines: Vec<String>,
}

impl TruthSegment {
    pub fn to_segment(&self) -> Segment {
        Segment::new(self.heading.clone(), self.body_lines.join("\n"))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GenericFixture {
    pub source_name: String,
    pub layout: Layout,
    pub style: GenericStyle,
    #[serde(skip)]
    pub xml: Vec<u8>,
    pub logical_lines: Vec<String>,
    pub segments: Vec<TruthSegment>,
}

/// `count` standard-format fixtures. Source names embed the seed and index
/// so candidate ids are distinct.
pub fn gen_linkedin(seed: u64, count: usize) -> Vec<LinkedInFixture> {
    let mut master = SplitMix64::new(seed ^ LINKEDIN_SALT);
    (0..count)
        .map(|i| {
            let mut rng = master.fork(i as u64);
            let c = sample_candidate(&mut rng, i);
            let source_name = format!("linkedin-{seed}-{i:04}.xml");
            let (truth, xml) = render_linkedin(&c, &source_name);
            LinkedInFixture { source_name, truth, xml }
        })
        .collect()
}

/// `count` free-form fixtures in the given layout.
pub fn gen_generic(seed: u64, count: usize, layout: Layout) -> Vec<GenericFixture> {
    let salt = GENERIC_SALT ^ (layout as u64 + 1);
    let mut master = SplitMix64::new(seed ^ salt);
    (0..count)
        .map(|i| {
            let mut rng = master.fork(i as u64);
            let c = sample_candidate(&mut rng, i);
            let style = [GenericStyle::Uniform, GenericStyle::TwoSizes, GenericStyle::SharedNameSize][rng.below(3)];
            let source_name = format!("generic-{}-{seed}-{i:04}.xml", layout.tag());
            render_generic(&c, &source_name, layout, style, &mut rng)
        })
        .collect()
}

/// Writes `count` fixtures of each kind with `.truth.json` sidecars and
/// returns the document paths in generation order.
pub fn write_fixtures(dir: &Path, seed: u64, count: usize) -> std::io::Result<Vec<PathBuf>> {
    std::fs::create_dir_all(dir)?;
    let mut paths = Vec::new();
    for f in gen_linkedin(seed, count) {
        let path = dir.join(&f.source_name);
        std::fs::write(&path, &f.xml)?;
        std::fs::write(dir.join(format!("{}.truth.json", f.source_name)), emit_json(&f.truth))?;
        paths.push(path);
    }
    for layout in [Layout::Single, Layout::TwoColumn] {
        for f in gen_generic(seed, count, layout) {
            let path = dir.join(&f.source_name);
            std::fs::write(&path, &f.xml)?;
            let truth = serde_json::to_vec(&f).expect("fixture serialization is infallible");
            std::fs::write(dir.join(format!("{}.truth.json", f.source_name)), truth)?;
            paths.push(path);
        }
    }
    Ok(paths)
}

/// Greedy word wrap at `width` characters.
fn wrap(text: &str, width: usize) -> Vec<String> {
    let mut lines: Vec<String> = Vec::new();
    let mut cur = String::new();
    for w in text.split_whitespace() {
        if !cur.is_empty() && cur.len() + 1 + w.len() > width {
            lines.push(std::mem::take(&mut cur));
        }
        if !cur.is_empty() {
            cur.push(' ');
        }
        cur.push_str(w);
    }
    if !cur.is_empty() {
        lines.push(cur);
    }
    lines
}

/// Word wrap where every line carries at least five words, so no body line
/// is short enough to pass for a heading. Items under five words stay on
/// one line.
fn wrap_min_words(text: &str, width: usize) -> Vec<String> {
    const MIN: usize = 5;
    let words: Vec<&str> = text.split_whitespace().collect();
    let mut lines: Vec<Vec<&str>> = Vec::new();
    let mut cur: Vec<&str> = Vec::new();
    let mut len = 0;
    for w in words {
        if cur.len() >= MIN && len + 1 + w.len() > width {
            lines.push(std::mem::take(&mut cur));
            len = 0;
        }
        len += if cur.is_empty() { w.len() } else { w.len() + 1 };
        cur.push(w);
    }
    if !cur.is_empty() {
        lines.push(cur);
    }
    while lines.len() > 1 && lines[lines.len() - 1].len() < MIN {
        let n = lines.len();
        if lines[n - 2].len() + lines[n - 1].len() < 2 * MIN {
            let tail = lines.pop().unwrap();
            lines.last_mut().unwrap().extend(tail);
        } else {
            let w = lines[n - 2].pop().unwrap();
            lines[n - 1].insert(0, w);
        }
    }
    lines.into_iter().map(|l| l.join(" ")).collect()
}

fn text_width(text: &str, size: i64) -> i64 {
    (text.chars().count() as f64 * size as f64 * 0.5).round() as i64
}

#[derive(Clone, Copy, PartialEq)]
enum Tier {
    Name,
    Heading,
    Entry,
    Body,
}

fn render_linkedin(c: &Candidate, source_name: &str) -> (ParsedResume, Vec<u8>) {
    let mut truth = ParsedResume::new(source_name, &c.name);
    let mut lines: Vec<(Tier, String)> = vec![(Tier::Name, c.name.clone())];
    truth.headline = Some(c.headline.clone());
    truth.location = Some(c.location.clone());
    lines.push((Tier::Body, c.headline.clone()));
    lines.push((Tier::Body, c.location.clone()));
    for (k, v) in &c.contacts {
        truth.contact.insert(k.to_string(), v.clone());
        lines.push((Tier::Body, v.clone()));
    }

    let push_free =
        |truth: &mut ParsedResume, lines: &mut Vec<(Tier, String)>, label, heading: &str, body: Vec<String>| {
            if body.is_empty() {
                return;
            }
            let mut s = ResumeSection::new(label, heading);
            s.free_text = body.join("\n");
            lines.push((Tier::Heading, heading.to_string()));
            lines.extend(body.into_iter().map(|l| (Tier::Body, l)));
            truth.sections.push(s);
        };

    push_free(&mut truth, &mut lines, SectionLabel::Summary, "Summary", wrap(&c.summary.join(" "), LINKEDIN_WRAP));
    for (label, heading, entries) in
        [(SectionLabel::Experience, "Experience", &c.experiences), (SectionLabel::Education, "Education", &c.education)]
    {
        let mut s = ResumeSection::new(label, heading);
        lines.push((Tier::Heading, heading.to_string()));
        for e in entries {
            lines.push((Tier::Entry, e.header_line()));
            lines.extend(e.date_line().map(|d| (Tier::Body, d)));
            lines.extend(wrap(&e.description, LINKEDIN_WRAP).into_iter().map(|l| (Tier::Body, l)));
        }
        s.entries = entries.clone();
        truth.sections.push(s);
    }
    let skills_heading = if c.skills.len().is_multiple_of(2) { "Skills & Expertise" } else { "Skills" };
    push_free(&mut truth, &mut lines, SectionLabel::Skills, skills_heading, c.skills.clone());
    let wrapped = |items: &[String]| items.iter().flat_map(|i| wrap(i, LINKEDIN_WRAP)).collect::<Vec<_>>();
    push_free(&mut truth, &mut lines, SectionLabel::Languages, "Languages", c.languages.clone());
    push_free(&mut truth, &mut lines, SectionLabel::Certifications, "Certifications", wrapped(&c.certifications));
    push_free(&mut truth, &mut lines, SectionLabel::Honors, "Honors and Awards", wrapped(&c.honors));
    push_free(&mut truth, &mut lines, SectionLabel::Projects, "Projects", wrapped(&c.projects));
    push_free(&mut truth, &mut lines, SectionLabel::Publications, "Publications", wrapped(&c.publications));
    if let Some((heading, body)) = &c.other {
        push_free(&mut truth, &mut lines, SectionLabel::Other, heading, wrapped(body));
    }

    let fonts = [
        Font { id: 0, size: 29, family: "Helvetica-Bold" },
        Font { id: 1, size: 16, family: "Helvetica-Bold" },
        Font { id: 2, size: 12, family: "Helvetica-Bold" },
        Font { id: 3, size: 12, family: "Helvetica" },
    ];
    let mut placed = Vec::new();
    let (mut page, mut y) = (1u32, TOP_MARGIN);
    for (tier, text) in lines {
        let (font, size, height, advance, before) = match tier {
            Tier::Name => (0, 29, 35, 44, 0),
            Tier::Heading => (1, 16, 20, 26, 10),
            Tier::Entry => (2, 12, 15, 18, 4),
            Tier::Body => (3, 12, 15, 18, 0),
        };
        let mut top = y + before;
        if top + height > BOTTOM_LIMIT {
            page += 1;
            top = TOP_MARGIN;
        }
        placed.push(Placed {
            page,
            top,
            left: 50,
            width: text_width(&text, size),
            height,
            font,
            bold: tier != Tier::Body,
            text,
        });
        y = top + advance;
    }
    (truth, pdf2xml::write(&fonts, page, PAGE_WIDTH, PAGE_HEIGHT, &placed))
}

#[derive(Clone, Copy, PartialEq)]
enum Role {
    Name,
    Contact,
    Heading,
    Body,
}

struct GLine {
    text: String,
    role: Role,
    gap_before: bool,
}

fn generic_heading(label: SectionLabel, rng: &mut SplitMix64) -> String {
    let options = words::GENERIC_HEADINGS
        .iter()
        .find(|(l, _)| *l == label)
        .map(|(_, h)| h)
        .expect("heading bank covers every rendered label");
    let h = rng.pick(options).to_string();
    if rng.chance(0.3) {
        h.to_uppercase()
    } else {
        h
    }
}

fn render_generic(
    c: &Candidate,
    source_name: &str,
    layout: Layout,
    style: GenericStyle,
    rng: &mut SplitMix64,
) -> GenericFixture {
    let width = match layout {
        Layout::Single => 80,
        Layout::TwoColumn => 34,
    };
    let mut contact: Vec<String> = c.contacts.iter().map(|(_, v)| v.clone()).collect();
    contact.push(format!("based in {}", c.location));
    let contact_line = contact.join(" | ");

    let mut glines = vec![GLine { text: c.name.clone(), role: Role::Name, gap_before: false }];
    let mut lead = vec![c.name.clone()];
    for l in wrap_min_words(&contact_line, width) {
        lead.push(l.clone());
        glines.push(GLine { text: l, role: Role::Contact, gap_before: false });
    }
    let mut segments = vec![TruthSegment { heading: None, label: SectionLabel::Bio, body_lines: lead }];

    // (label, items); each item wraps on its own, experience items start a paragraph
    let mut sections: Vec<(SectionLabel, Vec<(String, bool)>)> = Vec::new();
    if !c.summary.is_empty() {
        sections.push((SectionLabel::Summary, vec![(c.summary.join(" "), false)]));
    }
    let entry_items = |entries: &[crate::resume::ExperienceEntry], paragraphs: bool| {
        let mut items = Vec::new();
        for (k, e) in entries.iter().enumerate() {
            let mut header = e.header_line();
            if let (Some(from), Some(to)) = (e.date_from, e.date_to) {
                header = format!("{header}, {} - {}", from.display_long(), to.display_long());
            }
            items.push((header, paragraphs && k > 0));
            if !e.description.is_empty() {
                items.push((e.description.clone(), false));
            }
        }
        items
    };
    sections.push((SectionLabel::Experience, entry_items(&c.experiences, true)));
    sections.push((SectionLabel::Education, entry_items(&c.education, false)));
    sections.push((SectionLabel::Skills, vec![(c.skills.join(", "), false)]));
    let mut optional: Vec<(SectionLabel, Vec<(String, bool)>)> = [
        (SectionLabel::Languages, &c.languages),
        (SectionLabel::Certifications, &c.certifications),
        (SectionLabel::Honors, &c.honors),
        (SectionLabel::Projects, &c.projects),
    ]
    .into_iter()
    .filter(|(_, items)| !items.is_empty())
    .map(|(l, items)| (l, items.iter().map(|i| (i.clone(), false)).collect()))
    .collect();
    rng.shuffle(&mut optional);
    sections.extend(optional);

    for (label, items) in sections {
        let heading = generic_heading(label, rng);
        glines.push(GLine { text: heading.clone(), role: Role::Heading, gap_before: false });
        let mut body = Vec::new();
        for (item, paragraph) in items {
            for (k, l) in wrap_min_words(&item, width).into_iter().enumerate() {
                body.push(l.clone());
                glines.push(GLine { text: l, role: Role::Body, gap_before: paragraph && k == 0 });
            }
        }
        segments.push(TruthSegment { heading: Some(heading), label, body_lines: body });
    }

    let gap = rng.range(3, 5) as i64;
    let (xml, _) = layout_generic(&glines, layout, style, gap);
    GenericFixture {
        source_name: source_name.to_string(),
        layout,
        style,
        xml,
        logical_lines: glines.iter().map(|g| g.text.clone()).collect(),
        segments,
    }
}

/// (font id, size, bold) for a line role under a style.
fn generic_font(style: GenericStyle, role: Role) -> (usize, i64, bool) {
    match (style, role) {
        (GenericStyle::Uniform, _) => (0, 11, false),
        (GenericStyle::TwoSizes, Role::Name | Role::Heading) => (1, 14, true),
        (GenericStyle::TwoSizes, _) => (0, 11, false),
        (GenericStyle::SharedNameSize, Role::Name | Role::Heading) => (1, 14, true),
        (GenericStyle::SharedNameSize, Role::Contact) => (2, 9, false),
        (GenericStyle::SharedNameSize, Role::Body) => (0, 11, false),
    }
}

const GENERIC_PITCH: i64 = 16;
const GENERIC_TOP: i64 = 60;
const GENERIC_ROWS: usize = 42;

fn word_spans(line: &GLine, style: GenericStyle, page: u32, top: i64, left: i64, gap: i64) -> Vec<Placed> {
    let (font, size, bold) = generic_font(style, line.role);
    let mut x = left;
    line.text
        .split_whitespace()
        .map(|w| {
            let width = text_width(w, size);
            let span = Placed {
                page,
                top,
                left: x,
                width,
                height: (size as f64 * 1.2).round() as i64,
                font,
                bold,
                text: w.to_string(),
            };
            x += width + gap;
            span
        })
        .collect()
}

fn layout_generic(glines: &[GLine], layout: Layout, style: GenericStyle, gap: i64) -> (Vec<u8>, u32) {
    let fonts = [
        Font { id: 0, size: 11, family: "Times" },
        Font { id: 1, size: 14, family: "Times-Bold" },
        Font { id: 2, size: 9, family: "Times" },
    ];
    let mut placed = Vec::new();
    let mut page = 1u32;
    match layout {
        Layout::Single => {
            let mut y = GENERIC_TOP;
            for (i, g) in glines.iter().enumerate() {
                if i > 0 {
                    y += if g.gap_before { 2 * GENERIC_PITCH } else { GENERIC_PITCH };
                }
                if y > GENERIC_TOP + GENERIC_PITCH * (GENERIC_ROWS as i64 - 1) {
                    page += 1;
                    y = GENERIC_TOP;
                }
                placed.extend(word_spans(g, style, page, y, 50, gap));
            }
        }
        Layout::TwoColumn => {
            let mut rest = glines;
            loop {
                let take = if rest.len() > 2 * GENERIC_ROWS { GENERIC_ROWS } else { rest.len().div_ceil(2) };
                let (left, after) = rest.split_at(take);
                let right_n =
                    after.len().min(if rest.len() > 2 * GENERIC_ROWS { GENERIC_ROWS } else { rest.len() - take });
                let (right, after) = after.split_at(right_n);
                let mut left_spans = Vec::new();
                for (row, g) in left.iter().enumerate() {
                    left_spans.extend(word_spans(g, style, page, GENERIC_TOP + GENERIC_PITCH * row as i64, 40, gap));
                }
                let left_edge = left_spans.iter().map(|s: &Placed| s.left + s.width).max().unwrap_or(0);
                let right_x = (left_edge + 8 * gap).max(320);
                placed.extend(left_spans);
                for (row, g) in right.iter().enumerate() {
                    placed.extend(word_spans(g, style, page, GENERIC_TOP + GENERIC_PITCH * row as i64, right_x, gap));
                }
                rest = after;
                if rest.is_empty() {
                    break;
                }
                page += 1;
            }
        }
    }
    // physical order: by page, row, then x
    placed.sort_by_key(|p| (p.page, p.top, p.left));
    (pdf2xml::write(&fonts, page, PAGE_WIDTH, PAGE_HEIGHT, &placed), page)
}

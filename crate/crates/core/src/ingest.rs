//! Adapters from upstream text-extractor output to [`SpanDocument`].
//!
//! Two inputs are understood: the `pdf2xml` layout format emitted by
//! `pdftohtml -xml`, and plain extracted text (one line per row, form feed
//! between pages).

use std::collections::BTreeMap;

use quick_xml::events::{BytesStart, Event};
use quick_xml::Reader;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::doc_model::{FontSpec, PageInfo, SpanDocument, TextSpan};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum IngestError {
    #[error("malformed input: {0}")]
    MalformedInput(String),
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct IngestReport {
    pub source_name: String,
    pub spans_read: usize,
    pub pages_read: usize,
    pub metadata_present: bool,
    pub warnings: Vec<String>,
}

impl IngestReport {
    fn warn(&mut self, msg: String) {
        if !self.warnings.contains(&msg) {
            self.warnings.push(msg);
        }
    }
}

/// Which adapter produced a document.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum InputKind {
    LayoutXml,
    Plaintext,
}

/// True when the bytes look like markup and should go to the XML adapter.
pub fn looks_like_xml(bytes: &[u8]) -> bool {
    let start =
        bytes.strip_prefix(b"\xEF\xBB\xBF".as_slice()).unwrap_or(bytes).iter().position(|b| !b.is_ascii_whitespace());
    matches!(start, Some(i) if bytes.strip_prefix(b"\xEF\xBB\xBF".as_slice()).unwrap_or(bytes)[i] == b'<')
}

/// Routes to the layout adapter when the input looks like XML, plaintext
/// otherwise.
pub fn ingest_auto(source_name: &str, bytes: &[u8]) -> Result<(SpanDocument, IngestReport, InputKind), IngestError> {
    if looks_like_xml(bytes) {
        let (doc, report) = ingest_layout_xml(source_name, bytes)?;
        Ok((doc, report, InputKind::LayoutXml))
    } else {
        let (doc, report) = ingest_plaintext(source_name, bytes);
        Ok((doc, report, InputKind::Plaintext))
    }
}

struct PendingText {
    index: usize,
    page: u32,
    top: f64,
    left: f64,
    width: f64,
    height: f64,
    font: String,
    content: String,
    bold: bool,
    italic: bool,
}

fn local_name(e: &BytesStart<'_>) -> String {
    String::from_utf8_lossy(e.local_name().as_ref()).into_owned()
}

fn attributes(e: &BytesStart<'_>, element: &str) -> Result<BTreeMap<String, String>, IngestError> {
    let mut out = BTreeMap::new();
    for attr in e.attributes() {
        let attr = attr.map_err(|err| IngestError::MalformedInput(format!("bad attribute on <{element}>: {err}")))?;
        let key = String::from_utf8_lossy(attr.key.as_ref()).into_owned();
        let value = attr
            .unescape_value()
            .map_err(|err| IngestError::MalformedInput(format!("bad attribute value on <{element}>: {err}")))?
            .into_owned();
        out.insert(key, value);
    }
    Ok(out)
}

fn number(attrs: &BTreeMap<String, String>, key: &str, what: &str) -> Result<f64, IngestError> {
    let raw =
        attrs.get(key).ok_or_else(|| IngestError::MalformedInput(format!("{what}: missing attribute `{key}`")))?;
    raw.trim()
        .parse::<f64>()
        .ok()
        .filter(|v| v.is_finite())
        .ok_or_else(|| IngestError::MalformedInput(format!("{what}: attribute `{key}` is not a number: {raw:?}")))
}

fn warn_unknown_attrs(report: &mut IngestReport, attrs: &BTreeMap<String, String>, known: &[&str], element: &str) {
    for key in attrs.keys() {
        if !known.contains(&key.as_str()) {
            report.warn(format!("ignored attribute `{key}` on <{element}>"));
        }
    }
}

/// Parses `pdftohtml -xml` output.
pub fn ingest_layout_xml(source_name: &str, bytes: &[u8]) -> Result<(SpanDocument, IngestReport), IngestError> {
    let mut reader = Reader::from_reader(bytes);
    let config = reader.config_mut();
    config.trim_text(false);
    config.check_end_names = true;

    let mut report =
        IngestReport { source_name: source_name.to_string(), metadata_present: true, ..IngestReport::default() };
    let mut doc =
        SpanDocument { source_name: source_name.to_string(), metadata_present: true, ..SpanDocument::default() };
    let mut seen_root = false;
    let mut current_page: Option<u32> = None;
    let mut pending: Option<PendingText> = None;
    let mut text_index = 0usize;
    let mut buf = Vec::new();

    loop {
        let event = reader
            .read_event_into(&mut buf)
            .map_err(|e| IngestError::MalformedInput(format!("XML error at byte {}: {e}", reader.error_position())))?;
        match event {
            Event::Eof => break,
            Event::Start(e) if pending.is_some() => {
                let name = local_name(&e);
                let p = pending.as_mut().expect("checked");
                match name.as_str() {
                    "b" => p.bold = true,
                    "i" => p.italic = true,
                    other => report.warn(format!("ignored element <{other}> inside <text>")),
                }
            }
            Event::Empty(e) if pending.is_some() => {
                let name = local_name(&e);
                if name != "b" && name != "i" {
                    report.warn(format!("ignored element <{name}> inside <text>"));
                }
            }
            Event::Start(e) => {
                let name = local_name(&e);
                handle_open(
                    &name,
                    &e,
                    false,
                    &mut seen_root,
                    &mut current_page,
                    &mut pending,
                    &mut text_index,
                    &mut doc,
                    &mut report,
                )?;
            }
            Event::Empty(e) => {
                let name = local_name(&e);
                handle_open(
                    &name,
                    &e,
                    true,
                    &mut seen_root,
                    &mut current_page,
                    &mut pending,
                    &mut text_index,
                    &mut doc,
                    &mut report,
                )?;
            }
            Event::Text(t) => {
                if let Some(p) = pending.as_mut() {
                    let text = t
                        .unescape()
                        .map_err(|e| IngestError::MalformedInput(format!("text element #{}: {e}", p.index)))?;
                    p.content.push_str(&text);
                }
            }
            Event::CData(c) => {
                if let Some(p) = pending.as_mut() {
                    p.content.push_str(&String::from_utf8_lossy(&c));
                }
            }
            Event::End(e) => {
                let name = String::from_utf8_lossy(e.local_name().as_ref()).into_owned();
                match name.as_str() {
                    "text" => {
                        if let Some(p) = pending.take() {
                            finish_text(p, &mut doc, &mut report)?;
                        }
                    }
                    "page" => current_page = None,
                    _ => {}
                }
            }
            _ => {}
        }
        buf.clear();
    }

    if !seen_root {
        return Err(IngestError::MalformedInput("missing <pdf2xml> root element".into()));
    }
    if doc.spans.is_empty() {
        report.warn("no spans".into());
    }
    report.spans_read = doc.spans.len();
    report.pages_read = doc.pages.len();
    Ok((doc, report))
}

#[allow(clippy::too_many_arguments)]
fn handle_open(
    name: &str,
    e: &BytesStart<'_>,
    empty: bool,
    seen_root: &mut bool,
    current_page: &mut Option<u32>,
    pending: &mut Option<PendingText>,
    text_index: &mut usize,
    doc: &mut SpanDocument,
    report: &mut IngestReport,
) -> Result<(), IngestError> {
    if !*seen_root {
        if name != "pdf2xml" {
            return Err(IngestError::MalformedInput(format!("expected <pdf2xml> root, found <{name}>")));
        }
        *seen_root = true;
        return Ok(());
    }
    match name {
        "page" => {
            let attrs = attributes(e, "page")?;
            let what = format!("page #{}", doc.pages.len());
            let number = number(&attrs, "number", &what)?;
            let width = number_attr(&attrs, "width", &what)?;
            let height = number_attr(&attrs, "height", &what)?;
            if number < 1.0 || number.fract() != 0.0 {
                return Err(IngestError::MalformedInput(format!("{what}: invalid page number {number}")));
            }
            warn_unknown_attrs(report, &attrs, &["number", "width", "height", "position", "top", "left"], "page");
            let number = number as u32;
            if doc.page(number).is_some() {
                return Err(IngestError::MalformedInput(format!("{what}: duplicate page number {number}")));
            }
            doc.pages.push(PageInfo { number, width, height });
            *current_page = if empty { None } else { Some(number) };
        }
        "fontspec" => {
            let attrs = attributes(e, "fontspec")?;
            let what = format!("fontspec #{}", doc.font_table.len());
            let id = attrs
                .get("id")
                .cloned()
                .ok_or_else(|| IngestError::MalformedInput(format!("{what}: missing attribute `id`")))?;
            let size = number(&attrs, "size", &what)?;
            if size <= 0.0 {
                return Err(IngestError::MalformedInput(format!("{what}: non-positive size")));
            }
            let family = attrs.get("family").cloned().unwrap_or_default();
            warn_unknown_attrs(report, &attrs, &["id", "size", "family", "color"], "fontspec");
            doc.font_table.insert(id, FontSpec { size, family });
        }
        "text" => {
            let index = *text_index;
            *text_index += 1;
            let what = format!("text element #{index}");
            let page =
                current_page.ok_or_else(|| IngestError::MalformedInput(format!("{what}: outside of a <page>")))?;
            let attrs = attributes(e, "text")?;
            let top = number(&attrs, "top", &what)?;
            let left = number(&attrs, "left", &what)?;
            let width = number_attr(&attrs, "width", &what)?;
            let height = number_attr(&attrs, "height", &what)?;
            let font = attrs
                .get("font")
                .cloned()
                .ok_or_else(|| IngestError::MalformedInput(format!("{what}: missing attribute `font`")))?;
            warn_unknown_attrs(report, &attrs, &["top", "left", "width", "height", "font"], "text");
            let p = PendingText {
                index,
                page,
                top,
                left,
                width,
                height,
                font,
                content: String::new(),
                bold: false,
                italic: false,
            };
            if empty {
                finish_text(p, doc, report)?;
            } else {
                *pending = Some(p);
            }
        }
        other => report.warn(format!("ignored element <{other}>")),
    }
    Ok(())
}

fn number_attr(attrs: &BTreeMap<String, String>, key: &str, what: &str) -> Result<f64, IngestError> {
    let v = number(attrs, key, what)?;
    if v < 0.0 {
        return Err(IngestError::MalformedInput(format!("{what}: negative `{key}`")));
    }
    Ok(v)
}

fn finish_text(p: PendingText, doc: &mut SpanDocument, report: &mut IngestReport) -> Result<(), IngestError> {
    let font = doc.font_table.get(&p.font).ok_or_else(|| {
        IngestError::MalformedInput(format!("text element #{}: unknown fontspec id {:?}", p.index, p.font))
    })?;
    let text = p.content.trim();
    if text.is_empty() {
        report.warnings.push(format!("dropped blank text element #{}", p.index));
        return Ok(());
    }
    doc.spans.push(TextSpan {
        text: text.to_string(),
        page: p.page,
        x: p.left,
        y: p.top,
        width: p.width,
        height: p.height,
        font_size: Some(font.size),
        font_id: Some(p.font),
        bold: p.bold,
        italic: p.italic,
    });
    Ok(())
}

/// Parses plain extracted text. Never fails; invalid UTF-8 is replaced.
pub fn ingest_plaintext(source_name: &str, bytes: &[u8]) -> (SpanDocument, IngestReport) {
    let mut report = IngestReport { source_name: source_name.to_string(), ..IngestReport::default() };
    let text = String::from_utf8_lossy(bytes);
    if matches!(text, std::borrow::Cow::Owned(_)) {
        report.warn("invalid UTF-8 sequences replaced".into());
    }

    let mut doc =
        SpanDocument { source_name: source_name.to_string(), metadata_present: false, ..SpanDocument::default() };
    if text.is_empty() {
        report.warn("no spans".into());
        return (doc, report);
    }

    for (page_index, page_text) in text.split('\x0C').enumerate() {
        let number = page_index as u32 + 1;
        let mut rows = 0usize;
        let mut widest = 0usize;
        for (row, raw) in page_text.split('\n').enumerate() {
            let raw = raw.strip_suffix('\r').unwrap_or(raw);
            rows = row + 1;
            let trimmed = raw.trim();
            if trimmed.is_empty() {
                continue;
            }
            let indent = raw.chars().take_while(|c| c.is_whitespace()).count();
            let chars = trimmed.chars().count();
            widest = widest.max(indent + chars);
            doc.spans.push(TextSpan::plain(trimmed, number, indent as f64, row as f64, chars as f64, 1.0));
        }
        doc.pages.push(PageInfo { number, width: widest as f64, height: rows as f64 });
    }
    if doc.spans.is_empty() {
        report.warn("no spans".into());
    }
    report.spans_read = doc.spans.len();
    report.pages_read = doc.pages.len();
    (doc, report)
}

//! Minimal writer for the `pdftohtml -xml` layout format.

use std::fmt::Write;

use quick_xml::escape::escape;

pub(crate) struct Font {
    pub id: usize,
    pub size: i64,
    pub family: &'static str,
}

pub(crate) struct Placed {
    pub page: u32,
    pub top: i64,
    pub left: i64,
    pub width: i64,
    pub height: i64,
    pub font: usize,
    pub bold: bool,
    pub text: String,
}

/// Spans must be grouped by page; every font is declared on page 1.
pub(crate) fn write(fonts: &[Font], pages: u32, width: i64, height: i64, spans: &[Placed]) -> Vec<u8> {
    let mut out = String::from(
        "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n<!DOCTYPE pdf2xml SYSTEM \"pdf2xml.dtd\">\n\n\
         <pdf2xml producer=\"resumekit-fixtures\" version=\"1\">\n",
    );
    let mut spans = spans.iter().peekable();
    for page in 1..=pages {
        let _ = writeln!(
            out,
            "<page number=\"{page}\" position=\"absolute\" top=\"0\" left=\"0\" height=\"{height}\" width=\"{width}\">"
        );
        if page == 1 {
            for f in fonts {
                let _ = writeln!(
                    out,
                    "\t<fontspec id=\"{}\" size=\"{}\" family=\"{}\" color=\"#000000\"/>",
                    f.id, f.size, f.family
                );
            }
        }
        while let Some(s) = spans.next_if(|s| s.page == page) {
            let text = escape(s.text.as_str());
            let body = if s.bold { format!("<b>{text}</b>") } else { text.into_owned() };
            let _ = writeln!(
                out,
                "<text top=\"{}\" left=\"{}\" width=\"{}\" height=\"{}\" font=\"{}\">{body}</text>",
                s.top, s.left, s.width, s.height, s.font
            );
        }
        out.push_str("</page>\n");
    }
    out.push_str("</pdf2xml>\n");
    out.into_bytes()
}

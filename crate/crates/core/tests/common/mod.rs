//! Generators and oracles shared by the integration tests and the
//! acceptance harness.
#![allow(dead_code)]

use std::collections::BTreeMap;
use std::io::{BufRead, BufReader, Read, Write};
use std::net::TcpListener;
use std::sync::mpsc;
use std::time::Duration;

use resumekit::doc_model::{Line, PageInfo, SpanDocument, TextSpan};
use resumekit::pair_dataset::CandidateProfile;
use resumekit::rng::SplitMix64;

const WORDS: [&str; 12] =
    ["design", "Rust", "EXPERIENCE", "led", "team", "of", "Skills", "2019", "data", "pipelines", "Education", "at"];

/// Word-level spans in one to three columns, with jittered gaps, optional
/// font sizes and occasional stray spans.
pub fn random_layout(seed: u64) -> SpanDocument {
    let mut rng = SplitMix64::new(seed);
    let pages = rng.range(1, 3) as u32;
    // inclusive bounds: one to three columns, the most reflow will split
    let columns = rng.range(1, 3);
    let with_fonts = rng.chance(0.5);
    let mut doc =
        SpanDocument { source_name: format!("layout-{seed}"), metadata_present: with_fonts, ..Default::default() };
    let col_width = 560.0 / columns as f64;
    for page in 1..=pages {
        doc.pages.push(PageInfo { number: page, width: 612.0, height: 792.0 });
        let rows = rng.range(3, 40);
        for row in 0..rows {
            let y = 40.0 + 16.0 * row as f64 + rng.next_f64() * 1.5;
            for col in 0..columns {
                if rng.chance(0.15) {
                    continue;
                }
                let mut x = 30.0 + col_width * col as f64 + rng.next_f64() * 4.0;
                for _ in 0..rng.range(1, 7) {
                    let word = *rng.pick(&WORDS);
                    let width = 5.5 * word.len() as f64;
                    if x + width > 30.0 + col_width * (col + 1) as f64 - 20.0 {
                        break;
                    }
                    let mut span = TextSpan::plain(word, page, x, y, width, 10.0);
                    if with_fonts {
                        span.font_size = Some(if rng.chance(0.1) { 16.0 } else { 11.0 });
                        span.bold = rng.chance(0.1);
                    }
                    doc.spans.push(span);
                    x += width + 2.0 + rng.next_f64() * 3.0;
                }
            }
        }
        if rng.chance(0.2) {
            let mut stray = TextSpan::plain("stray", page, rng.next_f64() * 500.0, rng.next_f64() * 700.0, 30.0, 10.0);
            stray.font_size = with_fonts.then_some(11.0);
            doc.spans.push(stray);
        }
    }
    doc
}

pub fn multiset<'a>(texts: impl Iterator<Item = &'a str>) -> BTreeMap<&'a str, usize> {
    let mut m = BTreeMap::new();
    for t in texts {
        *m.entry(t).or_insert(0) += 1;
    }
    m
}

/// Lays the recovered lines out top to bottom as a single column, keeping
/// each span's x and font but moving it to its line's new row.
pub fn relay(doc: &SpanDocument, lines: &[Line]) -> SpanDocument {
    let mut out = SpanDocument { spans: Vec::new(), ..doc.clone() };
    let mut row: BTreeMap<u32, usize> = BTreeMap::new();
    for line in lines {
        let r = row.entry(line.page).or_insert(0);
        *r += 1;
        for span in &line.spans {
            let mut s = span.clone();
            s.y = 16.0 * *r as f64;
            out.spans.push(s);
        }
    }
    out
}

pub fn line_texts(lines: &[Line]) -> Vec<&str> {
    lines.iter().map(|l| l.text.as_str()).collect()
}

pub fn random_profiles(seed: u64) -> Vec<CandidateProfile> {
    let mut rng = SplitMix64::new(seed);
    let n = rng.range(3, 8);
    (0..n)
        .map(|c| {
            let k = rng.range(1, 6);
            CandidateProfile::new(
                format!("cand-{c:02}"),
                (0..k).map(|e| format!("role {e} of candidate {c} seed {seed}")),
            )
        })
        .collect()
}

/// Unordered index pairs per profile, enumerated directly.
pub fn oracle_positives(profiles: &[CandidateProfile]) -> Vec<(String, String, String)> {
    let mut out = Vec::new();
    for p in profiles {
        for i in 0..p.experiences.len() {
            for j in (i + 1)..p.experiences.len() {
                out.push((p.candidate_id.clone(), p.experiences[i].clone(), p.experiences[j].clone()));
            }
        }
    }
    out
}

pub struct Captured {
    pub request_line: String,
    pub headers: Vec<(String, String)>,
    pub body: Vec<u8>,
}

/// One-shot HTTP stub: answers the first request with `status` and `body`
/// after `delay`, and hands the request back over the channel.
pub fn stub(status: u16, body: &'static str, delay: Duration) -> (String, mpsc::Receiver<Captured>) {
    let listener = TcpListener::bind("127.0.0.1:0").unwrap();
    let url = format!("http://{}", listener.local_addr().unwrap());
    let (tx, rx) = mpsc::channel();
    std::thread::spawn(move || {
        let Ok((stream, _)) = listener.accept() else { return };
        let mut reader = BufReader::new(stream.try_clone().unwrap());
        let mut request_line = String::new();
        reader.read_line(&mut request_line).unwrap();
        let mut headers = Vec::new();
        loop {
            let mut line = String::new();
            reader.read_line(&mut line).unwrap();
            let line = line.trim_end();
            if line.is_empty() {
                break;
            }
            let (k, v) = line.split_once(':').unwrap();
            headers.push((k.trim().to_ascii_lowercase(), v.trim().to_string()));
        }
        let len: usize = headers.iter().find(|(k, _)| k == "content-length").map_or(0, |(_, v)| v.parse().unwrap());
        let mut received = vec![0; len];
        reader.read_exact(&mut received).unwrap();
        let _ = tx.send(Captured { request_line: request_line.trim_end().to_string(), headers, body: received });
        std::thread::sleep(delay);
        let mut stream = stream;
        let _ = write!(
            stream,
            "HTTP/1.1 {status} X\r\nContent-Type: application/json\r\nContent-Length: {}\r\nConnection: close\r\n\r\n{body}",
            body.len()
        );
    });
    (url, rx)
}

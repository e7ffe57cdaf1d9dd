use std::collections::BTreeMap;

use resumekit::exporters::{csv_header, emit_batch_json, emit_csv, NoComments, DEFAULT_STAGES};
use resumekit::fixtures::gen_linkedin;
use resumekit::resume::{read_json, ParsedResume};

/// Minimal RFC 4180 reader: quoted fields, doubled quotes, CRLF records.
/// Returns the records and whether every record ended with CRLF.
fn parse_rfc4180(bytes: &[u8]) -> (Vec<Vec<String>>, bool) {
    let s = std::str::from_utf8(bytes).unwrap();
    let mut chars = s.chars().peekable();
    let (mut rows, mut row, mut field) = (Vec::new(), Vec::new(), String::new());
    let mut all_crlf = true;
    let mut quoted = false;
    while let Some(c) = chars.next() {
        if quoted {
            match c {
                '"' if chars.peek() == Some(&'"') => {
                    chars.next();
                    field.push('"');
                }
                '"' => quoted = false,
                _ => field.push(c),
            }
            continue;
        }
        match c {
            '"' => quoted = true,
            ',' => row.push(std::mem::take(&mut field)),
            '\r' if chars.peek() == Some(&'\n') => {
                chars.next();
                row.push(std::mem::take(&mut field));
                rows.push(std::mem::take(&mut row));
            }
            '\n' => {
                all_crlf = false;
                row.push(std::mem::take(&mut field));
                rows.push(std::mem::take(&mut row));
            }
            _ => field.push(c),
        }
    }
    assert!(!quoted, "unterminated quote");
    if !field.is_empty() || !row.is_empty() {
        all_crlf = false;
        row.push(field);
        rows.push(row);
    }
    (rows, all_crlf)
}

fn tricky() -> ParsedResume {
    let mut r = gen_linkedin(5, 1).remove(0).truth;
    r.name = "O'Brien, \"Dee\"".into();
    r.headline = Some("Line one\nline two\r\nthree".into());
    r
}

#[test]
fn csv_rereads_with_independent_parser() {
    let mut resumes: Vec<ParsedResume> = gen_linkedin(42, 20).into_iter().map(|f| f.truth).collect();
    resumes.push(tricky());
    let mut comments = BTreeMap::new();
    comments.insert((resumes[0].candidate_id.clone(), "screening".to_string()), "good, \"strong\"\nfit".to_string());
    comments.insert((resumes[3].candidate_id.clone(), "decision".to_string()), "hire".to_string());

    let bytes = emit_csv(&resumes, &comments);
    let (rows, all_crlf) = parse_rfc4180(&bytes);
    assert!(all_crlf);
    let crlf = bytes.windows(2).filter(|w| w == b"\r\n").count();
    assert_eq!(crlf, rows.len());
    assert_eq!(rows.len(), resumes.len() + 1);
    assert_eq!(rows[0], csv_header(&DEFAULT_STAGES));
    let width = rows[0].len();
    assert!(rows.iter().all(|r| r.len() == width));

    let col = |name: &str| rows[0].iter().position(|c| c == name).unwrap();
    for (row, r) in rows[1..].iter().zip(&resumes) {
        assert_eq!(row[col("candidate_id")], r.candidate_id);
    }
    let last = rows.last().unwrap();
    assert_eq!(last[col("name")], "O'Brien, \"Dee\"");
    assert_eq!(last[col("headline")], "Line one\\nline two\\nthree");
    assert_eq!(rows[1][col("comment_screening")], "good, \"strong\"\\nfit");
    assert_eq!(rows[4][col("decision")], "hire");
}

#[test]
fn csv_with_no_resumes_is_header_only() {
    let (rows, all_crlf) = parse_rfc4180(&emit_csv(&[], &NoComments));
    assert!(all_crlf);
    assert_eq!(rows, vec![csv_header(&DEFAULT_STAGES)]);
}

#[test]
fn batch_json_round_trips() {
    let resumes: Vec<ParsedResume> = gen_linkedin(8, 4).into_iter().map(|f| f.truth).chain([tricky()]).collect();
    let values: Vec<serde_json::Value> = serde_json::from_slice(&emit_batch_json(&resumes)).unwrap();
    assert_eq!(values.len(), resumes.len());
    for (v, r) in values.iter().zip(&resumes) {
        assert_eq!(&read_json(&serde_json::to_vec(v).unwrap()).unwrap(), r);
    }
}

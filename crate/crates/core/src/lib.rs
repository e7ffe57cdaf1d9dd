//! Resume parsing and candidate ranking.
//!
//! Positioned text (pdftohtml-style XML or plain text) comes in through
//! [`ingest`]. [`format_detector`] decides whether a document is a
//! standard-format profile export, which [`linkedin_parser`] parses
//! losslessly; everything else goes through [`generic_reflow`] and
//! [`section_classifier`] to reach the same [`resume::ParsedResume`] shape.
//! [`pair_dataset`], [`scoring`] and [`ranking`] cover experience-pair
//! datasets and job-description ranking. [`service`] and [`cli`] are the
//! front ends.
//!
//! ```
//! use resumekit::{FormatChoice, Pipeline};
//!
//! let fixture = &resumekit::fixtures::gen_linkedin(1, 1)[0];
//! let out = Pipeline::default().parse_bytes(&fixture.source_name, &fixture.xml, FormatChoice::Auto).unwrap();
//! assert_eq!(out.resume, fixture.truth);
//! ```

pub mod cli;
pub mod config;
pub mod doc_model;
pub mod exporters;
pub mod fixtures;
pub mod format_detector;
pub mod generic_reflow;
pub mod ingest;
pub mod lexicon;
pub mod linkedin_parser;
pub mod pair_dataset;
pub mod pipeline;
pub mod ranking;
pub mod resume;
pub mod rng;
pub mod scoring;
pub mod section_classifier;
pub mod service;
pub mod store;
pub mod text;

pub use config::AppConfig;
pub use doc_model::{SpanDocument, TextSpan};
pub use format_detector::{detect_format, DocumentFormat, FormatSignature, FormatVerdict};
pub use generic_reflow::{reflow, segment, ReflowConfig, Segment};
pub use ingest::{ingest_auto, ingest_layout_xml, ingest_plaintext};
pub use linkedin_parser::parse_linkedin;
pub use pair_dataset::{build_pairs, CandidateProfile, PairLabel, PairSample};
pub use pipeline::{FormatChoice, ParseOutcome, Pipeline};
pub use ranking::{rank_candidates, ScoredCandidate};
pub use resume::{ParsedResume, SectionLabel};
pub use scoring::{evaluate_pairs, fit_lexical, LexicalScorer, PairScorer};
pub use section_classifier::{convert_to_standard, CentroidModel, SegmentClassifier};

//! End-to-end document parsing: ingest, detect, then parse or convert.

use std::sync::{Arc, OnceLock};
use std::time::Duration;

use serde::Serialize;
use thiserror::Error;

use crate::config::{AppConfig, ClassifierKind, ConfigError};
use crate::fixtures::gen_linkedin;
use crate::format_detector::{detect_format, DocumentFormat, FormatSignature, FormatVerdict};
use crate::generic_reflow::ReflowConfig;
use crate::ingest::{ingest_auto, IngestError, IngestReport};
use crate::linkedin_parser::{parse_linkedin_with, ParseError};
use crate::resume::ParsedResume;
use crate::scoring::{RemoteClassifier, DEFAULT_MAX_IN_FLIGHT};
use crate::section_classifier::{
    convert_to_standard, labeled_segments, CentroidModel, ConvertError, SegmentClassifier,
};

/// Seed and size of the synthetic corpus behind the built-in model.
pub const DEFAULT_MODEL_SEED: u64 = 7;
pub const DEFAULT_MODEL_DOCS: usize = 100;

#[derive(Debug, Error)]
pub enum PipelineError {
    #[error(transparent)]
    Ingest(#[from] IngestError),
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error(transparent)]
    Convert(#[from] ConvertError),
    #[error(transparent)]
    Config(#[from] ConfigError),
    #[error("loading model: {0}")]
    Model(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, clap::ValueEnum)]
pub enum FormatChoice {
    #[default]
    Auto,
    #[value(name = "linkedin")]
    LinkedIn,
    Generic,
}

#[derive(Debug, Clone, Serialize)]
pub struct ParseOutcome {
    pub resume: ParsedResume,
    pub format: DocumentFormat,
    pub verdict: FormatVerdict,
    pub report: IngestReport,
}

/// Centroid model fitted on the standard-format fixture corpus.
pub fn default_model() -> &'static CentroidModel {
    static MODEL: OnceLock<CentroidModel> = OnceLock::new();
    MODEL.get_or_init(|| {
        let corpus: Vec<_> = gen_linkedin(DEFAULT_MODEL_SEED, DEFAULT_MODEL_DOCS)
            .iter()
            .flat_map(|f| labeled_segments(&f.truth))
            .collect();
        CentroidModel::fit(&corpus).expect("fixture corpus covers every label")
    })
}

#[derive(Clone)]
pub struct Pipeline {
    pub signature: FormatSignature,
    pub reflow: ReflowConfig,
    pub classifier: Arc<dyn SegmentClassifier>,
}

impl std::fmt::Debug for Pipeline {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Pipeline").field("signature", &self.signature).field("reflow", &self.reflow).finish()
    }
}

impl Default for Pipeline {
    fn default() -> Self {
        Pipeline {
            signature: FormatSignature::default(),
            reflow: ReflowConfig::default(),
            classifier: Arc::new(default_model().clone()),
        }
    }
}

impl Pipeline {
    pub fn from_config(cfg: &AppConfig) -> Result<Self, PipelineError> {
        let classifier: Arc<dyn SegmentClassifier> = match cfg.classifier.kind {
            ClassifierKind::Centroid => match &cfg.classifier.model {
                Some(path) => {
                    let text = std::fs::read_to_string(path)
                        .map_err(|e| PipelineError::Model(format!("{}: {e}", path.display())))?;
                    Arc::new(CentroidModel::from_text(&text).map_err(|e| PipelineError::Model(e.to_string()))?)
                }
                None => Arc::new(default_model().clone()),
            },
            ClassifierKind::Remote => {
                let url = cfg.classifier.remote_url.as_deref().unwrap_or_default();
                let timeout = Duration::from_millis(cfg.classifier.timeout_ms);
                Arc::new(
                    RemoteClassifier::new(url, timeout, DEFAULT_MAX_IN_FLIGHT)
                        .map_err(|e| PipelineError::Model(e.to_string()))?,
                )
            }
        };
        Ok(Pipeline { signature: cfg.format.signature()?, reflow: cfg.reflow.clone(), classifier })
    }

    pub fn parse_bytes(
        &self,
        source_name: &str,
        bytes: &[u8],
        choice: FormatChoice,
    ) -> Result<ParseOutcome, PipelineError> {
        let (doc, mut report, _) = ingest_auto(source_name, bytes)?;
        let verdict = detect_format(&doc, &self.signature);
        let target = match choice {
            FormatChoice::Auto => verdict.format,
            FormatChoice::LinkedIn => DocumentFormat::LinkedInFormat,
            FormatChoice::Generic => DocumentFormat::Generic,
        };
        let (resume, format) = match target {
            DocumentFormat::LinkedInFormat => match parse_linkedin_with(&doc, &self.signature) {
                Ok(r) => (r, DocumentFormat::LinkedInFormat),
                // detection passed but the body broke the grammar: fall back
                Err(ParseError::StructureError(msg)) if choice == FormatChoice::Auto => {
                    report.warnings.push(format!("standard-format parse failed ({msg}); converted as generic"));
                    (convert_to_standard(&doc, self.classifier.as_ref(), &self.reflow)?, DocumentFormat::Generic)
                }
                Err(e) => return Err(e.into()),
            },
            DocumentFormat::Generic => {
                (convert_to_standard(&doc, self.classifier.as_ref(), &self.reflow)?, DocumentFormat::Generic)
            }
        };
        Ok(ParseOutcome { resume, format, verdict, report })
    }
}

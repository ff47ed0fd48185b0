//! Map-reduce execution of the analysis over a corpus.
//!
//! Every backend maps [`analyze_document`] over the documents and reduces
//! the resulting feature vectors with [`FeatureVector::merge_from`] at a
//! single owner, in doc-id order. Because the map step is pure and the
//! reduction is a commutative monoid, the three backends produce the same
//! report apart from [`RunMeta`].

mod distributed;
pub mod protocol;
pub mod worker;

use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use thiserror::Error;

use crate::corpus::{Corpus, Document, LoadFailure};
use crate::features::{extract_features_with_threshold, FeatureVector, DEFAULT_HARD_WORD_THRESHOLD};
use crate::formulas::{evaluate_all, EasyWordList, FormulaError, FormulaId, ReadabilityScore};
use crate::lingproc::{preprocess, LanguageProfile, ProcessedText, StopWordList};

pub use worker::{serve_worker, ShutdownHandle, Worker, WorkerError, WorkerOptions};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConfigError {
    #[error("at least one formula is required")]
    NoFormulas,
    #[error("dale_chall requires an easy-word list")]
    MissingEasyWordList,
    #[error("hard-word threshold must be at least 1")]
    ZeroThreshold,
}

/// Everything that determines the result of analyzing one document.
#[derive(Debug, Clone)]
pub struct PipelineConfig {
    pub profile: LanguageProfile,
    pub stoplist: StopWordList,
    pub formulas: Vec<FormulaId>,
    pub easy_list: Option<EasyWordList>,
    pub hard_word_threshold: usize,
}

impl PipelineConfig {
    pub fn new(
        profile: LanguageProfile,
        stoplist: StopWordList,
        formulas: Vec<FormulaId>,
        easy_list: Option<EasyWordList>,
    ) -> Result<Self, ConfigError> {
        Self::with_threshold(profile, stoplist, formulas, easy_list, DEFAULT_HARD_WORD_THRESHOLD)
    }

    pub fn with_threshold(
        profile: LanguageProfile,
        stoplist: StopWordList,
        formulas: Vec<FormulaId>,
        easy_list: Option<EasyWordList>,
        hard_word_threshold: usize,
    ) -> Result<Self, ConfigError> {
        if formulas.is_empty() {
            return Err(ConfigError::NoFormulas);
        }
        if formulas.contains(&FormulaId::DaleChall) && easy_list.is_none() {
            return Err(ConfigError::MissingEasyWordList);
        }
        if hard_word_threshold == 0 {
            return Err(ConfigError::ZeroThreshold);
        }
        Ok(Self {
            profile,
            stoplist,
            formulas,
            easy_list,
            hard_word_threshold,
        })
    }

    /// Hex SHA-256 over a canonical JSON rendering of the configuration.
    /// Master and workers compare digests to make sure they analyze with
    /// identical settings.
    pub fn digest(&self) -> String {
        #[derive(Serialize)]
        struct Canonical<'a> {
            profile: &'a LanguageProfile,
            stoplist: Vec<&'a String>,
            formulas: &'a [FormulaId],
            hard_word_threshold: usize,
            easy_words: Option<Vec<&'a String>>,
        }
        let canonical = Canonical {
            profile: &self.profile,
            stoplist: self.stoplist.words().iter().collect(),
            formulas: &self.formulas,
            hard_word_threshold: self.hard_word_threshold,
            easy_words: self.easy_list.as_ref().map(|e| e.words.iter().collect()),
        };
        let json = serde_json::to_vec(&canonical).expect("config serializes");
        hex::encode(Sha256::digest(&json))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DocumentResult {
    pub doc_id: String,
    pub features: FeatureVector,
    pub scores: Vec<ReadabilityScore>,
    /// Formulas that could not be evaluated for this document.
    pub errors: Vec<FormulaError>,
}

impl DocumentResult {
    pub fn is_failure(&self) -> bool {
        !self.errors.is_empty()
    }
}

/// Preprocess, extract features and score one document. Pure.
pub fn analyze_document(doc: &Document, cfg: &PipelineConfig) -> DocumentResult {
    let pt = preprocess(doc, &cfg.stoplist, &cfg.profile);
    result_from_processed(
        &pt,
        &cfg.profile,
        &cfg.formulas,
        cfg.easy_list.as_ref(),
        cfg.hard_word_threshold,
    )
}

pub(crate) fn result_from_processed(
    pt: &ProcessedText,
    profile: &LanguageProfile,
    formulas: &[FormulaId],
    easy_list: Option<&EasyWordList>,
    hard_word_threshold: usize,
) -> DocumentResult {
    let features = extract_features_with_threshold(pt, profile, hard_word_threshold);
    let (scores, errors) = split_outcomes(evaluate_all(formulas, &features, easy_list));
    DocumentResult {
        doc_id: pt.doc_id.clone(),
        features,
        scores,
        errors,
    }
}

fn split_outcomes(outcomes: Vec<Result<ReadabilityScore, FormulaError>>) -> (Vec<ReadabilityScore>, Vec<FormulaError>) {
    let mut scores = Vec::new();
    let mut errors = Vec::new();
    for o in outcomes {
        match o {
            Ok(s) => scores.push(s),
            Err(e) => errors.push(e),
        }
    }
    (scores, errors)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Backend {
    Sequential,
    Parallel { workers: usize },
    Distributed { endpoints: Vec<String> },
}

impl Backend {
    pub fn name(&self) -> &'static str {
        match self {
            Backend::Sequential => "sequential",
            Backend::Parallel { .. } => "parallel",
            Backend::Distributed { .. } => "distributed",
        }
    }

    pub fn worker_count(&self) -> usize {
        match self {
            Backend::Sequential => 1,
            Backend::Parallel { workers } => *workers,
            Backend::Distributed { endpoints } => endpoints.len(),
        }
    }
}

impl fmt::Display for Backend {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Backend::Sequential => f.write_str("seq"),
            Backend::Parallel { workers } => write!(f, "par({workers})"),
            Backend::Distributed { endpoints } => write!(f, "dist({})", endpoints.len()),
        }
    }
}

/// Short backend kind as used on the command line.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BackendKind {
    Seq,
    Par,
    Dist,
}

impl FromStr for BackendKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "seq" | "sequential" => Ok(BackendKind::Seq),
            "par" | "parallel" => Ok(BackendKind::Par),
            "dist" | "distributed" => Ok(BackendKind::Dist),
            other => Err(format!("unknown backend `{other}` (expected seq, par or dist)")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunMeta {
    pub backend: String,
    pub workers: usize,
    /// `None` when timing is suppressed for reproducible output.
    pub wall_time_secs: Option<f64>,
    pub document_count: usize,
    /// Documents with at least one diagnostic, plus files that failed to load.
    pub failure_count: usize,
    pub load_failures: Vec<LoadFailure>,
    /// Invalid UTF-8 sequences replaced across the corpus.
    pub replaced_sequences: usize,
    /// Distributed workers that dropped out during the run.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub lost_workers: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CorpusReport {
    /// Ordered by `doc_id`.
    pub per_document: Vec<DocumentResult>,
    pub aggregate: FeatureVector,
    pub aggregate_scores: Vec<ReadabilityScore>,
    pub aggregate_errors: Vec<FormulaError>,
    pub run_meta: RunMeta,
}

impl CorpusReport {
    /// Equality of everything except `run_meta`.
    pub fn same_results(&self, other: &CorpusReport) -> bool {
        self.per_document == other.per_document
            && self.aggregate == other.aggregate
            && self.aggregate_scores == other.aggregate_scores
            && self.aggregate_errors == other.aggregate_errors
    }
}

#[derive(Debug, Error)]
pub enum ExecError {
    #[error("distributed backend needs at least one worker endpoint")]
    NoEndpoints,
    #[error("parallel backend needs at least one worker thread")]
    NoThreads,
    #[error("worker {endpoint} unreachable: {message}")]
    WorkerUnreachable { endpoint: String, message: String },
    #[error("all workers lost with {pending} documents unfinished (last error: {last_error})")]
    AllWorkersLost { pending: usize, last_error: String },
    #[error("thread pool: {0}")]
    ThreadPool(String),
}

/// Analyze a corpus on `backend` and reduce the results.
pub fn run(corpus: &Corpus, cfg: &PipelineConfig, backend: &Backend) -> Result<CorpusReport, ExecError> {
    let started = Instant::now();
    let docs = corpus.documents();
    let mut lost_workers = Vec::new();
    let per_document = match backend {
        Backend::Sequential => docs.iter().map(|d| analyze_document(d, cfg)).collect(),
        Backend::Parallel { workers } => {
            if *workers == 0 {
                return Err(ExecError::NoThreads);
            }
            use rayon::prelude::*;
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(*workers)
                .build()
                .map_err(|e| ExecError::ThreadPool(e.to_string()))?;
            pool.install(|| docs.par_iter().map(|d| analyze_document(d, cfg)).collect())
        }
        Backend::Distributed { endpoints } => {
            let out = distributed::run_distributed(docs, cfg, endpoints)?;
            lost_workers = out.lost_workers;
            out.results
        }
    };

    let mut report = assemble(per_document, cfg);
    report.run_meta = RunMeta {
        backend: backend.name().to_string(),
        workers: backend.worker_count(),
        wall_time_secs: Some(started.elapsed().as_secs_f64()),
        document_count: docs.len(),
        failure_count: report.per_document.iter().filter(|r| r.is_failure()).count() + corpus.load_failures.len(),
        load_failures: corpus.load_failures.clone(),
        replaced_sequences: corpus.replaced_sequences(),
        lost_workers,
    };
    Ok(report)
}

/// Reduce per-document results (already in doc-id order) into a report
/// with placeholder metadata.
pub fn assemble(per_document: Vec<DocumentResult>, cfg: &PipelineConfig) -> CorpusReport {
    let aggregate: FeatureVector = per_document.iter().map(|r| &r.features).sum();
    let (aggregate_scores, aggregate_errors) =
        split_outcomes(evaluate_all(&cfg.formulas, &aggregate, cfg.easy_list.as_ref()));
    CorpusReport {
        run_meta: RunMeta {
            backend: String::new(),
            workers: 0,
            wall_time_secs: None,
            document_count: per_document.len(),
            failure_count: 0,
            load_failures: Vec::new(),
            replaced_sequences: 0,
            lost_workers: Vec::new(),
        },
        per_document,
        aggregate,
        aggregate_scores,
        aggregate_errors,
    }
}

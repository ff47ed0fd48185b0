//! Loading documents from disk and running external text converters.

use std::collections::BTreeSet;
use std::fs;
use std::io;
use std::path::{Path, PathBuf};
use std::process::Command;

use glob::{MatchOptions, Pattern};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;
use walkdir::WalkDir;

/// Placeholder substituted with the input path in converter templates.
pub const INPUT_PLACEHOLDER: &str = "{input}";

#[derive(Debug, Error)]
pub enum CorpusError {
    #[error("corpus root {0} does not exist or is not a directory")]
    RootNotFound(PathBuf),
    #[error("invalid file pattern `{pattern}`: {message}")]
    BadPattern { pattern: String, message: String },
    #[error("file not found: {0}")]
    FileNotFound(PathBuf),
    #[error("failed to read {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: io::Error,
    },
    #[error("duplicate document id `{0}`")]
    DuplicateId(String),
    #[error("document id is empty")]
    EmptyId,
    #[error("converter template `{0}` has no {{input}} placeholder")]
    MissingPlaceholder(String),
    #[error("converter program `{0}` not found")]
    ConverterNotFound(String),
    #[error("conversion of {path} failed: {reason}")]
    ConversionFailed { path: PathBuf, reason: ConversionFailure },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ConversionFailure {
    /// The converter exited unsuccessfully.
    Exit { status: Option<i32>, stderr: String },
    /// The converter succeeded but printed nothing for a non-empty input.
    EmptyOutput,
}

impl std::fmt::Display for ConversionFailure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ConversionFailure::Exit { status, stderr } => {
                match status {
                    Some(code) => write!(f, "exit status {code}")?,
                    None => write!(f, "terminated by signal")?,
                }
                let stderr = stderr.trim();
                if !stderr.is_empty() {
                    write!(f, ": {stderr}")?;
                }
                Ok(())
            }
            ConversionFailure::EmptyOutput => f.write_str("empty output"),
        }
    }
}

/// One corpus member after conversion to text.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Document {
    /// Path relative to the corpus root, `/`-separated.
    pub doc_id: String,
    pub source_path: PathBuf,
    pub raw_text: String,
    pub byte_size: u64,
    /// Invalid UTF-8 sequences replaced by U+FFFD while decoding.
    pub replaced_sequences: usize,
}

impl Document {
    pub fn from_text(doc_id: impl Into<String>, text: impl Into<String>) -> Self {
        let doc_id = doc_id.into();
        let raw_text = text.into();
        Self {
            source_path: PathBuf::from(&doc_id),
            byte_size: raw_text.len() as u64,
            doc_id,
            raw_text,
            replaced_sequences: 0,
        }
    }

    fn from_bytes(doc_id: String, source_path: PathBuf, bytes: &[u8]) -> Self {
        let (raw_text, replaced_sequences) = decode_lossy(bytes);
        Self {
            doc_id,
            source_path,
            raw_text,
            byte_size: bytes.len() as u64,
            replaced_sequences,
        }
    }
}

/// UTF-8 decode, replacing each maximal invalid sequence with U+FFFD.
fn decode_lossy(bytes: &[u8]) -> (String, usize) {
    let mut out = String::with_capacity(bytes.len());
    let mut replaced = 0;
    for chunk in bytes.utf8_chunks() {
        out.push_str(chunk.valid());
        if !chunk.invalid().is_empty() {
            out.push(char::REPLACEMENT_CHARACTER);
            replaced += 1;
        }
    }
    (out, replaced)
}

/// A file that matched the pattern but could not be read.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LoadFailure {
    pub path: PathBuf,
    pub message: String,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Corpus {
    pub root: PathBuf,
    documents: Vec<Document>,
    pub load_failures: Vec<LoadFailure>,
}

impl Corpus {
    /// Build a corpus from in-memory documents, sorting by id.
    pub fn from_documents(root: impl Into<PathBuf>, mut documents: Vec<Document>) -> Result<Self, CorpusError> {
        documents.sort_by(|a, b| a.doc_id.cmp(&b.doc_id));
        for pair in documents.windows(2) {
            if pair[0].doc_id == pair[1].doc_id {
                return Err(CorpusError::DuplicateId(pair[0].doc_id.clone()));
            }
        }
        if documents.iter().any(|d| d.doc_id.is_empty()) {
            return Err(CorpusError::EmptyId);
        }
        Ok(Self {
            root: root.into(),
            documents,
            load_failures: Vec::new(),
        })
    }

    pub fn documents(&self) -> &[Document] {
        &self.documents
    }

    pub fn len(&self) -> usize {
        self.documents.len()
    }

    pub fn is_empty(&self) -> bool {
        self.documents.is_empty()
    }

    /// The first `n` documents in id order.
    pub fn prefix(&self, n: usize) -> Corpus {
        Corpus {
            root: self.root.clone(),
            documents: self.documents[..n.min(self.len())].to_vec(),
            load_failures: Vec::new(),
        }
    }

    pub fn replaced_sequences(&self) -> usize {
        self.documents.iter().map(|d| d.replaced_sequences).sum()
    }
}

/// Load every regular file under `root` whose relative path matches
/// `pattern`. Only the top level is scanned unless `recursive` is set or
/// the pattern itself contains a `/`.
/// Matched `(doc_id, path)` pairs sorted by id, and entries the directory
/// walk could not read.
pub type Discovered = (Vec<(String, PathBuf)>, Vec<LoadFailure>);

/// Files under `root` matching `pattern`.
pub fn discover_files(root: &Path, pattern: &str, recursive: bool) -> Result<Discovered, CorpusError> {
    if !root.is_dir() {
        return Err(CorpusError::RootNotFound(root.to_path_buf()));
    }
    let matcher = Pattern::new(pattern).map_err(|e| CorpusError::BadPattern {
        pattern: pattern.to_string(),
        message: e.to_string(),
    })?;
    let opts = MatchOptions {
        case_sensitive: true,
        require_literal_separator: false,
        require_literal_leading_dot: false,
    };
    let deep = recursive || pattern.contains('/');

    let mut walker = WalkDir::new(root).min_depth(1).follow_links(true);
    if !deep {
        walker = walker.max_depth(1);
    }

    let mut candidates: Vec<(String, PathBuf)> = Vec::new();
    let mut load_failures = Vec::new();
    for entry in walker {
        let entry = match entry {
            Ok(e) => e,
            Err(e) => {
                load_failures.push(LoadFailure {
                    path: e.path().map(Path::to_path_buf).unwrap_or_else(|| root.to_path_buf()),
                    message: e.to_string(),
                });
                continue;
            }
        };
        if !entry.file_type().is_file() {
            continue;
        }
        let rel = relative_id(root, entry.path());
        // Without recursion the pattern applies to the file name; with it,
        // a pattern lacking `/` still matches names at any depth.
        let subject = if pattern.contains('/') {
            rel.as_str()
        } else {
            rel.rsplit('/').next().unwrap_or(&rel)
        };
        if matcher.matches_with(subject, opts) {
            candidates.push((rel, entry.into_path()));
        }
    }
    candidates.sort_by(|a, b| a.0.cmp(&b.0));
    Ok((candidates, load_failures))
}

pub fn load_corpus(root: &Path, pattern: &str, recursive: bool) -> Result<Corpus, CorpusError> {
    let (candidates, mut load_failures) = discover_files(root, pattern, recursive)?;
    let loaded: Vec<Result<Document, LoadFailure>> = candidates
        .into_par_iter()
        .map(|(id, path)| match fs::read(&path) {
            Ok(bytes) => Ok(Document::from_bytes(id, path, &bytes)),
            Err(e) => Err(LoadFailure {
                path,
                message: e.to_string(),
            }),
        })
        .collect();

    let mut documents = Vec::with_capacity(loaded.len());
    for r in loaded {
        match r {
            Ok(d) => documents.push(d),
            Err(f) => load_failures.push(f),
        }
    }
    Ok(Corpus {
        root: root.to_path_buf(),
        documents,
        load_failures,
    })
}

fn relative_id(root: &Path, path: &Path) -> String {
    let rel = path.strip_prefix(root).unwrap_or(path);
    rel.components()
        .map(|c| c.as_os_str().to_string_lossy())
        .collect::<Vec<_>>()
        .join("/")
}

/// Read one file as a document whose id is its file name.
pub fn read_document(path: &Path) -> Result<Document, CorpusError> {
    let bytes = fs::read(path).map_err(|e| match e.kind() {
        io::ErrorKind::NotFound => CorpusError::FileNotFound(path.to_path_buf()),
        _ => CorpusError::Io {
            path: path.to_path_buf(),
            source: e,
        },
    })?;
    Ok(Document::from_bytes(file_name(path), path.to_path_buf(), &bytes))
}

fn file_name(path: &Path) -> String {
    path.file_name()
        .map(|n| n.to_string_lossy().into_owned())
        .unwrap_or_else(|| path.to_string_lossy().into_owned())
}

/// Run an external converter and capture its stdout as the document text.
///
/// The template is split on whitespace; the first word is the program and
/// every `{input}` is replaced by `path`. No shell is involved.
pub fn convert_external(path: &Path, command_template: &str) -> Result<Document, CorpusError> {
    if !command_template.contains(INPUT_PLACEHOLDER) {
        return Err(CorpusError::MissingPlaceholder(command_template.to_string()));
    }
    let input = path.to_string_lossy();
    let mut words = command_template.split_whitespace();
    let program = words
        .next()
        .ok_or_else(|| CorpusError::MissingPlaceholder(command_template.to_string()))?;
    if program.contains(INPUT_PLACEHOLDER) {
        return Err(CorpusError::ConverterNotFound(program.to_string()));
    }
    let args: Vec<String> = words.map(|w| w.replace(INPUT_PLACEHOLDER, &input)).collect();

    let input_size = fs::metadata(path)
        .map_err(|e| match e.kind() {
            io::ErrorKind::NotFound => CorpusError::FileNotFound(path.to_path_buf()),
            _ => CorpusError::Io {
                path: path.to_path_buf(),
                source: e,
            },
        })?
        .len();

    let output = Command::new(program).args(&args).output().map_err(|e| match e.kind() {
        io::ErrorKind::NotFound | io::ErrorKind::PermissionDenied => {
            CorpusError::ConverterNotFound(program.to_string())
        }
        _ => CorpusError::Io {
            path: PathBuf::from(program),
            source: e,
        },
    })?;

    if !output.status.success() {
        return Err(CorpusError::ConversionFailed {
            path: path.to_path_buf(),
            reason: ConversionFailure::Exit {
                status: output.status.code(),
                stderr: String::from_utf8_lossy(&output.stderr).into_owned(),
            },
        });
    }
    if output.stdout.is_empty() && input_size > 0 {
        return Err(CorpusError::ConversionFailed {
            path: path.to_path_buf(),
            reason: ConversionFailure::EmptyOutput,
        });
    }
    Ok(Document::from_bytes(
        file_name(path),
        path.to_path_buf(),
        &output.stdout,
    ))
}

/// Convert many files on a pool of `jobs` threads. Results keep the order
/// of `paths`.
pub fn convert_files(
    paths: &[PathBuf],
    command_template: &str,
    jobs: usize,
) -> Result<Vec<Result<Document, CorpusError>>, rayon::ThreadPoolBuildError> {
    let pool = rayon::ThreadPoolBuilder::new().num_threads(jobs).build()?;
    Ok(pool.install(|| {
        paths
            .par_iter()
            .map(|p| convert_external(p, command_template))
            .collect()
    }))
}

/// Ids that appear in `corpus`; used to check that reports cover it.
pub fn doc_ids(corpus: &Corpus) -> BTreeSet<&str> {
    corpus.documents.iter().map(|d| d.doc_id.as_str()).collect()
}

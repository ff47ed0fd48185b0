//! Corpus-scale readability analysis.
//!
//! The pipeline has four stages, each in its own module:
//!
//! - [`corpus`] loads plain-text documents (or runs an external converter),
//! - [`lingproc`] normalizes, segments, tokenizes and filters them,
//! - [`features`] folds the token stream into a mergeable [`FeatureVector`],
//! - [`formulas`] evaluates the classic readability formulas on those counts.
//!
//! [`executor`] runs the whole thing as a map-reduce job on one of three
//! backends (sequential, rayon thread pool, or TCP master/worker) and
//! guarantees that all of them produce the same [`CorpusReport`].
//! [`stopwords`] induces stop-word lists from corpus term frequencies and
//! [`report`] renders reports as JSON or CSV.
//!
//! ```
//! use readcorpus::{analyze_text, FormulaId, LanguageProfile, StopWordList};
//!
//! let profile = LanguageProfile::turkish();
//! let stop = StopWordList::builtin(&profile);
//! let result = analyze_text("Ali ve Ayşe okula gitti.", &profile, &stop, &[FormulaId::Atesman], None);
//! assert_eq!(result.features.word_count, 4);
//! ```

pub mod corpus;
pub mod executor;
pub mod features;
pub mod formulas;
pub mod lingproc;
pub mod report;
pub mod stopwords;
pub mod synth;

pub use corpus::{
    convert_external, convert_files, discover_files, load_corpus, read_document, Corpus, CorpusError, Document,
};
pub use executor::{analyze_document, run, Backend, CorpusReport, DocumentResult, ExecError, PipelineConfig};
pub use features::{distinct_count, extract_features, merge, FeatureVector};
pub use formulas::{evaluate_all, evaluate_formula, EasyWordList, FormulaError, FormulaId, ReadabilityScore};
pub use lingproc::{
    count_letters, count_syllables, filter_tokens, normalize, preprocess, segment_sentences, tokenize, CaseFolding,
    LanguageProfile, ProcessedText, StopWordList,
};
pub use stopwords::{build_stoplist, induction_features, load_stoplist, render_stoplist, save_stoplist};

/// Analyze a single in-memory text without going through a [`Corpus`].
///
/// Handy for interactive front ends; equivalent to wrapping the text in a
/// [`Document`] and calling [`analyze_document`].
pub fn analyze_text(
    text: &str,
    profile: &LanguageProfile,
    stoplist: &StopWordList,
    formulas: &[FormulaId],
    easy_list: Option<&EasyWordList>,
) -> DocumentResult {
    let doc = Document::from_text("input", text);
    let pt = preprocess(&doc, stoplist, profile);
    executor::result_from_processed(&pt, profile, formulas, easy_list, features::DEFAULT_HARD_WORD_THRESHOLD)
}

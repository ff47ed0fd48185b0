//! Text preprocessing: normalization, sentence segmentation, tokenization
//! and filtering, plus the per-language data those steps depend on.
//!
//! Sentences are counted before filtering, so removing stop words never
//! changes a sentence count. Hyphenated tokens are dropped whole because
//! `-` is one of the filtered special characters.

mod profile;
mod segment;
mod syllable;
mod token;

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

pub use profile::{CaseFolding, LanguageProfile, ProfileError, PROFILE_EXTENSION};
pub use segment::segment_sentences;
pub use syllable::{count_syllables, SyllableError};
pub use token::{count_letters, filter_tokens, normalize, tokenize, SPECIAL_CHARS};

pub(crate) use profile::parse_word_list;
pub(crate) use syllable::syllables_unchecked;

use crate::corpus::Document;

const TR_STOP: &str = include_str!("../../data/tr.stop");
const EN_STOP: &str = include_str!("../../data/en.stop");

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum StopWordOrigin {
    Builtin,
    File,
    Induced,
}

/// A set of stop words. `ranking` remembers the order entries were given
/// in (frequency rank for induced lists) so saved files keep it.
#[derive(Debug, Clone)]
pub struct StopWordList {
    words: BTreeSet<String>,
    ranking: Vec<String>,
    pub origin: StopWordOrigin,
}

impl PartialEq for StopWordList {
    fn eq(&self, other: &Self) -> bool {
        self.words == other.words
    }
}

impl Eq for StopWordList {}

impl StopWordList {
    pub fn new<I, S>(words: I, origin: StopWordOrigin) -> Self
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let mut set = BTreeSet::new();
        let mut ranking = Vec::new();
        for w in words {
            let w = w.into();
            if set.insert(w.clone()) {
                ranking.push(w);
            }
        }
        Self {
            words: set,
            ranking,
            origin,
        }
    }

    pub fn empty() -> Self {
        Self::new(Vec::<String>::new(), StopWordOrigin::Builtin)
    }

    /// Bundled function-word list for the profile's language (empty for
    /// languages without one).
    pub fn builtin(profile: &LanguageProfile) -> Self {
        let text = match profile.lang_code.as_str() {
            "tr" => TR_STOP,
            "en" => EN_STOP,
            _ => "",
        };
        Self::new(
            parse_word_list(text).into_iter().map(|w| profile.fold(&w)),
            StopWordOrigin::Builtin,
        )
    }

    pub fn contains(&self, word: &str) -> bool {
        self.words.contains(word)
    }

    pub fn words(&self) -> &BTreeSet<String> {
        &self.words
    }

    /// Entries in the order they were supplied.
    pub fn ranked(&self) -> &[String] {
        &self.ranking
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }
}

/// Output of [`preprocess`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProcessedText {
    pub doc_id: String,
    pub sentence_count: usize,
    /// Case-folded tokens that survived filtering, in text order.
    pub tokens: Vec<String>,
    /// Word tokens before filtering.
    pub raw_token_count: usize,
}

/// Normalize, segment, tokenize and filter one document.
pub fn preprocess(doc: &Document, stoplist: &StopWordList, profile: &LanguageProfile) -> ProcessedText {
    let text = normalize(&doc.raw_text, profile);
    let sentences = segment_sentences(&text, profile);
    process_sentences(&doc.doc_id, &sentences, stoplist, profile)
}

/// Tokenize and filter an already segmented run of sentences. Used by
/// [`preprocess`] and by callers that split a document into chunks.
pub fn process_sentences<S: AsRef<str>>(
    doc_id: &str,
    sentences: &[S],
    stoplist: &StopWordList,
    profile: &LanguageProfile,
) -> ProcessedText {
    let mut raw_token_count = 0;
    let mut tokens = Vec::new();
    for s in sentences {
        let raw = tokenize(s.as_ref(), profile);
        raw_token_count += raw.len();
        tokens.extend(filter_tokens(&raw, stoplist, profile));
    }
    ProcessedText {
        doc_id: doc_id.to_string(),
        sentence_count: sentences.len(),
        tokens,
        raw_token_count,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn doc(text: &str) -> Document {
        Document::from_text("t.txt", text)
    }

    #[test]
    fn preprocess_hand_trace() {
        let tr = LanguageProfile::turkish();
        let stop = StopWordList::new(["ve"], StopWordOrigin::File);
        let pt = preprocess(&doc("Ali ve Ayşe okula gitti."), &stop, &tr);
        assert_eq!(pt.sentence_count, 1);
        assert_eq!(pt.tokens, vec!["ali", "ayşe", "okula", "gitti"]);
        assert_eq!(pt.raw_token_count, 5);
    }

    #[test]
    fn preprocess_empty() {
        let tr = LanguageProfile::turkish();
        let pt = preprocess(&doc(""), &StopWordList::empty(), &tr);
        assert_eq!((pt.sentence_count, pt.tokens.len(), pt.raw_token_count), (0, 0, 0));
    }

    #[test]
    fn builtin_stoplists_are_folded() {
        let tr = LanguageProfile::turkish();
        let stop = StopWordList::builtin(&tr);
        assert!(stop.contains("ve") && stop.contains("bir") && stop.contains("şu"));
        assert!(stop.len() >= 50);
        assert!(stop.words().iter().all(|w| *w == tr.fold(w)));
        assert!(!StopWordList::builtin(&LanguageProfile::english()).is_empty());
    }

    #[test]
    fn stoplist_keeps_first_seen_ranking() {
        let s = StopWordList::new(["b", "a", "b"], StopWordOrigin::Induced);
        assert_eq!(s.ranked(), ["b", "a"]);
        assert_eq!(s.len(), 2);
    }
}

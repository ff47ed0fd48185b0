//! Browser bindings for the readability toolkit. Every export takes and
//! returns plain strings or numbers; structured results are JSON.

use std::collections::BTreeMap;

use readcorpus::features::DEFAULT_HARD_WORD_THRESHOLD;
use readcorpus::{
    count_syllables, evaluate_formula, normalize, tokenize, FeatureVector, FormulaId, LanguageProfile, StopWordList,
};
use serde::Serialize;
use wasm_bindgen::prelude::*;

#[derive(Serialize)]
struct Analysis {
    sentences: u64,
    words: u64,
    syllables: u64,
    letters: u64,
    hard_words: u64,
    distinct_words: usize,
    scores: BTreeMap<&'static str, f64>,
    errors: Vec<String>,
}

#[derive(Serialize)]
struct WordSyllables {
    word: String,
    syllables: usize,
    hard: bool,
}

fn stoplist(mode: &str, profile: &LanguageProfile) -> Result<StopWordList, String> {
    match mode {
        "builtin" => Ok(StopWordList::builtin(profile)),
        "none" => Ok(StopWordList::empty()),
        other => Err(format!("unknown stop-word mode `{other}` (expected builtin or none)")),
    }
}

/// Features and scores for one text, as JSON.
pub fn analyze_json(text: &str, lang: &str, stopwords: &str) -> Result<String, String> {
    let profile = LanguageProfile::builtin(lang).map_err(|e| e.to_string())?;
    let stop = stoplist(stopwords, &profile)?;
    // dale_chall needs an easy-word list, which the page does not have
    let formulas: Vec<FormulaId> = FormulaId::ALL
        .into_iter()
        .filter(|f| *f != FormulaId::DaleChall)
        .collect();
    let r = readcorpus::analyze_text(text, &profile, &stop, &formulas, None);
    let f = &r.features;
    let out = Analysis {
        sentences: f.sentence_count,
        words: f.word_count,
        syllables: f.syllable_count,
        letters: f.letter_count,
        hard_words: f.hard_word_count,
        distinct_words: f.distinct_count(),
        scores: r.scores.iter().map(|s| (s.formula.name(), s.value)).collect(),
        errors: r.errors.iter().map(|e| e.to_string()).collect(),
    };
    serde_json::to_string(&out).map_err(|e| e.to_string())
}

/// Syllable count for each word of `text`, in order, as JSON.
pub fn syllables_json(text: &str, lang: &str) -> Result<String, String> {
    let profile = LanguageProfile::builtin(lang).map_err(|e| e.to_string())?;
    let words: Vec<WordSyllables> = tokenize(&normalize(text, &profile), &profile)
        .into_iter()
        .filter_map(|word| {
            let syllables = count_syllables(&word, &profile).ok()?;
            Some(WordSyllables {
                hard: syllables >= DEFAULT_HARD_WORD_THRESHOLD,
                word,
                syllables,
            })
        })
        .collect();
    serde_json::to_string(&words).map_err(|e| e.to_string())
}

/// Score raw counts with one formula, for the what-if sliders.
pub fn score_from_counts(
    formula: &str,
    words: u64,
    sentences: u64,
    syllables: u64,
    letters: u64,
    hard_words: u64,
) -> Result<f64, String> {
    let id: FormulaId = formula.parse().map_err(|e: readcorpus::FormulaError| e.to_string())?;
    let v = FeatureVector {
        word_count: words,
        sentence_count: sentences,
        syllable_count: syllables,
        letter_count: letters,
        hard_word_count: hard_words,
        term_frequencies: BTreeMap::new(),
    };
    evaluate_formula(id, &v, None)
        .map(|s| s.value)
        .map_err(|e| e.to_string())
}

#[wasm_bindgen]
pub fn analyze(text: &str, lang: &str, stopwords: &str) -> Result<String, JsError> {
    analyze_json(text, lang, stopwords).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn syllables(text: &str, lang: &str) -> Result<String, JsError> {
    syllables_json(text, lang).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn score(
    formula: &str,
    words: u32,
    sentences: u32,
    syllables: u32,
    letters: u32,
    hard_words: u32,
) -> Result<f64, JsError> {
    score_from_counts(
        formula,
        words.into(),
        sentences.into(),
        syllables.into(),
        letters.into(),
        hard_words.into(),
    )
    .map_err(|e| JsError::new(&e))
}

//! The seven readability formulas, evaluated on a [`FeatureVector`].
//!
//! Each formula is a function of ratios only. Every ratio is a single
//! division of two exact integer counts, so scaling all counts by the same
//! factor reproduces the same bits. Expressions are evaluated left to right
//! exactly as written below; nothing is rounded here.
//!
//! | formula | expression |
//! |---|---|
//! | Flesch Reading Ease | `206.835 − 1.015·W/S − 84.6·Y/W` |
//! | Flesch-Kincaid Grade | `0.39·W/S + 11.8·Y/W − 15.59` |
//! | SMOG | `1.0430·√(30·H/S) + 3.1291` |
//! | Gunning Fog | `0.4·(W/S + 100·H/W)` |
//! | ARI | `4.71·L/W + 0.5·W/S − 21.43` |
//! | Dale-Chall | `0.1579·(100·D/W) + 0.0496·W/S` |
//! | Ateşman | `198.825 − 40.175·Y/W − 2.610·W/S` |
//!
//! W words, S sentences, Y syllables, L letters, H hard words, D words not
//! in the easy-word list. Dale-Chall is used as printed, without the
//! `+3.6365` adjustment of the 1995 revision.

use std::collections::BTreeSet;
use std::fmt;
use std::fs;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::features::FeatureVector;
use crate::lingproc::{parse_word_list, CaseFolding};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FormulaId {
    FleschReadingEase,
    FleschKincaidGrade,
    Smog,
    GunningFog,
    Ari,
    DaleChall,
    Atesman,
}

impl FormulaId {
    pub const ALL: [FormulaId; 7] = [
        FormulaId::FleschReadingEase,
        FormulaId::FleschKincaidGrade,
        FormulaId::Smog,
        FormulaId::GunningFog,
        FormulaId::Ari,
        FormulaId::DaleChall,
        FormulaId::Atesman,
    ];

    pub fn name(self) -> &'static str {
        match self {
            FormulaId::FleschReadingEase => "flesch_reading_ease",
            FormulaId::FleschKincaidGrade => "flesch_kincaid_grade",
            FormulaId::Smog => "smog",
            FormulaId::GunningFog => "gunning_fog",
            FormulaId::Ari => "ari",
            FormulaId::DaleChall => "dale_chall",
            FormulaId::Atesman => "atesman",
        }
    }

    /// Ease scales go up as text gets easier; grade scales go down.
    pub fn is_ease_scale(self) -> bool {
        matches!(self, FormulaId::FleschReadingEase | FormulaId::Atesman)
    }

    /// Default formula set for a language. Dale-Chall is only included when
    /// an easy-word list is available.
    pub fn defaults(lang: &str, have_easy_list: bool) -> Vec<FormulaId> {
        match lang {
            "tr" => vec![FormulaId::Atesman, FormulaId::FleschReadingEase],
            _ => FormulaId::ALL
                .into_iter()
                .filter(|f| *f != FormulaId::DaleChall || have_easy_list)
                .collect(),
        }
    }

    /// Parse a comma-separated list such as `atesman,smog`.
    pub fn parse_list(s: &str) -> Result<Vec<FormulaId>, FormulaError> {
        s.split(',')
            .map(str::trim)
            .filter(|p| !p.is_empty())
            .map(str::parse)
            .collect()
    }

    fn apply(self, x: &ScoreInputs) -> Result<f64, FormulaError> {
        let need = |v: Option<f64>| v.ok_or(FormulaError::IncompleteInputs(self));
        let wps = x.words_per_sentence;
        Ok(match self {
            FormulaId::FleschReadingEase => 206.835 - 1.015 * wps - 84.6 * need(x.syllables_per_word)?,
            FormulaId::FleschKincaidGrade => 0.39 * wps + 11.8 * need(x.syllables_per_word)? - 15.59,
            FormulaId::Smog => 1.0430 * need(x.hard_words_per_30_sentences)?.sqrt() + 3.1291,
            FormulaId::GunningFog => 0.4 * (wps + 100.0 * need(x.hard_word_fraction)?),
            FormulaId::Ari => 4.71 * need(x.letters_per_word)? + 0.5 * wps - 21.43,
            FormulaId::DaleChall => 0.1579 * (need(x.difficult_word_fraction)? * 100.0) + 0.0496 * wps,
            FormulaId::Atesman => 198.825 - 40.175 * need(x.syllables_per_word)? - 2.610 * wps,
        })
    }
}

impl fmt::Display for FormulaId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for FormulaId {
    type Err = FormulaError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        FormulaId::ALL
            .into_iter()
            .find(|f| f.name() == s)
            .ok_or_else(|| FormulaError::UnknownFormula(s.to_string()))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum FormulaError {
    #[error("{formula}: no words or no sentences")]
    EmptyFeatures { formula: FormulaId },
    #[error("{formula}: an easy-word list is required")]
    MissingEasyWordList { formula: FormulaId },
    #[error("unknown formula `{0}`")]
    UnknownFormula(String),
    #[error("{0}: score inputs lack a ratio this formula needs")]
    IncompleteInputs(FormulaId),
}

/// Vocabulary considered easy by Dale-Chall.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EasyWordList {
    pub words: BTreeSet<String>,
    pub source_path: Option<PathBuf>,
}

#[derive(Debug, Error)]
pub enum EasyWordListError {
    #[error("failed to read easy-word list {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("easy-word list {0} is empty")]
    Empty(PathBuf),
}

impl EasyWordList {
    pub fn new<I, S>(words: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        Self {
            words: words.into_iter().map(Into::into).collect(),
            source_path: None,
        }
    }

    /// Same file format as stop-word lists: one word per line, `#` comments.
    pub fn from_file(path: &Path, folding: CaseFolding) -> Result<Self, EasyWordListError> {
        let text = fs::read_to_string(path).map_err(|source| EasyWordListError::Io {
            path: path.to_path_buf(),
            source,
        })?;
        let words: BTreeSet<String> = parse_word_list(&text).iter().map(|w| folding.fold(w)).collect();
        if words.is_empty() {
            return Err(EasyWordListError::Empty(path.to_path_buf()));
        }
        Ok(Self {
            words,
            source_path: Some(path.to_path_buf()),
        })
    }

    pub fn contains(&self, word: &str) -> bool {
        self.words.contains(word)
    }
}

/// The ratios a score was computed from. Only the ones the formula uses
/// are present.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ScoreInputs {
    pub words_per_sentence: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub syllables_per_word: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub letters_per_word: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub hard_word_fraction: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub hard_words_per_30_sentences: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub difficult_word_fraction: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReadabilityScore {
    pub formula: FormulaId,
    pub value: f64,
    pub inputs: ScoreInputs,
}

impl ReadabilityScore {
    /// Re-evaluate the formula from the stored ratios.
    pub fn recompute(&self) -> Result<f64, FormulaError> {
        self.formula.apply(&self.inputs)
    }
}

fn ratio(num: u64, den: u64) -> f64 {
    num as f64 / den as f64
}

pub fn evaluate_formula(
    id: FormulaId,
    v: &FeatureVector,
    easy_list: Option<&EasyWordList>,
) -> Result<ReadabilityScore, FormulaError> {
    if v.word_count == 0 || v.sentence_count == 0 {
        return Err(FormulaError::EmptyFeatures { formula: id });
    }
    let words = v.word_count;
    let mut inputs = ScoreInputs {
        words_per_sentence: ratio(words, v.sentence_count),
        syllables_per_word: None,
        letters_per_word: None,
        hard_word_fraction: None,
        hard_words_per_30_sentences: None,
        difficult_word_fraction: None,
    };
    match id {
        FormulaId::FleschReadingEase | FormulaId::FleschKincaidGrade | FormulaId::Atesman => {
            inputs.syllables_per_word = Some(ratio(v.syllable_count, words));
        }
        FormulaId::Smog => {
            inputs.hard_words_per_30_sentences = Some(ratio(30 * v.hard_word_count, v.sentence_count));
        }
        FormulaId::GunningFog => {
            inputs.hard_word_fraction = Some(ratio(v.hard_word_count, words));
        }
        FormulaId::Ari => {
            inputs.letters_per_word = Some(ratio(v.letter_count, words));
        }
        FormulaId::DaleChall => {
            let easy = easy_list.ok_or(FormulaError::MissingEasyWordList { formula: id })?;
            let difficult: u64 = v
                .term_frequencies
                .iter()
                .filter(|(w, _)| !easy.contains(w))
                .map(|(_, n)| n)
                .sum();
            inputs.difficult_word_fraction = Some(ratio(difficult, words));
        }
    }
    let value = id.apply(&inputs)?;
    Ok(ReadabilityScore {
        formula: id,
        value,
        inputs,
    })
}

/// One outcome per requested formula, in request order.
pub fn evaluate_all(
    ids: &[FormulaId],
    v: &FeatureVector,
    easy_list: Option<&EasyWordList>,
) -> Vec<Result<ReadabilityScore, FormulaError>> {
    ids.iter().map(|&id| evaluate_formula(id, v, easy_list)).collect()
}

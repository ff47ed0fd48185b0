//! Shallow feature counts and their merge monoid.
//!
//! A [`FeatureVector`] holds every count the readability formulas need.
//! Vectors of disjoint pieces of text merge by plain addition, so a corpus
//! total can be folded from per-document (or per-chunk) vectors in any
//! order and grouping.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::lingproc::{count_letters, syllables_unchecked, LanguageProfile, ProcessedText};

/// Words with at least this many syllables are "hard".
pub const DEFAULT_HARD_WORD_THRESHOLD: usize = 3;

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct FeatureVector {
    pub word_count: u64,
    pub sentence_count: u64,
    pub syllable_count: u64,
    pub letter_count: u64,
    pub hard_word_count: u64,
    /// Serialized as `[[word, count], ...]` sorted by word.
    #[serde(with = "sorted_pairs")]
    pub term_frequencies: BTreeMap<String, u64>,
}

impl FeatureVector {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn distinct_count(&self) -> usize {
        self.term_frequencies.len()
    }

    pub fn merge_from(&mut self, other: &FeatureVector) {
        self.word_count += other.word_count;
        self.sentence_count += other.sentence_count;
        self.syllable_count += other.syllable_count;
        self.letter_count += other.letter_count;
        self.hard_word_count += other.hard_word_count;
        for (w, n) in &other.term_frequencies {
            *self.term_frequencies.entry(w.clone()).or_insert(0) += n;
        }
    }

    /// Every counter and term frequency multiplied by `k`.
    pub fn scaled(&self, k: u64) -> Self {
        Self {
            word_count: self.word_count * k,
            sentence_count: self.sentence_count * k,
            syllable_count: self.syllable_count * k,
            letter_count: self.letter_count * k,
            hard_word_count: self.hard_word_count * k,
            term_frequencies: self.term_frequencies.iter().map(|(w, n)| (w.clone(), n * k)).collect(),
        }
    }
}

impl std::iter::Sum for FeatureVector {
    fn sum<I: Iterator<Item = Self>>(iter: I) -> Self {
        iter.fold(Self::zero(), |mut acc, v| {
            acc.merge_from(&v);
            acc
        })
    }
}

impl<'a> std::iter::Sum<&'a FeatureVector> for FeatureVector {
    fn sum<I: Iterator<Item = &'a FeatureVector>>(iter: I) -> Self {
        iter.fold(Self::zero(), |mut acc, v| {
            acc.merge_from(v);
            acc
        })
    }
}

pub fn extract_features(pt: &ProcessedText, profile: &LanguageProfile) -> FeatureVector {
    extract_features_with_threshold(pt, profile, DEFAULT_HARD_WORD_THRESHOLD)
}

/// As [`extract_features`] with an explicit hard-word threshold (3 by
/// default; 4 gives the literal "more than three syllables" reading).
pub fn extract_features_with_threshold(
    pt: &ProcessedText,
    profile: &LanguageProfile,
    hard_word_threshold: usize,
) -> FeatureVector {
    let mut v = FeatureVector {
        sentence_count: pt.sentence_count as u64,
        ..FeatureVector::zero()
    };
    for t in &pt.tokens {
        let syl = syllables_unchecked(t, profile);
        v.word_count += 1;
        v.syllable_count += syl as u64;
        v.letter_count += count_letters(t) as u64;
        if syl >= hard_word_threshold {
            v.hard_word_count += 1;
        }
        *v.term_frequencies.entry(t.clone()).or_insert(0) += 1;
    }
    v
}

pub fn merge(a: &FeatureVector, b: &FeatureVector) -> FeatureVector {
    let mut out = a.clone();
    out.merge_from(b);
    out
}

pub fn distinct_count(v: &FeatureVector) -> usize {
    v.distinct_count()
}

mod sorted_pairs {
    use std::collections::BTreeMap;

    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    pub fn serialize<S: Serializer>(map: &BTreeMap<String, u64>, s: S) -> Result<S::Ok, S::Error> {
        let pairs: Vec<(&String, &u64)> = map.iter().collect();
        pairs.serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BTreeMap<String, u64>, D::Error> {
        let pairs: Vec<(String, u64)> = Vec::deserialize(d)?;
        let mut map = BTreeMap::new();
        for (w, n) in pairs {
            if map.insert(w, n).is_some() {
                return Err(serde::de::Error::custom("duplicate term in term_frequencies"));
            }
        }
        Ok(map)
    }
}

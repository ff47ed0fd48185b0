use unicode_normalization::UnicodeNormalization;

use super::{LanguageProfile, StopWordList};

/// Characters whose presence drops a whole token during filtering.
pub const SPECIAL_CHARS: [char; 9] = ['+', '-', '*', '#', '/', '\\', '$', '=', '&'];

/// Canonical composition (NFC). Case is left alone.
pub fn normalize(raw_text: &str, _profile: &LanguageProfile) -> String {
    raw_text.nfc().collect()
}

/// Split on whitespace runs, strip leading/trailing non-alphanumerics and
/// case-fold. Tokens that are pure punctuation disappear.
pub fn tokenize(sentence: &str, profile: &LanguageProfile) -> Vec<String> {
    sentence
        .split_whitespace()
        .map(|w| w.trim_matches(|c: char| !c.is_alphanumeric()))
        .filter(|w| !w.is_empty())
        .map(|w| profile.fold(w))
        .collect()
}

pub(crate) fn is_filtered(token: &str, stoplist: &StopWordList) -> bool {
    token.is_empty() || token.chars().any(|c| c.is_numeric() || SPECIAL_CHARS.contains(&c)) || stoplist.contains(token)
}

/// Drop tokens carrying a special character or a digit, and stop words.
/// Survivors keep their order.
pub fn filter_tokens(tokens: &[String], stoplist: &StopWordList, _profile: &LanguageProfile) -> Vec<String> {
    tokens.iter().filter(|t| !is_filtered(t, stoplist)).cloned().collect()
}

/// Alphabetic characters only.
pub fn count_letters(word: &str) -> usize {
    word.chars().filter(|c| c.is_alphabetic()).count()
}

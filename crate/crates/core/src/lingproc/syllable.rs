use thiserror::Error;

use super::LanguageProfile;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SyllableError {
    #[error("cannot count syllables of an empty word")]
    EmptyWord,
}

/// Syllables in a case-folded word, never less than one.
///
/// Turkish orthography puts exactly one vowel in each syllable, so the
/// Turkish count is the vowel count. Every other profile uses the English
/// vowel-group heuristic; see [`english_syllables`].
pub fn count_syllables(word: &str, profile: &LanguageProfile) -> Result<usize, SyllableError> {
    if word.is_empty() {
        return Err(SyllableError::EmptyWord);
    }
    Ok(syllables_unchecked(word, profile))
}

pub(crate) fn syllables_unchecked(word: &str, profile: &LanguageProfile) -> usize {
    let n = if profile.lang_code == "tr" {
        word.chars().filter(|&c| profile.is_vowel(c)).count()
    } else {
        english_syllables(word, profile)
    };
    n.max(1)
}

/// Maximal vowel groups, minus one for a silent final `e` that follows a
/// consonant. A final consonant + `le` (table, people) keeps its syllable.
/// Approximate; callers floor the result at one.
fn english_syllables(word: &str, profile: &LanguageProfile) -> usize {
    let chars: Vec<char> = word.chars().collect();
    let mut groups = 0usize;
    let mut in_group = false;
    for &c in &chars {
        let v = profile.is_vowel(c);
        if v && !in_group {
            groups += 1;
        }
        in_group = v;
    }

    let n = chars.len();
    let is_consonant = |c: char| c.is_alphabetic() && !profile.is_vowel(c);
    if n > 2 && chars[n - 1] == 'e' && is_consonant(chars[n - 2]) {
        let consonant_le = chars[n - 2] == 'l' && n > 3 && is_consonant(chars[n - 3]);
        if !consonant_le {
            groups = groups.saturating_sub(1);
        }
    }
    groups
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn turkish_examples() {
        let tr = LanguageProfile::turkish();
        assert_eq!(count_syllables("okul", &tr), Ok(2));
        assert_eq!(count_syllables("merhaba", &tr), Ok(3));
        assert_eq!(count_syllables("brr", &tr), Ok(1));
        assert_eq!(count_syllables("", &tr), Err(SyllableError::EmptyWord));
    }

    #[test]
    fn english_examples() {
        let en = LanguageProfile::english();
        assert_eq!(count_syllables("table", &en), Ok(2));
        assert_eq!(count_syllables("make", &en), Ok(1));
        assert_eq!(count_syllables("the", &en), Ok(1));
        assert_eq!(count_syllables("be", &en), Ok(1));
        assert_eq!(count_syllables("city", &en), Ok(2));
        assert_eq!(count_syllables("hmm", &en), Ok(1));
    }
}

use super::LanguageProfile;

fn is_closing(c: char) -> bool {
    matches!(c, '"' | '\'' | '”' | '’' | ')' | ']' | '»' | '›')
}

fn is_opening(c: char) -> bool {
    matches!(c, '"' | '\'' | '“' | '‘' | '(' | '[' | '«' | '‹' | '-' | '–' | '—')
}

fn has_word_char(s: &str) -> bool {
    s.chars().any(char::is_alphanumeric)
}

/// Split normalized text into sentences.
///
/// A run of terminators (so `...` and `?!` count once) ends a sentence when
/// it is followed by whitespace and then an uppercase letter, or by the end
/// of the text. Closing quotes/brackets may sit between the run and the
/// whitespace, opening ones between the whitespace and the capital. A lone
/// `.` after a known abbreviation never ends a sentence.
///
/// Pieces without any alphanumeric character are never emitted on their
/// own: they stay attached to the neighbouring sentence.
pub fn segment_sentences(text: &str, profile: &LanguageProfile) -> Vec<String> {
    let chars: Vec<(usize, char)> = text.char_indices().collect();
    let n = chars.len();
    let byte_at = |i: usize| if i < n { chars[i].0 } else { text.len() };

    let mut ranges: Vec<(usize, usize)> = Vec::new();
    let mut start = 0usize;
    let mut i = 0usize;
    while i < n {
        if !profile.is_terminator(chars[i].1) {
            i += 1;
            continue;
        }
        let mut j = i;
        while j < n && profile.is_terminator(chars[j].1) {
            j += 1;
        }
        let mut k = j;
        while k < n && is_closing(chars[k].1) {
            k += 1;
        }

        let mut boundary = if k == n {
            true
        } else if chars[k].1.is_whitespace() {
            let mut m = k;
            while m < n && (chars[m].1.is_whitespace() || is_opening(chars[m].1)) {
                m += 1;
            }
            m == n || chars[m].1.is_uppercase()
        } else {
            false
        };

        if boundary && j == i + 1 && chars[i].1 == '.' {
            boundary = !(follows_abbreviation(text, chars[i].0, profile) || interior_to_number(&chars, i));
        }

        let end = byte_at(k);
        if boundary && has_word_char(&text[start..end]) {
            ranges.push((start, end));
            start = end;
        }
        i = k;
    }

    if has_word_char(&text[start..]) {
        ranges.push((start, text.len()));
    } else if let Some(last) = ranges.last_mut() {
        last.1 = text.len();
    }

    ranges.into_iter().map(|(s, e)| text[s..e].trim().to_string()).collect()
}

fn follows_abbreviation(text: &str, dot: usize, profile: &LanguageProfile) -> bool {
    let before = &text[..dot];
    let token_start = before
        .char_indices()
        .rev()
        .find(|(_, c)| c.is_whitespace())
        .map(|(i, c)| i + c.len_utf8())
        .unwrap_or(0);
    let token = before[token_start..].trim_start_matches(|c: char| !c.is_alphanumeric());
    !token.is_empty() && profile.abbreviations.contains(&profile.fold(token))
}

fn interior_to_number(chars: &[(usize, char)], dot: usize) -> bool {
    dot > 0 && chars[dot - 1].1.is_ascii_digit() && chars.get(dot + 1).is_some_and(|(_, c)| c.is_ascii_digit())
}

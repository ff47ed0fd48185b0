use std::collections::BTreeSet;
use std::fmt;
use std::fs;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

const TR_PROFILE: &str = include_str!("../../data/tr.profile");
const TR_ABBREV: &str = include_str!("../../data/tr.abbrev");
const EN_PROFILE: &str = include_str!("../../data/en.profile");
const EN_ABBREV: &str = include_str!("../../data/en.abbrev");

/// File extension of profile files inside a profile directory.
pub const PROFILE_EXTENSION: &str = "profile";

#[derive(Debug, Error)]
pub enum ProfileError {
    #[error("failed to read {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("line {line}: expected `key = value`")]
    MalformedLine { line: usize },
    #[error("unknown profile key `{0}`")]
    UnknownKey(String),
    #[error("missing profile key `{0}`")]
    MissingKey(&'static str),
    #[error("profile `{0}` has an empty {1} set")]
    EmptySet(String, &'static str),
    #[error("unknown case folding mode `{0}` (expected `turkish` or `simple`)")]
    UnknownFolding(String),
    #[error("no profile named `{0}`")]
    UnknownLanguage(String),
}

/// How tokens are lowercased.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CaseFolding {
    /// Dotted/dotless aware: `I` → `ı`, `İ` → `i`.
    Turkish,
    /// Plain Unicode lowercasing.
    Simple,
}

impl CaseFolding {
    pub fn fold_char(self, c: char, out: &mut String) {
        match (self, c) {
            (CaseFolding::Turkish, 'I') => out.push('ı'),
            (CaseFolding::Turkish, 'İ') => out.push('i'),
            _ => out.extend(c.to_lowercase()),
        }
    }

    pub fn fold(self, s: &str) -> String {
        let mut out = String::with_capacity(s.len());
        for c in s.chars() {
            self.fold_char(c, &mut out);
        }
        out
    }
}

impl FromStr for CaseFolding {
    type Err = ProfileError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "turkish" => Ok(CaseFolding::Turkish),
            "simple" => Ok(CaseFolding::Simple),
            other => Err(ProfileError::UnknownFolding(other.to_string())),
        }
    }
}

impl fmt::Display for CaseFolding {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CaseFolding::Turkish => "turkish",
            CaseFolding::Simple => "simple",
        })
    }
}

/// Per-language data driving segmentation, folding and syllable counting.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LanguageProfile {
    pub lang_code: String,
    pub vowels: BTreeSet<char>,
    pub sentence_terminators: BTreeSet<char>,
    pub abbreviations: BTreeSet<String>,
    pub case_folding: CaseFolding,
}

impl LanguageProfile {
    pub fn turkish() -> Self {
        Self::parse(TR_PROFILE, |_| Ok(TR_ABBREV.to_string())).expect("bundled Turkish profile")
    }

    pub fn english() -> Self {
        Self::parse(EN_PROFILE, |_| Ok(EN_ABBREV.to_string())).expect("bundled English profile")
    }

    /// Bundled profile by language code.
    pub fn builtin(lang: &str) -> Result<Self, ProfileError> {
        match lang {
            "tr" => Ok(Self::turkish()),
            "en" => Ok(Self::english()),
            other => Err(ProfileError::UnknownLanguage(other.to_string())),
        }
    }

    /// Look for `<lang>.profile` in `dir` first, falling back to the bundled
    /// profile when the directory is absent or has no such file.
    pub fn resolve(lang: &str, dir: Option<&Path>) -> Result<Self, ProfileError> {
        if let Some(dir) = dir {
            let path = dir.join(format!("{lang}.{PROFILE_EXTENSION}"));
            if path.is_file() {
                return Self::from_file(&path);
            }
        }
        Self::builtin(lang)
    }

    pub fn from_file(path: &Path) -> Result<Self, ProfileError> {
        let text = fs::read_to_string(path).map_err(|source| ProfileError::Io {
            path: path.to_path_buf(),
            source,
        })?;
        let base = path.parent().map(Path::to_path_buf).unwrap_or_default();
        Self::parse(&text, |rel| {
            let p = base.join(rel);
            fs::read_to_string(&p).map_err(|source| ProfileError::Io { path: p, source })
        })
    }

    /// Parse the `key = value` profile format. `read_abbrev` resolves the
    /// `abbreviations` value to the contents of the list file.
    pub fn parse(text: &str, read_abbrev: impl Fn(&str) -> Result<String, ProfileError>) -> Result<Self, ProfileError> {
        let mut lang = None;
        let mut vowels = None;
        let mut terminators = None;
        let mut abbreviations = BTreeSet::new();
        let mut folding: Option<CaseFolding> = None;

        for (i, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or(ProfileError::MalformedLine { line: i + 1 })?;
            let value = value.trim();
            match key.trim() {
                "lang" => lang = Some(value.to_string()),
                "vowels" => vowels = Some(char_set(value)),
                "terminators" => terminators = Some(char_set(value)),
                "abbreviations" => {
                    abbreviations = parse_word_list(&read_abbrev(value)?);
                }
                "case_folding" => folding = Some(value.parse()?),
                other => return Err(ProfileError::UnknownKey(other.to_string())),
            }
        }

        let lang_code = lang.ok_or(ProfileError::MissingKey("lang"))?;
        let vowels = vowels.ok_or(ProfileError::MissingKey("vowels"))?;
        let sentence_terminators = terminators.ok_or(ProfileError::MissingKey("terminators"))?;
        let case_folding = folding.ok_or(ProfileError::MissingKey("case_folding"))?;
        if vowels.is_empty() {
            return Err(ProfileError::EmptySet(lang_code, "vowel"));
        }
        if sentence_terminators.is_empty() {
            return Err(ProfileError::EmptySet(lang_code, "terminator"));
        }
        let abbreviations = abbreviations.iter().map(|a| case_folding.fold(a)).collect();
        Ok(Self {
            lang_code,
            vowels,
            sentence_terminators,
            abbreviations,
            case_folding,
        })
    }

    pub fn is_vowel(&self, c: char) -> bool {
        self.vowels.contains(&c)
    }

    pub fn is_terminator(&self, c: char) -> bool {
        self.sentence_terminators.contains(&c)
    }

    pub fn fold(&self, s: &str) -> String {
        self.case_folding.fold(s)
    }
}

fn char_set(value: &str) -> BTreeSet<char> {
    value.chars().filter(|c| !c.is_whitespace()).collect()
}

/// One entry per line, blank lines and `#` comments skipped.
pub(crate) fn parse_word_list(text: &str) -> BTreeSet<String> {
    text.lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
        .map(str::to_string)
        .collect()
}

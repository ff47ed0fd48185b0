//! Stop-word induction from corpus term frequencies, and the list file
//! format (one word per line, `#` comments, blank lines ignored).

use std::fs;
use std::io;
use std::path::{Path, PathBuf};

use thiserror::Error;

use crate::corpus::Corpus;
use crate::executor::{run, Backend, ExecError, PipelineConfig};
use crate::features::FeatureVector;
use crate::formulas::FormulaId;
use crate::lingproc::{CaseFolding, LanguageProfile, StopWordList, StopWordOrigin};

/// Default list size for induction.
pub const DEFAULT_TOP_K: usize = 100;

#[derive(Debug, Error)]
pub enum StopWordError {
    #[error("stop-word list size must be at least 1")]
    ZeroK,
    #[error("failed to access {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: io::Error,
    },
    #[error("{path}:{line}: a stop word may not contain whitespace")]
    MalformedLine { path: PathBuf, line: usize },
}

/// An induced list plus whether `k` had to be cut down to the vocabulary.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InducedStopList {
    pub list: StopWordList,
    /// `k` exceeded the number of distinct words; the list is the whole
    /// vocabulary.
    pub k_exceeds_vocabulary: bool,
    /// `(word, frequency)` in rank order.
    pub ranked: Vec<(String, u64)>,
}

/// The `k` most frequent words, ties broken by lexicographic word order.
pub fn build_stoplist(corpus_features: &FeatureVector, k: usize) -> Result<InducedStopList, StopWordError> {
    if k == 0 {
        return Err(StopWordError::ZeroK);
    }
    let mut ranked: Vec<(String, u64)> = corpus_features
        .term_frequencies
        .iter()
        .map(|(w, n)| (w.clone(), *n))
        .collect();
    ranked.sort_by(|a, b| b.1.cmp(&a.1).then_with(|| a.0.cmp(&b.0)));
    let k_exceeds_vocabulary = k > ranked.len();
    ranked.truncate(k);
    let list = StopWordList::new(ranked.iter().map(|(w, _)| w.clone()), StopWordOrigin::Induced);
    Ok(InducedStopList {
        list,
        k_exceeds_vocabulary,
        ranked,
    })
}

/// Corpus term frequencies with nothing filtered, which is what induction
/// should rank (filtering with a stop list first would be circular).
pub fn induction_features(
    corpus: &Corpus,
    profile: &LanguageProfile,
    backend: &Backend,
) -> Result<FeatureVector, ExecError> {
    let cfg = PipelineConfig::new(profile.clone(), StopWordList::empty(), vec![FormulaId::Atesman], None)
        .expect("fixed config is valid");
    Ok(run(corpus, &cfg, backend)?.aggregate)
}

/// Serialize in rank order with a one-line header comment.
pub fn render_stoplist(list: &StopWordList) -> String {
    let mut out = format!("# {} stop words\n", list.len());
    for w in list.ranked() {
        out.push_str(w);
        out.push('\n');
    }
    out
}

pub fn save_stoplist(list: &StopWordList, path: &Path) -> Result<(), StopWordError> {
    fs::write(path, render_stoplist(list)).map_err(|source| StopWordError::Io {
        path: path.to_path_buf(),
        source,
    })
}

pub fn parse_stoplist(text: &str, path: &Path, folding: CaseFolding) -> Result<StopWordList, StopWordError> {
    let mut words = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        if line.chars().any(char::is_whitespace) {
            return Err(StopWordError::MalformedLine {
                path: path.to_path_buf(),
                line: i + 1,
            });
        }
        words.push(folding.fold(line));
    }
    Ok(StopWordList::new(words, StopWordOrigin::File))
}

/// Read a list file, case-folding entries with `folding`.
pub fn load_stoplist(path: &Path, folding: CaseFolding) -> Result<StopWordList, StopWordError> {
    let text = fs::read_to_string(path).map_err(|source| StopWordError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    parse_stoplist(&text, path, folding)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeMap;

    use proptest::prelude::*;

    fn fv(pairs: &[(&str, u64)]) -> FeatureVector {
        let tf: BTreeMap<String, u64> = pairs.iter().map(|(w, n)| (w.to_string(), *n)).collect();
        FeatureVector {
            word_count: tf.values().sum(),
            term_frequencies: tf,
            ..Default::default()
        }
    }

    #[test]
    fn top_k() {
        let r = build_stoplist(&fv(&[("ve", 5), ("bir", 3), ("okul", 1)]), 2).unwrap();
        assert_eq!(r.list.ranked(), ["ve", "bir"]);
        assert!(!r.k_exceeds_vocabulary);
        assert_eq!(r.list.origin, StopWordOrigin::Induced);
    }

    #[test]
    fn ties_break_lexicographically() {
        let r = build_stoplist(&fv(&[("b", 2), ("a", 2), ("c", 1)]), 1).unwrap();
        assert_eq!(r.list.ranked(), ["a"]);
    }

    #[test]
    fn k_beyond_vocabulary() {
        let r = build_stoplist(&fv(&[("a", 2), ("b", 1)]), 10).unwrap();
        assert!(r.k_exceeds_vocabulary);
        assert_eq!(r.list.len(), 2);
        let exact = build_stoplist(&fv(&[("a", 2), ("b", 1)]), 2).unwrap();
        assert!(!exact.k_exceeds_vocabulary);
        assert!(matches!(build_stoplist(&fv(&[]), 0), Err(StopWordError::ZeroK)));
    }

    #[test]
    fn file_round_trip_and_format() {
        let dir = tempfile::tempdir().unwrap();
        let p = dir.path().join("stop.txt");
        let list = StopWordList::new(["ve", "bir"], StopWordOrigin::Induced);
        save_stoplist(&list, &p).unwrap();
        let back = load_stoplist(&p, CaseFolding::Turkish).unwrap();
        assert_eq!(back, list);
        assert_eq!(back.ranked(), ["ve", "bir"]);

        fs::write(&p, "# comment\n\nve\n  bir  \n# another\n").unwrap();
        assert_eq!(load_stoplist(&p, CaseFolding::Turkish).unwrap().len(), 2);

        fs::write(&p, "ve\nbir şey\n").unwrap();
        assert!(matches!(
            load_stoplist(&p, CaseFolding::Turkish),
            Err(StopWordError::MalformedLine { line: 2, .. })
        ));
    }

    #[test]
    fn loading_folds_case() {
        let l = parse_stoplist("IŞIK\nİçin\n", Path::new("x"), CaseFolding::Turkish).unwrap();
        assert!(l.contains("ışık") && l.contains("için"));
    }

    proptest! {
        #[test]
        fn members_outrank_non_members(
            tf in prop::collection::btree_map("[a-f]{1,3}", 1u64..20, 1..30),
            k in 1usize..40,
        ) {
            let pairs: Vec<(&str, u64)> = tf.iter().map(|(w, n)| (w.as_str(), *n)).collect();
            let v = fv(&pairs);
            let r = build_stoplist(&v, k).unwrap();
            let min_in = r.ranked.iter().map(|(_, n)| *n).min().unwrap();
            for (w, n) in &v.term_frequencies {
                if !r.list.contains(w) {
                    prop_assert!(*n <= min_in);
                }
            }
            prop_assert_eq!(r.list.len(), k.min(v.distinct_count()));
        }

        #[test]
        fn saved_lists_round_trip(words in prop::collection::btree_set("[a-zçğışöü]{1,8}", 0..30)) {
            let list = StopWordList::new(words.iter().cloned(), StopWordOrigin::Induced);
            let text = render_stoplist(&list);
            let back = parse_stoplist(&text, Path::new("mem"), CaseFolding::Turkish).unwrap();
            prop_assert_eq!(back.ranked(), list.ranked());
        }
    }
}

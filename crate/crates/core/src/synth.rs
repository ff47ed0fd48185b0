//! Deterministic generator of Turkish-like text for tests and benchmarks.
//!
//! Words are built from Turkish consonant/vowel syllables, so syllable
//! counts follow the vowel rule. Sentences mix in stop words, numbers,
//! hyphenated tokens and abbreviations to exercise every filter path.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::corpus::{Corpus, Document};

const VOWELS: &[&str] = &["a", "e", "ı", "i", "o", "ö", "u", "ü"];
const CONSONANTS: &[&str] = &[
    "b", "c", "ç", "d", "f", "g", "ğ", "h", "k", "l", "m", "n", "p", "r", "s", "ş", "t", "v", "y", "z",
];
const STOP: &[&str] = &["ve", "bir", "bu", "şu", "için", "ile", "çok", "daha", "gibi", "de"];
const ABBREV: &[&str] = &["Dr.", "Prof.", "vb.", "örn."];

fn syllable(rng: &mut impl Rng) -> String {
    let mut s = String::new();
    if rng.gen_bool(0.8) {
        s.push_str(CONSONANTS.choose(rng).unwrap());
    }
    s.push_str(VOWELS.choose(rng).unwrap());
    if rng.gen_bool(0.4) {
        s.push_str(CONSONANTS.choose(rng).unwrap());
    }
    s
}

fn word(rng: &mut impl Rng) -> String {
    let roll: f64 = rng.gen();
    if roll < 0.15 {
        return STOP.choose(rng).unwrap().to_string();
    }
    if roll < 0.17 {
        return rng.gen_range(1..2000).to_string();
    }
    if roll < 0.18 {
        return format!("{}-{}", syllable(rng), syllable(rng));
    }
    if roll < 0.185 {
        return ABBREV.choose(rng).unwrap().to_string();
    }
    let n = match rng.gen_range(0..10) {
        0..=2 => 1,
        3..=5 => 2,
        6..=7 => 3,
        8 => 4,
        _ => 5,
    };
    (0..n).map(|_| syllable(rng)).collect()
}

fn capitalize(w: &str) -> String {
    let mut chars = w.chars();
    match chars.next() {
        Some('i') => format!("İ{}", chars.as_str()),
        Some('ı') => format!("I{}", chars.as_str()),
        Some(c) => c.to_uppercase().chain(chars).collect(),
        None => String::new(),
    }
}

fn sentence(rng: &mut impl Rng) -> String {
    let n = rng.gen_range(3..16);
    let mut words: Vec<String> = (0..n).map(|_| word(rng)).collect();
    words[0] = capitalize(&words[0]);
    if rng.gen_bool(0.2) {
        let i = rng.gen_range(0..n);
        words[i].push(',');
    }
    let term = match rng.gen_range(0..20) {
        0 => "!",
        1 => "?",
        2 => "...",
        _ => ".",
    };
    format!("{}{}", words.join(" "), term)
}

/// Roughly `target_bytes` of text (at least one sentence).
pub fn synthetic_text(seed: u64, target_bytes: usize) -> String {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = String::new();
    loop {
        let s = sentence(&mut rng);
        out.push_str(&s);
        if out.len() >= target_bytes {
            break;
        }
        out.push_str(if rng.gen_bool(0.1) { "\n\n" } else { " " });
    }
    out.push('\n');
    out
}

/// `n` documents named `doc0000.txt`, `doc0001.txt`, ...
pub fn synthetic_documents(n: usize, target_bytes: usize, seed: u64) -> Vec<Document> {
    (0..n)
        .map(|i| {
            let text = synthetic_text(seed.wrapping_mul(1_000_003).wrapping_add(i as u64), target_bytes);
            Document::from_text(format!("doc{i:04}.txt"), text)
        })
        .collect()
}

pub fn synthetic_corpus(n: usize, target_bytes: usize, seed: u64) -> Corpus {
    Corpus::from_documents("synthetic", synthetic_documents(n, target_bytes, seed)).expect("generated ids are unique")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn deterministic_and_sized() {
        assert_eq!(synthetic_text(7, 500), synthetic_text(7, 500));
        assert_ne!(synthetic_text(7, 500), synthetic_text(8, 500));
        assert!(synthetic_text(1, 2000).len() >= 2000);
        let c = synthetic_corpus(5, 100, 1);
        assert_eq!(c.len(), 5);
        assert_eq!(c.documents()[4].doc_id, "doc0004.txt");
    }
}

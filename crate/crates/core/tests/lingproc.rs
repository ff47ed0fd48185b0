use proptest::prelude::*;
use readcorpus::lingproc::{process_sentences, StopWordOrigin};
use readcorpus::{
    count_syllables, filter_tokens, normalize, preprocess, segment_sentences, tokenize, Document, LanguageProfile,
    StopWordList,
};

const TR_FIXTURE: &str = include_str!("fixtures/tr_syllables.tsv");
const EN_FIXTURE: &str = include_str!("fixtures/en_syllables.tsv");

fn rows(text: &str) -> impl Iterator<Item = Vec<&str>> {
    text.lines()
        .filter(|l| !l.starts_with('#') && !l.trim().is_empty())
        .map(|l| l.split('\t').collect())
}

#[test]
fn turkish_fixture_matches_hand_hyphenation() {
    let tr = LanguageProfile::turkish();
    let mut n = 0;
    for row in rows(TR_FIXTURE) {
        let (word, hyphenated, count) = (row[0], row[1], row[2].parse::<usize>().unwrap());
        assert_eq!(hyphenated.split('-').count(), count, "fixture row {word}");
        assert_eq!(hyphenated.replace('-', ""), word);
        assert_eq!(count_syllables(word, &tr).unwrap(), count, "{word} ({hyphenated})");
        n += 1;
    }
    assert_eq!(n, 200);
}

#[test]
fn english_fixture_mostly_matches() {
    let en = LanguageProfile::english();
    let mut hits = 0;
    let mut misses = Vec::new();
    let mut total = 0;
    for row in rows(EN_FIXTURE) {
        let expected: usize = row[1].parse().unwrap();
        let got = count_syllables(row[0], &en).unwrap();
        total += 1;
        if got == expected {
            hits += 1;
        } else {
            misses.push(format!("{} ({got} vs {expected})", row[0]));
        }
    }
    assert_eq!(total, 50);
    let rate = hits as f64 / total as f64;
    eprintln!("english syllable accuracy {hits}/{total}; misses: {misses:?}");
    assert!(rate >= 0.9, "accuracy {rate}: {misses:?}");
}

fn tr_word() -> impl Strategy<Value = String> {
    "[a-zçğıöşüâ]{1,12}"
}

fn tr_text() -> impl Strategy<Value = String> {
    let piece = prop_oneof![
        4 => "[A-ZÇĞİÖŞÜ]?[a-zçğıöşü]{1,8}",
        1 => "[0-9]{1,3}",
        1 => prop::sample::select(vec![
            ".", "!", "?", "...", "…", ",", "-", "+", "Dr.", "vb.", "a+b", "3.5", "\"", "(",
        ])
        .prop_map(str::to_string),
    ];
    prop::collection::vec((piece, prop::sample::select(vec![" ", "  ", "\n", "\t", ""])), 0..40)
        .prop_map(|parts| parts.into_iter().map(|(p, sep)| format!("{p}{sep}")).collect())
}

proptest! {
    #[test]
    fn turkish_syllables_equal_vowel_recount(w in tr_word()) {
        let tr = LanguageProfile::turkish();
        let vowels = w.chars().filter(|c| "aeıioöuü".contains(*c)).count();
        let got = count_syllables(&w, &tr).unwrap();
        prop_assert!(got >= 1);
        if vowels > 0 {
            prop_assert_eq!(got, vowels);
        }
    }

    #[test]
    fn filtering_is_idempotent_and_order_preserving(
        tokens in prop::collection::vec("[a-cç0-9+#&/-]{1,4}", 0..30),
        stop in prop::collection::vec("[a-c]{1,2}", 0..5),
    ) {
        let tr = LanguageProfile::turkish();
        let stop = StopWordList::new(stop, StopWordOrigin::File);
        let once = filter_tokens(&tokens, &stop, &tr);
        prop_assert_eq!(filter_tokens(&once, &stop, &tr), once.clone());
        // survivors form a subsequence of the input
        let mut it = tokens.iter();
        for t in &once {
            prop_assert!(it.any(|x| x == t));
        }
    }

    #[test]
    fn resegmenting_joined_sentences_is_stable(text in tr_text()) {
        let tr = LanguageProfile::turkish();
        let first = segment_sentences(&normalize(&text, &tr), &tr);
        let joined = first.join(" ");
        let second = segment_sentences(&joined, &tr);
        prop_assert_eq!(first.len(), second.len(), "{:?} / {:?}", first, second);
    }

    #[test]
    fn segmentation_covers_all_content(text in tr_text()) {
        let tr = LanguageProfile::turkish();
        let sentences = segment_sentences(&text, &tr);
        let strip = |s: &str| s.chars().filter(|c| !c.is_whitespace()).collect::<String>();
        if text.chars().any(char::is_alphanumeric) {
            prop_assert_eq!(strip(&sentences.concat()), strip(&text));
        } else {
            prop_assert!(sentences.is_empty());
        }
    }

    #[test]
    fn tokens_never_contain_whitespace(text in tr_text()) {
        let tr = LanguageProfile::turkish();
        for t in tokenize(&text, &tr) {
            prop_assert!(!t.is_empty());
            prop_assert!(!t.chars().any(char::is_whitespace));
        }
    }

    #[test]
    fn preprocess_output_is_clean(text in tr_text()) {
        let tr = LanguageProfile::turkish();
        let stop = StopWordList::builtin(&tr);
        let pt = preprocess(&Document::from_text("p.txt", text), &stop, &tr);
        prop_assert!(pt.tokens.len() <= pt.raw_token_count);
        for t in &pt.tokens {
            prop_assert!(!t.chars().any(|c| c.is_ascii_digit() || c.is_whitespace()));
            prop_assert!(!t.chars().any(|c| readcorpus::lingproc::SPECIAL_CHARS.contains(&c)));
            prop_assert!(!stop.contains(t));
        }
    }

    #[test]
    fn per_sentence_filtering_equals_stream_filtering(text in tr_text()) {
        let tr = LanguageProfile::turkish();
        let stop = StopWordList::builtin(&tr);
        let sentences = segment_sentences(&normalize(&text, &tr), &tr);
        let per_sentence = process_sentences("x", &sentences, &stop, &tr);
        let stream: Vec<String> = sentences.iter().flat_map(|s| tokenize(s, &tr)).collect();
        prop_assert_eq!(per_sentence.tokens, filter_tokens(&stream, &stop, &tr));
        prop_assert_eq!(per_sentence.raw_token_count, stream.len());
    }
}

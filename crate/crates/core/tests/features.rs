//! Split-merge: folding the feature vectors of any partition of a
//! document's sentences gives the whole-document vector.

use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use readcorpus::features::extract_features;
use readcorpus::lingproc::process_sentences;
use readcorpus::synth::synthetic_text;
use readcorpus::{
    merge, normalize, preprocess, segment_sentences, Document, FeatureVector, LanguageProfile, StopWordList,
};

fn split_merge_holds(text: &str, cuts_seed: u64) -> bool {
    let tr = LanguageProfile::turkish();
    let stop = StopWordList::builtin(&tr);
    let whole = extract_features(&preprocess(&Document::from_text("d", text), &stop, &tr), &tr);

    let sentences = segment_sentences(&normalize(text, &tr), &tr);
    let mut rng = ChaCha8Rng::seed_from_u64(cuts_seed);
    let mut folded = FeatureVector::zero();
    let mut start = 0;
    while start < sentences.len() {
        let len = rng.gen_range(1..=sentences.len() - start);
        let chunk = process_sentences("d", &sentences[start..start + len], &stop, &tr);
        folded = merge(&folded, &extract_features(&chunk, &tr));
        start += len;
    }
    folded == whole
}

#[test]
fn split_merge_on_synthetic_documents() {
    for seed in 0..50 {
        assert!(split_merge_holds(&synthetic_text(seed, 3000), seed + 1), "seed {seed}");
    }
}

proptest! {
    #[test]
    fn split_merge_on_random_text(seed in any::<u64>(), cuts in any::<u64>(), size in 0usize..2000) {
        prop_assert!(split_merge_holds(&synthetic_text(seed, size), cuts));
    }
}

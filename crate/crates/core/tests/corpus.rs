use std::fs;

use proptest::prelude::*;
use readcorpus::load_corpus;

#[test]
fn hundred_files_load_deterministically() {
    let dir = tempfile::tempdir().unwrap();
    // write in reverse so creation order differs from id order
    for i in (0..100).rev() {
        fs::write(dir.path().join(format!("f{i:03}.txt")), format!("Belge {i}.")).unwrap();
    }
    let a = load_corpus(dir.path(), "*.txt", false).unwrap();
    let b = load_corpus(dir.path(), "*.txt", false).unwrap();
    assert_eq!(a.len(), 100);
    assert_eq!(a, b);
    let ids: Vec<_> = a.documents().iter().map(|d| d.doc_id.clone()).collect();
    let mut sorted = ids.clone();
    sorted.sort();
    assert_eq!(ids, sorted);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn generated_trees_satisfy_document_invariants(
        files in prop::collection::btree_map(
            "(sub/)?[a-zç]{1,6}\\.txt",
            prop::collection::vec(any::<u8>(), 0..64),
            0..12,
        )
    ) {
        let dir = tempfile::tempdir().unwrap();
        for (name, bytes) in &files {
            let p = dir.path().join(name);
            fs::create_dir_all(p.parent().unwrap()).unwrap();
            fs::write(&p, bytes).unwrap();
        }
        let c = load_corpus(dir.path(), "*.txt", true).unwrap();
        prop_assert_eq!(c.len(), files.len());
        let mut seen = std::collections::BTreeSet::new();
        for d in c.documents() {
            prop_assert!(!d.doc_id.is_empty());
            prop_assert!(seen.insert(d.doc_id.clone()));
            let bytes = &files[&d.doc_id];
            prop_assert_eq!(d.byte_size, bytes.len() as u64);
            prop_assert_eq!(d.raw_text.clone(), String::from_utf8_lossy(bytes).into_owned());
            let literal = bytes.windows(3).filter(|w| *w == [0xEF, 0xBF, 0xBD]).count();
            prop_assert_eq!(d.replaced_sequences, d.raw_text.matches('\u{FFFD}').count() - literal);
        }
        prop_assert_eq!(c.clone(), load_corpus(dir.path(), "*.txt", true).unwrap());
    }
}

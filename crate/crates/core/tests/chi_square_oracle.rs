//! Trigram selection against exact rational χ² on a 20-document corpus.

mod support;

use std::collections::BTreeSet;

use approx::assert_relative_eq;
use support::fixtures::{chi_corpus as corpus, pos_trigram_set};
use support::chi::{char_trigram_set, chi_square_exact, rank_exact};
use wikiqual_core::stylefeat::{chi_square, fit_trigram_selector, TaggedDocument, TrigramProfile};

#[test]
fn chi_square_matches_rational_formula() {
    let sizes = [7u32, 7, 6];
    for a in 0..=7u32 {
        for b in 0..=7u32 {
            for c in 0..=6u32 {
                let exact = chi_square_exact(&[a as u128, b as u128, c as u128], &[7, 7, 6]);
                let got = chi_square(&[a, b, c], &sizes);
                assert!((got - exact.to_f64()).abs() <= 1e-12 * exact.to_f64().max(1.0), "{a} {b} {c}");
            }
        }
    }
}

#[test]
fn selection_matches_exact_ranking_including_ties() {
    let (docs, labels) = corpus();
    let profiles: Vec<TrigramProfile> = docs.iter().map(TrigramProfile::from_tagged).collect();
    let refs: Vec<&TrigramProfile> = profiles.iter().collect();
    let sel = fit_trigram_selector(&refs, &labels, 10_000, 10_000).unwrap();

    let char_sets: Vec<BTreeSet<String>> = docs.iter().map(|d| char_trigram_set(&d.text)).collect();
    let expected = rank_exact(&char_sets, &labels);
    assert_eq!(sel.char_trigrams.len(), expected.len());
    let mut ties = 0;
    for (i, (got, (key, score))) in sel.char_trigrams.iter().zip(&expected).enumerate() {
        assert_eq!(&got.trigram, key, "rank {i}");
        assert_relative_eq!(got.score, score.to_f64(), max_relative = 1e-12, epsilon = 1e-12);
        if i > 0 && expected[i - 1].1 == *score {
            ties += 1;
        }
    }
    assert!(ties > 0, "fixture should exercise tie-breaking");

    let pos_sets: Vec<BTreeSet<String>> = docs.iter().map(pos_trigram_set).collect();
    let expected = rank_exact(&pos_sets, &labels);
    assert_eq!(sel.pos_trigrams.len(), expected.len());
    for (got, (key, score)) in sel.pos_trigrams.iter().zip(&expected) {
        assert_eq!(&got.trigram.join(" "), key);
        assert_relative_eq!(got.score, score.to_f64(), max_relative = 1e-12, epsilon = 1e-12);
    }
}

#[test]
fn truncation_keeps_prefix_and_pads_columns() {
    let (docs, labels) = corpus();
    let profiles: Vec<TrigramProfile> = docs.iter().map(TrigramProfile::from_tagged).collect();
    let refs: Vec<&TrigramProfile> = profiles.iter().collect();
    let full = fit_trigram_selector(&refs, &labels, 10_000, 10_000).unwrap();
    let small = fit_trigram_selector(&refs, &labels, 5, 3).unwrap();
    assert_eq!(small.char_trigrams, full.char_trigrams[..5]);
    assert_eq!(small.pos_trigrams, full.pos_trigrams[..3]);
    let fv = wikiqual_core::stylefeat::trigram_features(&profiles[0], &full);
    assert_eq!(fv.len(), 20_000);
}

#[test]
fn relative_frequency_from_window_counts() {
    let doc = TaggedDocument {
        sentences: vec![],
        terminators: vec![],
        text: "Abab ab".into(),
    };
    let p = TrigramProfile::from_tagged(&doc);
    // windows of "abab ab": aba bab "ab " "b a" " ab"
    assert_eq!(p.char_total, 5);
    assert_eq!(p.char_counts["aba"], 1);
    assert_eq!(p.char_counts[" ab"], 1);
}

//! Readability indices against an independent spreadsheet-style computation
//! (`oracles/readability_oracle.py`) on five snippets.

mod support;

use std::time::Instant;

use support::fixtures::{COUNTS, INDICES, SNIPPETS};
use wikiqual_core::corpus::parse_wikitext;
use wikiqual_core::readability::{readability_features, ReadabilityCounts, READABILITY_FEATURES};

fn counts_of(snippet: &str) -> ReadabilityCounts {
    ReadabilityCounts::from_document(&parse_wikitext(snippet))
}

#[test]
fn counts_match_oracle() {
    for (i, (snippet, expected)) in SNIPPETS.iter().zip(COUNTS).enumerate() {
        let c = counts_of(snippet);
        let got = [
            c.characters,
            c.words,
            c.sentences,
            c.syllables,
            c.complex_words,
            c.long_words,
            c.dale_chall_difficult_words,
            c.polysyllable_count,
        ];
        assert_eq!(got, expected, "snippet {}", i + 1);
    }
}

#[test]
fn indices_match_oracle_within_1e6() {
    let start = Instant::now();
    for (i, (snippet, expected)) in SNIPPETS.iter().zip(INDICES).enumerate() {
        let fv = readability_features(&counts_of(snippet));
        for (name, want) in READABILITY_FEATURES.iter().zip(expected) {
            let got = fv[name];
            assert!((got - want).abs() <= 1e-6, "snippet {} {name}: {got} vs {want}", i + 1);
        }
    }
    assert!(start.elapsed().as_secs_f64() < 1.0);
}

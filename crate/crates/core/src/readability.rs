//! Readability indices.
//!
//! | feature | formula |
//! |---|---|
//! | `automated_readability_index` | 4.71·(chars/words) + 0.5·(words/sentences) − 21.43 |
//! | `coleman_liau_index` | 0.0588·L − 0.296·S − 15.8, L = chars per 100 words, S = sentences per 100 words |
//! | `flesch_reading_ease` | 206.835 − 1.015·(words/sentences) − 84.6·(syllables/words) |
//! | `flesch_kincaid_grade` | 0.39·(words/sentences) + 11.8·(syllables/words) − 15.59 |
//! | `gunning_fog_index` | 0.4·[(words/sentences) + 100·(complex/words)] |
//! | `lix` | words/sentences + 100·(long words/words) |
//! | `smog_grade` | 1.0430·√(polysyllables·30/sentences) + 3.1291 |
//! | `dale_chall_score` | 0.1579·(100·difficult/words) + 0.0496·(words/sentences), + 3.6365 when difficult > 5 % |
//!
//! `chars` counts letters and digits only. Every index is `0.0` when the text
//! has no words or no sentences.

use std::collections::HashSet;
use std::sync::LazyLock;

use serde::{Deserialize, Serialize};

use crate::corpus::{syllable_count, DocumentStructure};
use crate::feature::FeatureVector;

pub const READABILITY_FEATURES: [&str; 8] = [
    "automated_readability_index",
    "coleman_liau_index",
    "flesch_reading_ease",
    "flesch_kincaid_grade",
    "gunning_fog_index",
    "lix",
    "smog_grade",
    "dale_chall_score",
];

static FAMILIAR_WORDS: LazyLock<HashSet<&'static str>> = LazyLock::new(|| {
    include_str!("../data/dale_chall_familiar.txt")
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty())
        .collect()
});

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReadabilityCounts {
    /// Letters and digits.
    pub characters: usize,
    pub words: usize,
    pub sentences: usize,
    pub syllables: usize,
    /// Gunning's complex words: three or more syllables, not hyphenated, and
    /// not reaching three only through an -es/-ed/-ing ending.
    pub complex_words: usize,
    /// More than six characters.
    pub long_words: usize,
    /// Not on the Dale–Chall familiar list.
    pub dale_chall_difficult_words: usize,
    /// Three or more syllables.
    pub polysyllable_count: usize,
}

impl ReadabilityCounts {
    pub fn from_document(doc: &DocumentStructure) -> Self {
        let mut c = ReadabilityCounts {
            words: doc.tokens.len(),
            sentences: doc.sentences.len(),
            ..Default::default()
        };
        for (tok, &syl) in doc.tokens.iter().zip(&doc.syllable_counts) {
            let alnum = tok.chars().filter(|c| c.is_alphanumeric()).count();
            c.characters += alnum;
            c.syllables += syl;
            if alnum > 6 {
                c.long_words += 1;
            }
            if syl >= 3 {
                c.polysyllable_count += 1;
            }
            if is_complex_word(tok, syl) {
                c.complex_words += 1;
            }
            if !is_familiar(tok) {
                c.dale_chall_difficult_words += 1;
            }
        }
        c
    }
}

fn is_complex_word(token: &str, syllables: usize) -> bool {
    if syllables < 3 || token.contains('-') {
        return false;
    }
    let lower = token.to_lowercase();
    for suffix in ["es", "ed", "ing"] {
        if let Some(stem) = lower.strip_suffix(suffix) {
            if !stem.is_empty() && syllable_count(stem) < 3 {
                return false;
            }
        }
    }
    true
}

/// Dale–Chall membership with plural/past-tense/-ing stemming; numbers are familiar.
pub fn is_familiar(token: &str) -> bool {
    let w = token.to_lowercase();
    if w.chars().any(|c| c.is_ascii_digit()) {
        return true;
    }
    if FAMILIAR_WORDS.contains(w.as_str()) {
        return true;
    }
    const RULES: [(&str, &str); 8] = [
        ("ies", "y"),
        ("ied", "y"),
        ("es", ""),
        ("s", ""),
        ("ed", ""),
        ("d", ""),
        ("ing", ""),
        ("ing", "e"),
    ];
    RULES.iter().any(|(suffix, repl)| {
        w.strip_suffix(suffix)
            .filter(|stem| !stem.is_empty())
            .is_some_and(|stem| FAMILIAR_WORDS.contains(format!("{stem}{repl}").as_str()))
    })
}

pub fn readability_features(c: &ReadabilityCounts) -> FeatureVector {
    let mut fv = FeatureVector::with_capacity(8);
    if c.words == 0 || c.sentences == 0 {
        for name in READABILITY_FEATURES {
            fv.push(name, 0.0);
        }
        return fv;
    }
    let words = c.words as f64;
    let sentences = c.sentences as f64;
    let wps = words / sentences;
    let spw = c.syllables as f64 / words;

    let ari = 4.71 * (c.characters as f64 / words) + 0.5 * wps - 21.43;
    let letters_per_100 = c.characters as f64 / words * 100.0;
    let sentences_per_100 = sentences / words * 100.0;
    let coleman_liau = 0.0588 * letters_per_100 - 0.296 * sentences_per_100 - 15.8;
    let flesch = 206.835 - 1.015 * wps - 84.6 * spw;
    let fk_grade = 0.39 * wps + 11.8 * spw - 15.59;
    let fog = 0.4 * (wps + 100.0 * c.complex_words as f64 / words);
    let lix = wps + 100.0 * c.long_words as f64 / words;
    let smog = 1.0430 * (c.polysyllable_count as f64 * 30.0 / sentences).sqrt() + 3.1291;
    let pct_difficult = 100.0 * c.dale_chall_difficult_words as f64 / words;
    let mut dale_chall = 0.1579 * pct_difficult + 0.0496 * wps;
    if pct_difficult > 5.0 {
        dale_chall += 3.6365;
    }

    fv.push("automated_readability_index", ari);
    fv.push("coleman_liau_index", coleman_liau);
    fv.push("flesch_reading_ease", flesch);
    fv.push("flesch_kincaid_grade", fk_grade);
    fv.push("gunning_fog_index", fog);
    fv.push("lix", lix);
    fv.push("smog_grade", smog);
    fv.push("dale_chall_score", dale_chall);
    fv
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn flesch_unit_rates() {
        let c = ReadabilityCounts { words: 10, sentences: 10, syllables: 10, characters: 40, ..Default::default() };
        let fv = readability_features(&c);
        assert_relative_eq!(fv["flesch_reading_ease"], 121.22, epsilon = 1e-9);
    }

    #[test]
    fn zero_sentences_sentinel() {
        let c = ReadabilityCounts { words: 5, ..Default::default() };
        let fv = readability_features(&c);
        assert_eq!(fv.len(), 8);
        assert!(fv.values().all(|v| v == 0.0));
    }

    #[test]
    fn familiar_stemming() {
        assert!(is_familiar("dogs"));
        assert!(is_familiar("played"));
        assert!(is_familiar("Cities"));
        assert!(is_familiar("1917"));
        assert!(!is_familiar("bombardment"));
    }

    #[test]
    fn complex_word_rules() {
        assert!(is_complex_word("artillery", 4));
        assert!(!is_complex_word("well-established", 4));
        assert!(!is_complex_word("go", 1));
    }

    #[test]
    fn count_bounds() {
        let doc = crate::corpus::parse_wikitext("Extraordinary circumstances necessitated reorganisation. It was done.");
        let c = ReadabilityCounts::from_document(&doc);
        assert!(c.complex_words <= c.words);
        assert!(c.long_words <= c.words);
        assert!(c.dale_chall_difficult_words <= c.words);
    }
}

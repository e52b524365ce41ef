//! Style features: sentence shape, part-of-speech usage and trigrams.
//!
//! POS categories over Penn Treebank tags:
//!
//! | category | rule |
//! |---|---|
//! | pronoun | `PRP`, `PRP$`, `WP`, `WP$` |
//! | article | `DT` on *the*, *a*, *an* |
//! | determiner | `DT` on any other word |
//! | coordinating conjunction | `CC` |
//! | subordinating preposition/conjunction | `IN` |
//! | adjective | `JJ*` |
//! | noun | `NN*` |
//! | adverb | `RB*` |
//! | modal auxiliary | `MD` |
//! | "to be" verb | any form of *be* (*is*, *was*, *been*, *isn't*, ...) |
//! | verb | `VB*`, `MD` and every "to be" form |
//! | passive voice | `VBN` preceded by a "to be" form, adverbs and *not* in between |
//!
//! "Different" counts are over case-folded token types. Per-sentence blocks
//! average the per-sentence counts over sentences.

mod tagger;
pub mod trigram;

use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use crate::corpus::{syllable_count, DocumentStructure};
use crate::feature::FeatureVector;
use crate::ratio;

pub use tagger::{tag_tokens, TAGGER_DATA_VERSION};
pub use trigram::{
    chi_square, fit_trigram_selector, normalize_text, trigram_feature_names, trigram_features, StyleError, TrigramProfile, TrigramSelector,
    DEFAULT_CHAR_TRIGRAMS, DEFAULT_POS_TRIGRAMS,
};

/// Sentences of `(token, tag)` pairs plus the plain text they came from.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct TaggedDocument {
    pub sentences: Vec<Vec<(String, String)>>,
    /// Terminal punctuation of each sentence.
    pub terminators: Vec<Option<char>>,
    /// Paragraphs joined by single spaces; source of character trigrams.
    pub text: String,
}

impl TaggedDocument {
    pub fn word_count(&self) -> usize {
        self.sentences.iter().map(Vec::len).sum()
    }

    pub fn tokens(&self) -> impl Iterator<Item = (&str, &str)> {
        self.sentences.iter().flatten().map(|(w, t)| (w.as_str(), t.as_str()))
    }
}

pub fn pos_tag(doc: &DocumentStructure) -> TaggedDocument {
    let sentences = doc
        .sentences
        .iter()
        .map(|s| {
            tag_tokens(&s.tokens)
                .into_iter()
                .zip(&s.tokens)
                .map(|(t, w)| (w.clone(), t.to_string()))
                .collect()
        })
        .collect();
    TaggedDocument {
        sentences,
        terminators: doc.sentences.iter().map(|s| s.terminator).collect(),
        text: doc.paragraphs.join(" "),
    }
}

/// The eight categories tested on a sentence's first token, in output order.
pub const INITIAL_CATEGORIES: [&str; 8] = [
    "pronoun",
    "article",
    "coordinating_conjunction",
    "subordinating_conjunction",
    "determiner",
    "adjective",
    "noun",
    "adverb",
];

/// Categories counted over the whole article, per sentence and per word.
pub const COUNTED_CATEGORIES: [&str; 18] = [
    "modal_auxiliary",
    "passive_voice",
    "to_be_verb",
    "different_word",
    "noun",
    "different_noun",
    "verb",
    "different_verb",
    "pronoun",
    "different_pronoun",
    "adjective",
    "different_adjective",
    "adverb",
    "different_adverb",
    "coordinating_conjunction",
    "different_coordinating_conjunction",
    "subordinating_conjunction",
    "different_subordinating_conjunction",
];

const PER_VERB: [&str; 3] = ["modal_auxiliary", "passive_voice", "to_be_verb"];

const PER_DIFFERENT_WORD: [&str; 7] = [
    "different_noun",
    "different_verb",
    "different_pronoun",
    "different_adjective",
    "different_adverb",
    "different_coordinating_conjunction",
    "different_subordinating_conjunction",
];

/// Names of the 91 scalar style features in output order.
pub fn style_feature_names() -> Vec<String> {
    let mut names: Vec<String> = [
        "mean_sentence_size",
        "largest_sentence_size",
        "shortest_sentence_size",
        "large_sentence_rate",
        "short_sentence_rate",
        "question_count",
        "question_ratio",
        "exclamation_count",
        "exclamation_ratio",
    ]
    .iter()
    .map(|s| s.to_string())
    .collect();
    names.extend(INITIAL_CATEGORIES.iter().map(|c| format!("{c}_initial_sentence_count")));
    names.extend(INITIAL_CATEGORIES.iter().map(|c| format!("{c}_initial_sentence_ratio")));
    names.extend(COUNTED_CATEGORIES.iter().map(|c| format!("{c}_count")));
    names.extend(COUNTED_CATEGORIES.iter().map(|c| format!("{c}_per_sentence")));
    names.extend(COUNTED_CATEGORIES.iter().map(|c| format!("{c}_per_word")));
    names.extend(PER_VERB.iter().map(|c| format!("{c}_per_verb")));
    names.extend(PER_DIFFERENT_WORD.iter().map(|c| format!("{c}_per_different_word")));
    names.push("syllables_per_word".into());
    names.push("characters_per_word".into());
    names
}

const TO_BE: [&str; 13] = [
    "be", "am", "is", "are", "was", "were", "been", "being", "isn't", "aren't", "wasn't", "weren't", "ain't",
];

pub fn is_to_be(word: &str) -> bool {
    let w = word.to_lowercase().replace('’', "'");
    TO_BE.contains(&w.as_str())
}

pub fn is_pronoun(tag: &str) -> bool {
    matches!(tag, "PRP" | "PRP$" | "WP" | "WP$")
}

pub fn is_article(word: &str, tag: &str) -> bool {
    tag == "DT" && matches!(word.to_lowercase().as_str(), "the" | "a" | "an")
}

pub fn is_determiner(word: &str, tag: &str) -> bool {
    tag == "DT" && !is_article(word, tag)
}

pub fn is_verb(word: &str, tag: &str) -> bool {
    tag.starts_with("VB") || tag == "MD" || is_to_be(word)
}

fn initial_category(word: &str, tag: &str) -> Option<usize> {
    let idx = if is_pronoun(tag) {
        0
    } else if is_article(word, tag) {
        1
    } else if tag == "CC" {
        2
    } else if tag == "IN" {
        3
    } else if tag == "DT" {
        4
    } else if tag.starts_with("JJ") {
        5
    } else if tag.starts_with("NN") {
        6
    } else if tag.starts_with("RB") {
        7
    } else {
        return None;
    };
    Some(idx)
}

/// Positions of passive constructions in one sentence: a `VBN` whose nearest
/// preceding non-adverb, non-*not* token is a "to be" form.
fn passive_count(sentence: &[(String, String)]) -> usize {
    let mut n = 0;
    for (i, (_, tag)) in sentence.iter().enumerate() {
        if tag != "VBN" {
            continue;
        }
        let mut j = i;
        while j > 0 {
            j -= 1;
            let (w, t) = &sentence[j];
            let lw = w.to_lowercase();
            if t.starts_with("RB") || lw == "not" || lw == "n't" {
                continue;
            }
            if is_to_be(w) {
                n += 1;
            }
            break;
        }
    }
    n
}

/// Category totals and distinct-type counts for a run of tagged tokens.
fn category_counts<'a>(tokens: impl Iterator<Item = &'a [(String, String)]>) -> [f64; 18] {
    let mut c = [0usize; 18];
    let mut types: [HashSet<String>; 8] = Default::default();
    for sentence in tokens {
        c[1] += passive_count(sentence);
        for (w, t) in sentence {
            let lw = w.to_lowercase();
            if t == "MD" {
                c[0] += 1;
            }
            if is_to_be(w) {
                c[2] += 1;
            }
            let hits = [
                t.starts_with("NN"),
                is_verb(w, t),
                is_pronoun(t),
                t.starts_with("JJ"),
                t.starts_with("RB"),
                t == "CC",
                t == "IN",
            ];
            for (k, hit) in hits.into_iter().enumerate() {
                if hit {
                    c[4 + 2 * k] += 1;
                    types[k + 1].insert(lw.clone());
                }
            }
            types[0].insert(lw);
        }
    }
    for (k, idx) in [3, 5, 7, 9, 11, 13, 15, 17].into_iter().enumerate() {
        c[idx] = types[k].len();
    }
    c.map(|v| v as f64)
}

/// The 91 scalar style features.
pub fn style_scalar_features(tagged: &TaggedDocument) -> FeatureVector {
    let sizes: Vec<f64> = tagged.sentences.iter().map(|s| s.len() as f64).collect();
    let n_sent = sizes.len() as f64;
    let words = tagged.word_count() as f64;
    let mean = ratio(sizes.iter().sum(), n_sent);
    let largest = sizes.iter().copied().fold(0.0_f64, f64::max);
    let shortest = if sizes.is_empty() { 0.0 } else { sizes.iter().copied().fold(f64::INFINITY, f64::min) };
    let large = sizes.iter().filter(|&&s| s >= mean + 10.0).count() as f64;
    let short = sizes.iter().filter(|&&s| s <= mean - 5.0).count() as f64;

    let mut fv = FeatureVector::with_capacity(91);
    fv.push("mean_sentence_size", mean);
    fv.push("largest_sentence_size", largest);
    fv.push("shortest_sentence_size", shortest);
    fv.push("large_sentence_rate", ratio(large, n_sent));
    fv.push("short_sentence_rate", ratio(short, n_sent));
    push_terminators(tagged, &mut fv);

    let mut initial = [0.0; 8];
    for s in &tagged.sentences {
        if let Some((w, t)) = s.first() {
            if let Some(k) = initial_category(w, t) {
                initial[k] += 1.0;
            }
        }
    }
    for (c, v) in INITIAL_CATEGORIES.iter().zip(initial) {
        fv.push(format!("{c}_initial_sentence_count"), v);
    }
    for (c, v) in INITIAL_CATEGORIES.iter().zip(initial) {
        fv.push(format!("{c}_initial_sentence_ratio"), ratio(v, n_sent));
    }

    let totals = category_counts(tagged.sentences.iter().map(Vec::as_slice));
    let mut per_sentence = [0.0; 18];
    for s in &tagged.sentences {
        let c = category_counts(std::iter::once(s.as_slice()));
        for (acc, v) in per_sentence.iter_mut().zip(c) {
            *acc += v;
        }
    }
    for (c, v) in COUNTED_CATEGORIES.iter().zip(totals) {
        fv.push(format!("{c}_count"), v);
    }
    for (c, v) in COUNTED_CATEGORIES.iter().zip(per_sentence) {
        fv.push(format!("{c}_per_sentence"), ratio(v, n_sent));
    }
    for (c, v) in COUNTED_CATEGORIES.iter().zip(totals) {
        fv.push(format!("{c}_per_word"), ratio(v, words));
    }
    let verbs = totals[6];
    for (c, v) in PER_VERB.iter().zip([totals[0], totals[1], totals[2]]) {
        fv.push(format!("{c}_per_verb"), ratio(v, verbs));
    }
    let different = totals[3];
    for (c, idx) in PER_DIFFERENT_WORD.iter().zip([5, 7, 9, 11, 13, 15, 17]) {
        fv.push(format!("{c}_per_different_word"), ratio(totals[idx], different));
    }

    let syllables: usize = tagged.tokens().map(|(w, _)| syllable_count(w)).sum();
    let chars: usize = tagged.tokens().map(|(w, _)| w.chars().count()).sum();
    fv.push("syllables_per_word", ratio(syllables as f64, words));
    fv.push("characters_per_word", ratio(chars as f64, words));
    fv
}

fn push_terminators(tagged: &TaggedDocument, fv: &mut FeatureVector) {
    let n_sent = tagged.sentences.len() as f64;
    let (q, e) = terminator_counts(tagged);
    fv.push("question_count", q);
    fv.push("question_ratio", ratio(q, n_sent));
    fv.push("exclamation_count", e);
    fv.push("exclamation_ratio", ratio(e, n_sent));
}

fn terminator_counts(tagged: &TaggedDocument) -> (f64, f64) {
    let mut q = 0.0;
    let mut e = 0.0;
    for t in tagged.terminators.iter().flatten() {
        match t {
            '?' => q += 1.0,
            '!' => e += 1.0,
            _ => {}
        }
    }
    (q, e)
}

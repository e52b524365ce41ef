//! Shared fixtures: readability snippets, ProbReview review matrices, the
//! χ² toy corpus and the wikitext fuzz strategy.

use std::collections::{BTreeMap, BTreeSet};

use chrono::{TimeZone, Utc};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use wikiqual_core::corpus::{Revision, UserKind};
use wikiqual_core::stylefeat::TaggedDocument;
use wikiqual_core::{QualityClass, RevisionHistory};

pub const SNIPPETS: [&str; 5] = [
    "The cat sat on the mat. The dog ran to the park and played with a red ball.",
    "The regiment was transferred to the western front in the spring of 1917. \
     Its officers reported heavy casualties during the subsequent offensive. \
     Reinforcements arrived within three weeks.",
    "Why did the campaign fail? Historians disagree about the decisive factors. \
     Supply shortages, poor communication, and unexpected weather all contributed to the defeat!",
    "Fortifications along the northern border were constructed between 1820 and 1845. \
     Engineers designed bastions capable of resisting prolonged artillery bombardment. \
     Several structures remain visible today. \
     Archaeological investigations have identified additional foundations beneath the modern settlement.",
    "He came home. She was glad. They ate bread and soup by the fire. \
     It was a good day for all of them.",
];

/// characters, words, sentences, syllables, complex, long, difficult, polysyllables
pub const COUNTS: [[usize; 8]; 5] = [
    [56, 18, 2, 18, 0, 0, 0, 0],
    [158, 27, 3, 50, 6, 10, 7, 9],
    [139, 23, 3, 47, 6, 10, 10, 7],
    [265, 35, 4, 89, 13, 22, 18, 18],
    [73, 23, 4, 23, 0, 0, 0, 0],
];

/// ARI, Coleman–Liau, Flesch reading ease, Flesch–Kincaid, Fog, LIX, SMOG, Dale–Chall
pub const INDICES: [[f64; 8]; 5] = [
    [-2.2766666666666637, -0.7955555555555556, 113.10000000000002, -0.27999999999999936, 3.6, 9.0, 3.1291, 0.44639999999999996],
    [10.632222222222225, 15.32, 41.03333333333336, 9.771851851851856, 12.488888888888889, 46.03703703703704, 13.023866798666859, 8.176603703703703],
    [10.868115942028986, 15.87478260869565, 26.175072463768117, 11.513043478260872, 13.501449275362319, 51.14492753623188, 11.855464076750408, 10.881984057971014],
    [18.606428571428573, 25.337142857142855, -17.17196428571424, 17.828214285714285, 18.357142857142858, 71.60714285714286, 15.247664890283005, 12.191071428571428],
    [-3.6058695652173895, -2.28521739130435, 116.39875, -1.5474999999999994, 2.3000000000000003, 5.75, 3.1291, 0.2852],
];

/// Articles `a0..` and users `u0..` from a 0/1 matrix; every mark becomes
/// one or two revisions so repeated edits are exercised.
pub fn histories(b: &[Vec<u8>]) -> BTreeMap<String, RevisionHistory> {
    let t0 = Utc.with_ymd_and_hms(2021, 1, 1, 0, 0, 0).unwrap();
    let mut out = BTreeMap::new();
    for (a, row) in b.iter().enumerate() {
        let mut revs = Vec::new();
        for (u, &x) in row.iter().enumerate() {
            for rep in 0..(x as usize) * (1 + (a + u) % 2) {
                revs.push(Revision {
                    revision_id: format!("{a}-{u}-{rep}"),
                    timestamp: t0 + chrono::Duration::hours((u * 3 + rep) as i64),
                    user_key: format!("u{u}"),
                    user_kind: UserKind::Registered,
                    content_hash: format!("{a}-{u}-{rep}"),
                    size_bytes: 10,
                });
            }
        }
        let id = format!("a{a}");
        out.insert(id.clone(), RevisionHistory::new(id, revs));
    }
    out
}

/// The 5×6 review matrix.
pub fn five_by_six() -> Vec<Vec<u8>> {
    vec![
        vec![1, 1, 0, 0, 1, 0],
        vec![0, 1, 1, 0, 0, 0],
        vec![1, 0, 1, 1, 0, 1],
        vec![0, 0, 0, 1, 1, 0],
        vec![1, 1, 1, 0, 0, 1],
    ]
}

/// Random review matrices kept connected by a user who reviewed everything.
pub fn random_fixtures(seed: u64, count: usize) -> Vec<Vec<Vec<u8>>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let rows = rng.random_range(3..8);
            let cols = rng.random_range(3..8);
            let mut b: Vec<Vec<u8>> =
                (0..rows).map(|_| (0..cols).map(|_| rng.random_bool(0.5) as u8).collect()).collect();
            for row in &mut b {
                row[0] = 1;
            }
            b
        })
        .collect()
}

const WORDS: [&str; 6] = ["ab", "Ba", "abc", "cab", "bca", "ca"];
const TAGS: [&str; 4] = ["DT", "NN", "VBZ", "JJ"];

pub fn chi_corpus() -> (Vec<TaggedDocument>, Vec<QualityClass>) {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let classes = [QualityClass::Stub, QualityClass::B, QualityClass::FA];
    let mut docs = Vec::new();
    let mut labels = Vec::new();
    for i in 0..20 {
        let n_words = rng.random_range(1..5);
        let words: Vec<&str> = (0..n_words).map(|_| WORDS[rng.random_range(0..WORDS.len())]).collect();
        let sentence_len = rng.random_range(2..6);
        let sentence: Vec<(String, String)> = (0..sentence_len)
            .map(|j| (format!("w{j}"), TAGS[rng.random_range(0..TAGS.len())].to_string()))
            .collect();
        docs.push(TaggedDocument {
            sentences: vec![sentence],
            terminators: vec![Some('.')],
            text: words.join("  "),
        });
        labels.push(classes[i % 3]);
    }
    (docs, labels)
}

pub fn pos_trigram_set(doc: &TaggedDocument) -> BTreeSet<String> {
    let mut out = BTreeSet::new();
    for s in &doc.sentences {
        for i in 0..s.len().saturating_sub(2) {
            out.insert(format!("{} {} {}", s[i].1, s[i + 1].1, s[i + 2].1));
        }
    }
    out
}

/// Fragments that exercise every markup construct, balanced or not.
const PIECES: &[&str] = &[
    "[[", "]]", "{{", "}}", "==", "===", "\n", "\n\n", "<ref>", "</ref>", "<ref name=a/>", "'''", "''", "|", "[http://x.org y]",
    "[[File:a.jpg|thumb|cap]]", "{{cite web|t=1}}", "<!--", "-->", "{|", "|}", "* ", "# ", "Dr. ", "e.g. ", "word",
    "The cat sat.", " ", "?", "!", ".", "é", "日本", "<nowiki>", "</nowiki>", "&nbsp;", "<br/>", "__TOC__", "=", ":",
];

pub fn wikitext_like() -> impl Strategy<Value = String> {
    prop::collection::vec(
        prop_oneof![
            3 => prop::sample::select(PIECES).prop_map(str::to_string),
            1 => "\\PC{0,6}",
        ],
        0..60,
    )
    .prop_map(|v| v.concat())
}


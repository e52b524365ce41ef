//! Character and POS trigrams ranked by χ².
//!
//! For each trigram seen in the training documents, the score is Pearson's χ²
//! over the 2×K table of document presence (present / absent) against class,
//! K being the number of classes in the training set. Cells with a zero
//! expected count are skipped. Trigrams are ranked by descending score, ties
//! broken lexicographically.
//!
//! Character trigrams come from the case-folded plain text with whitespace
//! runs collapsed to one space; punctuation is kept. POS trigrams are tag
//! windows inside a sentence. Feature values are relative frequencies:
//! occurrences of the trigram divided by all trigrams of its kind in the
//! document.

use std::collections::{BTreeSet, HashMap};

use serde::{Deserialize, Serialize};

use super::TaggedDocument;
use crate::corpus::QualityClass;
use crate::feature::FeatureVector;

pub const DEFAULT_CHAR_TRIGRAMS: usize = 50;
pub const DEFAULT_POS_TRIGRAMS: usize = 50;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum StyleError {
    #[error("trigram selection needs at least two classes, found {0}")]
    TooFewClasses(usize),
    #[error("{0} documents but {1} labels")]
    LengthMismatch(usize, usize),
    #[error("trigram counts must be positive (m = {m}, n = {n})")]
    ZeroSize { m: usize, n: usize },
}

/// Trigram occurrence counts of one document.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct TrigramProfile {
    pub char_counts: HashMap<String, u32>,
    pub char_total: u32,
    /// Keyed by the three tags joined with a space.
    pub pos_counts: HashMap<String, u32>,
    pub pos_total: u32,
}

impl TrigramProfile {
    pub fn from_tagged(doc: &TaggedDocument) -> Self {
        let mut p = TrigramProfile::default();
        let folded: Vec<char> = normalize_text(&doc.text).chars().collect();
        for w in folded.windows(3) {
            *p.char_counts.entry(w.iter().collect()).or_insert(0) += 1;
            p.char_total += 1;
        }
        for sentence in &doc.sentences {
            for w in sentence.windows(3) {
                let key = format!("{} {} {}", w[0].1, w[1].1, w[2].1);
                *p.pos_counts.entry(key).or_insert(0) += 1;
                p.pos_total += 1;
            }
        }
        p
    }
}

/// Case-folds and collapses whitespace runs to single spaces.
pub fn normalize_text(text: &str) -> String {
    let mut out = String::with_capacity(text.len());
    for word in text.split_whitespace() {
        if !out.is_empty() {
            out.push(' ');
        }
        out.extend(word.chars().flat_map(char::to_lowercase));
    }
    out
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScoredCharTrigram {
    pub trigram: String,
    pub score: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScoredPosTrigram {
    pub trigram: [String; 3],
    pub score: f64,
}

/// Fitted trigram selection. `m` and `n` are the requested sizes; the lists
/// are shorter when the training vocabulary was smaller.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrigramSelector {
    pub m: usize,
    pub n: usize,
    pub char_trigrams: Vec<ScoredCharTrigram>,
    pub pos_trigrams: Vec<ScoredPosTrigram>,
}

impl TrigramSelector {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("selector serializes")
    }

    pub fn from_json(s: &str) -> Result<Self, serde_json::Error> {
        serde_json::from_str(s)
    }
}

/// Column names for `m` character and `n` POS trigram features.
pub fn trigram_feature_names(m: usize, n: usize) -> Vec<String> {
    (0..m)
        .map(|i| format!("char_trigram_{i:02}"))
        .chain((0..n).map(|i| format!("pos_trigram_{i:02}")))
        .collect()
}

/// χ² of a 2×K presence table. `present[k]` documents of class k contain the
/// trigram out of `class_sizes[k]`. Cells with zero expected count are
/// skipped.
pub fn chi_square(present: &[u32], class_sizes: &[u32]) -> f64 {
    ChiSquare::new(present, class_sizes).value
}

fn gcd(mut a: u128, mut b: u128) -> u128 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// A χ² score with its exact rational value when that fits in `u128`, so
/// that equal scores tie exactly.
#[derive(Debug, Clone, Copy)]
struct ChiSquare {
    exact: Option<(u128, u128)>,
    value: f64,
}

impl ChiSquare {
    fn new(present: &[u32], class_sizes: &[u32]) -> Self {
        let total: f64 = class_sizes.iter().map(|&c| c as f64).sum();
        if total == 0.0 {
            return ChiSquare { exact: Some((0, 1)), value: 0.0 };
        }
        let row_present: f64 = present.iter().map(|&c| c as f64).sum();
        let row_absent = total - row_present;
        let mut chi = 0.0;
        for (&p, &size) in present.iter().zip(class_sizes) {
            let col = size as f64;
            let observed = [p as f64, col - p as f64];
            for (obs, row) in observed.into_iter().zip([row_present, row_absent]) {
                let expected = row * col / total;
                if expected > 0.0 {
                    chi += (obs - expected).powi(2) / expected;
                }
            }
        }
        ChiSquare { exact: Self::exact(present, class_sizes), value: chi }
    }

    /// Σ over cells of (N·O − R·C)² / (N·R·C), summed as reduced fractions.
    fn exact(present: &[u32], class_sizes: &[u32]) -> Option<(u128, u128)> {
        let n: u128 = class_sizes.iter().map(|&c| c as u128).sum();
        let r0: u128 = present.iter().map(|&c| c as u128).sum();
        let rows = [r0, n - r0];
        let (mut num, mut den) = (0u128, 1u128);
        for (&p, &c) in present.iter().zip(class_sizes) {
            let (p, c) = (p as u128, c as u128);
            for (o, r) in [p, c - p].into_iter().zip(rows) {
                let d = n.checked_mul(r)?.checked_mul(c)?;
                if d == 0 {
                    continue;
                }
                let diff = n.checked_mul(o)?.abs_diff(r.checked_mul(c)?);
                let (mut a, mut b) = (diff.checked_mul(diff)?, d);
                let g = gcd(a, b).max(1);
                (a, b) = (a / g, b / g);
                let l = den / gcd(den, b) * b;
                num = num.checked_mul(l / den)?.checked_add(a.checked_mul(l / b)?)?;
                den = l;
                let g = gcd(num, den).max(1);
                (num, den) = (num / g, den / g);
            }
        }
        Some((num, den))
    }

    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        if let (Some((a, b)), Some((c, d))) = (self.exact, other.exact) {
            if let (Some(x), Some(y)) = (a.checked_mul(d), c.checked_mul(b)) {
                return x.cmp(&y);
            }
        }
        self.value.total_cmp(&other.value)
    }
}

fn rank<'a>(
    docs: impl Iterator<Item = (&'a HashMap<String, u32>, usize)>,
    class_sizes: &[u32],
    keep: usize,
    kind: &str,
) -> Vec<(String, f64)> {
    let k = class_sizes.len();
    let mut presence: HashMap<&str, Vec<u32>> = HashMap::new();
    for (counts, class) in docs {
        for key in counts.keys() {
            presence.entry(key.as_str()).or_insert_with(|| vec![0; k])[class] += 1;
        }
    }
    let mut scored: Vec<(&str, ChiSquare)> = presence
        .into_iter()
        .map(|(key, present)| (key, ChiSquare::new(&present, class_sizes)))
        .collect();
    scored.sort_by(|a, b| b.1.cmp(&a.1).then_with(|| a.0.cmp(b.0)));
    if scored.len() < keep {
        log::warn!("only {} {kind} trigrams in the training vocabulary, {keep} requested", scored.len());
    }
    scored.truncate(keep);
    scored.into_iter().map(|(key, s)| (key.to_string(), s.value)).collect()
}

/// Fits the selector on training documents and their labels.
pub fn fit_trigram_selector(
    profiles: &[&TrigramProfile],
    labels: &[QualityClass],
    m: usize,
    n: usize,
) -> Result<TrigramSelector, StyleError> {
    if profiles.len() != labels.len() {
        return Err(StyleError::LengthMismatch(profiles.len(), labels.len()));
    }
    if m == 0 || n == 0 {
        return Err(StyleError::ZeroSize { m, n });
    }
    let classes: Vec<QualityClass> = labels.iter().copied().collect::<BTreeSet<_>>().into_iter().collect();
    if classes.len() < 2 {
        return Err(StyleError::TooFewClasses(classes.len()));
    }
    let class_idx: Vec<usize> = labels.iter().map(|l| classes.binary_search(l).unwrap()).collect();
    let mut class_sizes = vec![0u32; classes.len()];
    for &c in &class_idx {
        class_sizes[c] += 1;
    }

    let chars = rank(profiles.iter().map(|p| &p.char_counts).zip(class_idx.iter().copied()), &class_sizes, m, "character");
    let pos = rank(profiles.iter().map(|p| &p.pos_counts).zip(class_idx.iter().copied()), &class_sizes, n, "POS");

    Ok(TrigramSelector {
        m,
        n,
        char_trigrams: chars.into_iter().map(|(trigram, score)| ScoredCharTrigram { trigram, score }).collect(),
        pos_trigrams: pos
            .into_iter()
            .map(|(key, score)| {
                let mut it = key.split(' ').map(str::to_string);
                let trigram = [(); 3].map(|_| it.next().unwrap_or_default());
                ScoredPosTrigram { trigram, score }
            })
            .collect(),
    })
}

/// Relative frequencies of the selected trigrams; `m + n` columns, ranks
/// beyond a truncated list are `0.0`.
pub fn trigram_features(profile: &TrigramProfile, sel: &TrigramSelector) -> FeatureVector {
    let names = trigram_feature_names(sel.m, sel.n);
    let mut fv = FeatureVector::with_capacity(names.len());
    let freq = |count: Option<&u32>, total: u32| match (count, total) {
        (Some(&c), t) if t > 0 => c as f64 / t as f64,
        _ => 0.0,
    };
    for (i, name) in names[..sel.m].iter().enumerate() {
        let v = sel
            .char_trigrams
            .get(i)
            .map_or(0.0, |t| freq(profile.char_counts.get(&t.trigram), profile.char_total));
        fv.push(name.clone(), v);
    }
    for (i, name) in names[sel.m..].iter().enumerate() {
        let v = sel.pos_trigrams.get(i).map_or(0.0, |t| {
            freq(profile.pos_counts.get(&t.trigram.join(" ")), profile.pos_total)
        });
        fv.push(name.clone(), v);
    }
    fv
}

#[cfg(test)]
mod tests {
    use super::*;

    fn profile(text: &str, tags: &[&str]) -> TrigramProfile {
        let sentence = tags.iter().map(|t| ("w".to_string(), t.to_string())).collect();
        TrigramProfile::from_tagged(&TaggedDocument {
            sentences: vec![sentence],
            terminators: vec![Some('.')],
            text: text.to_string(),
        })
    }

    #[test]
    fn char_windows_fold_and_collapse() {
        let p = profile("Ab  C", &[]);
        assert_eq!(p.char_total, 2);
        assert_eq!(p.char_counts["ab "], 1);
        assert_eq!(p.char_counts["b c"], 1);
        assert_eq!(p.pos_total, 0);
    }

    #[test]
    fn maximal_dependence_ranks_first() {
        let a = profile("qxz aaa", &["DT", "NN", "VBZ"]);
        let b = profile("bbb aaa", &["DT", "NN", "VBD"]);
        let docs = [&a, &a, &b, &b];
        let labels = [QualityClass::FA, QualityClass::FA, QualityClass::Stub, QualityClass::Stub];
        let sel = fit_trigram_selector(&docs, &labels, 100, 100).unwrap();
        let first = &sel.char_trigrams[0];
        assert_eq!(first.score, 4.0);
        assert!(sel.char_trigrams.iter().take_while(|t| t.score == 4.0).any(|t| t.trigram == "qxz"));
        let last = sel.char_trigrams.last().unwrap();
        assert_eq!(last.score, 0.0);
        assert_eq!(last.trigram, "aaa");
        assert_eq!(sel.pos_trigrams.len(), 2);
    }

    #[test]
    fn ubiquitous_trigram_scores_zero() {
        assert_eq!(chi_square(&[3, 5], &[3, 5]), 0.0);
        assert_eq!(chi_square(&[0, 0], &[3, 5]), 0.0);
    }

    #[test]
    fn single_class_is_an_error() {
        let a = profile("abc", &[]);
        let err = fit_trigram_selector(&[&a, &a], &[QualityClass::B, QualityClass::B], 5, 5).unwrap_err();
        assert_eq!(err, StyleError::TooFewClasses(1));
    }

    #[test]
    fn features_pad_truncated_lists() {
        let a = profile("abcd", &["DT", "NN", "NN"]);
        let b = profile("wxyz", &["VB", "VB", "VB"]);
        let sel = fit_trigram_selector(&[&a, &b], &[QualityClass::A, QualityClass::B], 10, 3).unwrap();
        assert_eq!(sel.char_trigrams.len(), 4);
        let fv = trigram_features(&a, &sel);
        assert_eq!(fv.len(), 13);
        let total: f64 = fv.values().take(10).sum();
        assert!((total - 1.0).abs() < 1e-12);
        let none = trigram_features(&TrigramProfile::default(), &sel);
        assert!(none.values().all(|v| v == 0.0));
    }

    #[test]
    fn json_round_trip() {
        let a = profile("abcd", &["DT", "NN", "NN"]);
        let b = profile("wxyz", &["VB", "VB", "VB"]);
        let sel = fit_trigram_selector(&[&a, &b], &[QualityClass::A, QualityClass::B], 2, 2).unwrap();
        assert_eq!(TrigramSelector::from_json(&sel.to_json()).unwrap(), sel);
    }
}

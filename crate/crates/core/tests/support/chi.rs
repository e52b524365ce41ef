//! Exact rational χ² over a 2×K presence table, and the induced ranking.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};

fn gcd(mut a: u128, mut b: u128) -> u128 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Nonnegative fraction `num / den` in lowest terms.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Ratio {
    pub num: u128,
    pub den: u128,
}

impl Ratio {
    pub fn new(num: u128, den: u128) -> Self {
        let g = gcd(num, den).max(1);
        Ratio { num: num / g, den: den / g }
    }

    pub fn add(self, o: Ratio) -> Ratio {
        Ratio::new(self.num * o.den + o.num * self.den, self.den * o.den)
    }

    pub fn to_f64(self) -> f64 {
        self.num as f64 / self.den as f64
    }
}

impl PartialOrd for Ratio {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

impl Ord for Ratio {
    fn cmp(&self, o: &Self) -> Ordering {
        (self.num * o.den).cmp(&(o.num * self.den))
    }
}

/// χ² = Σ over cells with E > 0 of (N·O − R·C)² / (N·R·C).
pub fn chi_square_exact(present: &[u128], class_sizes: &[u128]) -> Ratio {
    let n: u128 = class_sizes.iter().sum();
    let r_present: u128 = present.iter().sum();
    let rows = [r_present, n - r_present];
    let mut acc = Ratio::new(0, 1);
    for (&p, &c) in present.iter().zip(class_sizes) {
        for (o, r) in [p, c - p].into_iter().zip(rows) {
            if r * c == 0 {
                continue;
            }
            let a = (n * o) as i128 - (r * c) as i128;
            acc = acc.add(Ratio::new((a * a) as u128, n * r * c));
        }
    }
    acc
}

/// Ranks keys of `docs` (sets of features per document) against `labels`:
/// descending exact χ², ties by key.
pub fn rank_exact<L: Ord + Copy>(docs: &[BTreeSet<String>], labels: &[L]) -> Vec<(String, Ratio)> {
    let classes: Vec<L> = labels.iter().copied().collect::<BTreeSet<_>>().into_iter().collect();
    let sizes: Vec<u128> = classes.iter().map(|c| labels.iter().filter(|l| *l == c).count() as u128).collect();
    let vocab: BTreeSet<&String> = docs.iter().flatten().collect();
    let mut scored: Vec<(String, Ratio)> = vocab
        .into_iter()
        .map(|key| {
            let mut present: BTreeMap<usize, u128> = BTreeMap::new();
            for (d, l) in docs.iter().zip(labels) {
                if d.contains(key) {
                    *present.entry(classes.binary_search(l).unwrap()).or_default() += 1;
                }
            }
            let row: Vec<u128> = (0..classes.len()).map(|k| present.get(&k).copied().unwrap_or(0)).collect();
            (key.clone(), chi_square_exact(&row, &sizes))
        })
        .collect();
    scored.sort_by(|a, b| b.1.cmp(&a.1).then_with(|| a.0.cmp(&b.0)));
    scored
}

/// Character trigram set of `text`, lower-cased with whitespace runs
/// collapsed to one space.
pub fn char_trigram_set(text: &str) -> BTreeSet<String> {
    let cleaned: String = text.split_whitespace().collect::<Vec<_>>().join(" ").to_lowercase();
    let chars: Vec<char> = cleaned.chars().collect();
    let mut out = BTreeSet::new();
    let mut i = 0;
    while i + 3 <= chars.len() {
        out.insert(chars[i..i + 3].iter().collect());
        i += 1;
    }
    out
}

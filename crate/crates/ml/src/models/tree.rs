//! CART classification trees with Gini impurity and exact splits.

use rand::seq::index::sample;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::Design;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct TreeParams {
    /// `None` grows until leaves are pure.
    pub max_depth: Option<usize>,
    pub min_samples_split: usize,
    pub min_samples_leaf: usize,
}

impl Default for TreeParams {
    fn default() -> Self {
        TreeParams { max_depth: None, min_samples_split: 2, min_samples_leaf: 1 }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Node {
    /// Class proportions (classification) or a single output value (regression).
    Leaf { value: Vec<f64> },
    /// Rows with `x[feature] <= threshold` go left.
    Split { feature: usize, threshold: f64, left: usize, right: usize },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Tree {
    pub nodes: Vec<Node>,
}

impl Tree {
    pub fn leaf(&self, row: &[f64]) -> &[f64] {
        let mut i = 0;
        loop {
            match &self.nodes[i] {
                Node::Leaf { value } => return value,
                Node::Split { feature, threshold, left, right } => {
                    i = if row[*feature] <= *threshold { *left } else { *right };
                }
            }
        }
    }

    pub fn depth(&self) -> usize {
        fn go(t: &Tree, i: usize) -> usize {
            match &t.nodes[i] {
                Node::Leaf { .. } => 0,
                Node::Split { left, right, .. } => 1 + go(t, *left).max(go(t, *right)),
            }
        }
        go(self, 0)
    }
}

/// Index of the largest value; ties go to the lowest index.
pub(crate) fn argmax(v: &[f64]) -> usize {
    let mut best = 0;
    for (i, x) in v.iter().enumerate() {
        if *x > v[best] {
            best = i;
        }
    }
    best
}

pub(crate) struct Grower<'a> {
    pub x: &'a Design<'a>,
    pub y: &'a [usize],
    pub k: usize,
    pub params: &'a TreeParams,
    /// Features examined per node; all of them when `>= d`.
    pub max_features: usize,
}

struct Best {
    score: f64,
    feature: usize,
    threshold: f64,
}

impl Grower<'_> {
    /// Grows a tree on `samples` (duplicates allowed, as in a bootstrap).
    pub fn grow(&self, samples: Vec<usize>, rng: &mut ChaCha8Rng) -> Tree {
        let mut tree = Tree { nodes: Vec::new() };
        self.node(&mut tree, samples, 0, rng);
        tree
    }

    fn node(&self, tree: &mut Tree, samples: Vec<usize>, depth: usize, rng: &mut ChaCha8Rng) -> usize {
        let id = tree.nodes.len();
        let mut counts = vec![0usize; self.k];
        for &s in &samples {
            counts[self.y[s]] += 1;
        }
        let n = samples.len();
        let leaf = Node::Leaf { value: counts.iter().map(|&c| c as f64 / n as f64).collect() };
        let pure = counts.iter().filter(|&&c| c > 0).count() <= 1;
        let depth_done = self.params.max_depth.is_some_and(|m| depth >= m);
        if pure || depth_done || n < self.params.min_samples_split.max(2) {
            tree.nodes.push(leaf);
            return id;
        }
        let Some(best) = self.best_split(&samples, &counts, rng) else {
            tree.nodes.push(leaf);
            return id;
        };
        let (left, right): (Vec<usize>, Vec<usize>) =
            samples.into_iter().partition(|&s| self.x.row(s)[best.feature] <= best.threshold);
        tree.nodes.push(Node::Split { feature: best.feature, threshold: best.threshold, left: 0, right: 0 });
        let l = self.node(tree, left, depth + 1, rng);
        let r = self.node(tree, right, depth + 1, rng);
        tree.nodes[id] = Node::Split { feature: best.feature, threshold: best.threshold, left: l, right: r };
        id
    }

    fn best_split(&self, samples: &[usize], counts: &[usize], rng: &mut ChaCha8Rng) -> Option<Best> {
        let d = self.x.d;
        let features: Vec<usize> = if self.max_features >= d {
            (0..d).collect()
        } else {
            let mut f = sample(rng, d, self.max_features).into_vec();
            f.sort_unstable();
            f
        };
        let n = samples.len();
        let parent: f64 = counts.iter().map(|&c| (c * c) as f64).sum::<f64>() / n as f64;
        let min_leaf = self.params.min_samples_leaf.max(1);
        let mut best: Option<Best> = None;
        let mut pairs: Vec<(f64, usize)> = Vec::with_capacity(n);
        let mut left = vec![0usize; self.k];
        let mut right = vec![0usize; self.k];
        for f in features {
            pairs.clear();
            pairs.extend(samples.iter().map(|&s| (self.x.row(s)[f], self.y[s])));
            pairs.sort_by(|a, b| a.0.total_cmp(&b.0));
            if pairs[0].0 == pairs[n - 1].0 {
                continue;
            }
            left.iter_mut().for_each(|c| *c = 0);
            right.copy_from_slice(counts);
            // Sums of squared class counts on each side.
            let mut sq_l = 0usize;
            let mut sq_r: usize = counts.iter().map(|c| c * c).sum();
            for i in 0..n - 1 {
                let c = pairs[i].1;
                sq_l += 2 * left[c] + 1;
                sq_r -= 2 * right[c] - 1;
                left[c] += 1;
                right[c] -= 1;
                let nl = i + 1;
                if pairs[i].0 == pairs[i + 1].0 || nl < min_leaf || n - nl < min_leaf {
                    continue;
                }
                let score = sq_l as f64 / nl as f64 + sq_r as f64 / (n - nl) as f64;
                if score > parent + 1e-12 && best.as_ref().is_none_or(|b| score > b.score + 1e-12) {
                    let (a, b) = (pairs[i].0, pairs[i + 1].0);
                    let mid = a + (b - a) / 2.0;
                    let threshold = if mid < b { mid } else { a };
                    best = Some(Best { score, feature: f, threshold });
                }
            }
        }
        best
    }
}

//! Gradient boosting: one-vs-rest logistic loss, histogram regression trees, shrinkage.

use serde::{Deserialize, Serialize};
use wikiqual_core::{par, Execution};

use super::tree::{argmax, Node, Tree};
use super::Design;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct BoostingParams {
    pub rounds: usize,
    pub max_depth: usize,
    pub learning_rate: f64,
    pub min_samples_leaf: usize,
    /// L2 penalty on leaf values.
    pub l2: f64,
    /// Upper bound on histogram bins per feature.
    pub max_bins: usize,
}

impl Default for BoostingParams {
    fn default() -> Self {
        BoostingParams { rounds: 300, max_depth: 3, learning_rate: 0.1, min_samples_leaf: 1, l2: 1.0, max_bins: 255 }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Boosting {
    pub learning_rate: f64,
    /// Initial log-odds per class.
    pub init: Vec<f64>,
    /// `rounds[r][c]` is the tree for class `c` in round `r`.
    pub rounds: Vec<Vec<Tree>>,
}

/// Per-feature cut points; bin `b` holds values in `(cuts[b-1], cuts[b]]`.
struct Bins {
    cuts: Vec<Vec<f64>>,
    /// Column-major bin index per cell.
    codes: Vec<u16>,
    n: usize,
}

impl Bins {
    fn new(x: &Design, max_bins: usize) -> Bins {
        let (n, d) = (x.n(), x.d);
        let max_bins = max_bins.clamp(2, u16::MAX as usize);
        let mut cuts = Vec::with_capacity(d);
        let mut col = Vec::with_capacity(n);
        for f in 0..d {
            col.clear();
            col.extend((0..n).map(|i| x.row(i)[f]));
            col.sort_by(f64::total_cmp);
            col.dedup();
            let c: Vec<f64> = if col.len() <= max_bins {
                col.windows(2).map(|w| { let m = w[0] + (w[1] - w[0]) / 2.0; if m < w[1] { m } else { w[0] } }).collect()
            } else {
                let mut c: Vec<f64> = (1..max_bins).map(|i| col[i * col.len() / max_bins]).collect();
                c.dedup();
                c
            };
            cuts.push(c);
        }
        let mut codes = Vec::with_capacity(n * d);
        for (f, c) in cuts.iter().enumerate() {
            for i in 0..n {
                let v = x.row(i)[f];
                codes.push(c.partition_point(|&t| t < v) as u16);
            }
        }
        Bins { cuts, codes, n }
    }

    fn column(&self, f: usize) -> &[u16] {
        &self.codes[f * self.n..(f + 1) * self.n]
    }
}

struct RegGrower<'a> {
    bins: &'a Bins,
    p: &'a BoostingParams,
}

impl RegGrower<'_> {
    fn grow(&self, g: &[f64], h: &[f64], rows: Vec<usize>) -> Tree {
        let mut tree = Tree { nodes: Vec::new() };
        self.node(&mut tree, g, h, rows, 0);
        tree
    }

    fn node(&self, tree: &mut Tree, g: &[f64], h: &[f64], rows: Vec<usize>, depth: usize) -> usize {
        let id = tree.nodes.len();
        let gs: f64 = rows.iter().map(|&i| g[i]).sum();
        let hs: f64 = rows.iter().map(|&i| h[i]).sum();
        let leaf = Node::Leaf { value: vec![gs / (hs + self.p.l2)] };
        let min_leaf = self.p.min_samples_leaf.max(1);
        if depth >= self.p.max_depth || rows.len() < 2 * min_leaf {
            tree.nodes.push(leaf);
            return id;
        }
        let parent = gs * gs / (hs + self.p.l2);
        let mut best: Option<(f64, usize, usize)> = None;
        let mut hist = Vec::new();
        for f in 0..self.bins.cuts.len() {
            let nb = self.bins.cuts[f].len() + 1;
            if nb < 2 {
                continue;
            }
            let col = self.bins.column(f);
            hist.clear();
            hist.resize(nb, (0.0f64, 0.0f64, 0usize));
            for &i in &rows {
                let e = &mut hist[col[i] as usize];
                e.0 += g[i];
                e.1 += h[i];
                e.2 += 1;
            }
            let (mut gl, mut hl, mut nl) = (0.0, 0.0, 0usize);
            for (b, e) in hist[..nb - 1].iter().enumerate() {
                gl += e.0;
                hl += e.1;
                nl += e.2;
                if e.2 == 0 || nl < min_leaf || rows.len() - nl < min_leaf {
                    continue;
                }
                let (gr, hr) = (gs - gl, hs - hl);
                let gain = gl * gl / (hl + self.p.l2) + gr * gr / (hr + self.p.l2) - parent;
                if gain > 1e-12 && best.is_none_or(|(bg, _, _)| gain > bg + 1e-12) {
                    best = Some((gain, f, b));
                }
            }
        }
        let Some((_, f, b)) = best else {
            tree.nodes.push(leaf);
            return id;
        };
        let (left, right): (Vec<usize>, Vec<usize>) =
            rows.into_iter().partition(|&i| self.bins.column(f)[i] as usize <= b);
        let threshold = self.bins.cuts[f][b];
        tree.nodes.push(Node::Split { feature: f, threshold, left: 0, right: 0 });
        let l = self.node(tree, g, h, left, depth + 1);
        let r = self.node(tree, g, h, right, depth + 1);
        tree.nodes[id] = Node::Split { feature: f, threshold, left: l, right: r };
        id
    }
}

fn sigmoid(z: f64) -> f64 {
    1.0 / (1.0 + (-z).exp())
}

impl Boosting {
    /// Rounds are sequential; the per-class trees of a round only read the
    /// previous scores, so they are grown concurrently.
    pub(crate) fn fit(x: &Design, y: &[usize], k: usize, p: &BoostingParams, exec: Execution) -> Boosting {
        let n = x.n();
        let bins = Bins::new(x, p.max_bins);
        let grower = RegGrower { bins: &bins, p };
        let init: Vec<f64> = (0..k)
            .map(|c| {
                let prior = (y.iter().filter(|&&v| v == c).count() as f64 / n as f64).clamp(1e-6, 1.0 - 1e-6);
                (prior / (1.0 - prior)).ln()
            })
            .collect();
        let mut scores: Vec<Vec<f64>> = init.iter().map(|&s| vec![s; n]).collect();
        let mut rounds = Vec::with_capacity(p.rounds);
        for _ in 0..p.rounds {
            let round = par::map_range(exec, k, |c| {
                let mut g = vec![0.0; n];
                let mut h = vec![0.0; n];
                for i in 0..n {
                    let pr = sigmoid(scores[c][i]);
                    g[i] = f64::from(u8::from(y[i] == c)) - pr;
                    h[i] = (pr * (1.0 - pr)).max(1e-12);
                }
                grower.grow(&g, &h, (0..n).collect())
            });
            for (c, tree) in round.iter().enumerate() {
                for (i, s) in scores[c].iter_mut().enumerate() {
                    *s += p.learning_rate * tree.leaf(x.row(i))[0];
                }
            }
            rounds.push(round);
        }
        Boosting { learning_rate: p.learning_rate, init, rounds }
    }

    pub fn decision(&self, row: &[f64]) -> Vec<f64> {
        let mut s = self.init.clone();
        for round in &self.rounds {
            for (v, t) in s.iter_mut().zip(round) {
                *v += self.learning_rate * t.leaf(row)[0];
            }
        }
        s
    }

    pub fn predict(&self, row: &[f64]) -> usize {
        argmax(&self.decision(row))
    }
}

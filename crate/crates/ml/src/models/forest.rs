//! Random forest: bagged CART trees with per-node feature subsampling.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use wikiqual_core::{par, Execution};

use super::tree::{argmax, Grower, Tree, TreeParams};
use super::{derive_seed, Design};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MaxFeatures {
    All,
    Sqrt,
    Log2,
    Count(usize),
}

impl MaxFeatures {
    pub fn resolve(self, d: usize) -> usize {
        let k = match self {
            MaxFeatures::All => d,
            MaxFeatures::Sqrt => (d as f64).sqrt().round() as usize,
            MaxFeatures::Log2 => (d as f64).log2().round() as usize,
            MaxFeatures::Count(k) => k,
        };
        k.clamp(1, d.max(1))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct ForestParams {
    pub n_trees: usize,
    pub max_features: MaxFeatures,
    pub bootstrap: bool,
    pub tree: TreeParams,
}

impl Default for ForestParams {
    fn default() -> Self {
        ForestParams { n_trees: 200, max_features: MaxFeatures::Sqrt, bootstrap: true, tree: TreeParams::default() }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Forest {
    pub trees: Vec<Tree>,
}

impl Forest {
    /// Trees are grown concurrently; tree `t` always uses the seed derived from `(seed, t)`.
    pub(crate) fn fit(x: &Design, y: &[usize], k: usize, p: &ForestParams, seed: u64, exec: Execution) -> Forest {
        let n = x.n();
        let grower = Grower { x, y, k, params: &p.tree, max_features: p.max_features.resolve(x.d) };
        let trees = par::map_range(exec, p.n_trees.max(1), |t| {
            let mut rng = ChaCha8Rng::seed_from_u64(derive_seed(seed, t as u64));
            let samples = if p.bootstrap { (0..n).map(|_| rng.random_range(0..n)).collect() } else { (0..n).collect() };
            grower.grow(samples, &mut rng)
        });
        Forest { trees }
    }

    pub fn proba(&self, row: &[f64]) -> Vec<f64> {
        let mut acc = self.trees[0].leaf(row).to_vec();
        for t in &self.trees[1..] {
            for (a, v) in acc.iter_mut().zip(t.leaf(row)) {
                *a += v;
            }
        }
        acc
    }

    pub fn predict(&self, row: &[f64]) -> usize {
        argmax(&self.proba(row))
    }
}

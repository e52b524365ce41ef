//! k-nearest neighbours by Euclidean distance.

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct KnnParams {
    pub k: usize,
}

impl Default for KnnParams {
    fn default() -> Self {
        KnnParams { k: 5 }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Knn {
    pub k: usize,
    pub d: usize,
    /// Row-major training points (already standardized).
    pub points: Vec<f64>,
    pub labels: Vec<usize>,
    pub n_classes: usize,
}

impl Knn {
    pub fn fit(x: &[f64], d: usize, y: &[usize], k_classes: usize, p: &KnnParams) -> Knn {
        Knn { k: p.k.max(1), d, points: x.to_vec(), labels: y.to_vec(), n_classes: k_classes }
    }

    /// Majority vote among the `k` nearest points (ties in distance go to the
    /// earlier training row); a tied vote goes to the class whose member is nearest.
    pub fn predict(&self, row: &[f64]) -> usize {
        let mut dist: Vec<(f64, usize)> = self
            .points
            .chunks_exact(self.d)
            .enumerate()
            .map(|(i, p)| (p.iter().zip(row).map(|(a, b)| (a - b) * (a - b)).sum::<f64>(), i))
            .collect();
        let k = self.k.min(dist.len());
        let cmp = |a: &(f64, usize), b: &(f64, usize)| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1));
        if k < dist.len() {
            dist.select_nth_unstable_by(k - 1, cmp);
            dist.truncate(k);
        }
        dist.sort_by(cmp);
        let mut votes = vec![0usize; self.n_classes];
        for &(_, i) in &dist {
            votes[self.labels[i]] += 1;
        }
        let top = *votes.iter().max().unwrap_or(&0);
        dist.iter().map(|&(_, i)| self.labels[i]).find(|&c| votes[c] == top).unwrap_or(0)
    }
}

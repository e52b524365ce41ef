//! Per-column standardization fitted on training rows.

use serde::{Deserialize, Serialize};

use crate::digest_ids;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Standardizer {
    pub mean: Vec<f64>,
    /// Population standard deviation; constant columns get 1.0.
    pub std: Vec<f64>,
    /// Digest of the sorted ids of the rows the statistics came from.
    pub fit_digest: String,
    pub n_fit: usize,
}

impl Standardizer {
    /// Fits on a row-major block of `n_cols` columns whose rows are `ids`.
    pub fn fit(x: &[f64], n_cols: usize, ids: &[String]) -> Self {
        let n = ids.len();
        let mut mean = vec![0.0; n_cols];
        for row in x.chunks_exact(n_cols) {
            for (m, v) in mean.iter_mut().zip(row) {
                *m += v;
            }
        }
        mean.iter_mut().for_each(|m| *m /= n.max(1) as f64);
        let mut var = vec![0.0; n_cols];
        for row in x.chunks_exact(n_cols) {
            for ((s, v), m) in var.iter_mut().zip(row).zip(&mean) {
                *s += (v - m).powi(2);
            }
        }
        let std = var
            .into_iter()
            .map(|s| {
                let sd = (s / n.max(1) as f64).sqrt();
                if sd > 1e-12 {
                    sd
                } else {
                    1.0
                }
            })
            .collect();
        Standardizer { mean, std, fit_digest: digest_ids(ids.iter().map(String::as_str)), n_fit: n }
    }

    pub fn transform_row(&self, row: &[f64], out: &mut Vec<f64>) {
        out.clear();
        out.extend(row.iter().zip(&self.mean).zip(&self.std).map(|((v, m), s)| (v - m) / s));
    }

    pub fn transform(&self, x: &[f64]) -> Vec<f64> {
        let d = self.mean.len();
        let mut out = Vec::with_capacity(x.len());
        let mut buf = Vec::with_capacity(d);
        for row in x.chunks_exact(d) {
            self.transform_row(row, &mut buf);
            out.extend_from_slice(&buf);
        }
        out
    }
}

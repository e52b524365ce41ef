//! Gaussian naive Bayes.

use serde::{Deserialize, Serialize};

use super::tree::argmax;
use super::Design;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct NaiveBayesParams {
    /// Added to every variance, as a fraction of the largest feature variance.
    pub var_smoothing: f64,
}

impl Default for NaiveBayesParams {
    fn default() -> Self {
        NaiveBayesParams { var_smoothing: 1e-9 }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NaiveBayes {
    pub log_prior: Vec<f64>,
    pub mean: Vec<Vec<f64>>,
    pub var: Vec<Vec<f64>>,
}

impl NaiveBayes {
    pub(crate) fn fit(x: &Design, y: &[usize], k: usize, p: &NaiveBayesParams) -> NaiveBayes {
        let (n, d) = (x.n(), x.d);
        let mut count = vec![0usize; k];
        let mut mean = vec![vec![0.0; d]; k];
        for i in 0..n {
            count[y[i]] += 1;
            for (m, v) in mean[y[i]].iter_mut().zip(x.row(i)) {
                *m += v;
            }
        }
        for (m, &c) in mean.iter_mut().zip(&count) {
            m.iter_mut().for_each(|v| *v /= c.max(1) as f64);
        }
        let mut var = vec![vec![0.0; d]; k];
        for i in 0..n {
            let c = y[i];
            for ((s, v), m) in var[c].iter_mut().zip(x.row(i)).zip(&mean[c]) {
                *s += (v - m).powi(2);
            }
        }
        for (s, &c) in var.iter_mut().zip(&count) {
            s.iter_mut().for_each(|v| *v /= c.max(1) as f64);
        }
        // Global variance per feature sets the smoothing scale.
        let mut max_var = 0.0f64;
        for j in 0..d {
            let mu = (0..n).map(|i| x.row(i)[j]).sum::<f64>() / n as f64;
            let v = (0..n).map(|i| (x.row(i)[j] - mu).powi(2)).sum::<f64>() / n as f64;
            max_var = max_var.max(v);
        }
        let eps = (p.var_smoothing * max_var).max(1e-300);
        var.iter_mut().for_each(|s| s.iter_mut().for_each(|v| *v += eps));
        let log_prior = count.iter().map(|&c| (c as f64 / n as f64).ln()).collect();
        NaiveBayes { log_prior, mean, var }
    }

    pub fn predict(&self, row: &[f64]) -> usize {
        let ll: Vec<f64> = (0..self.log_prior.len())
            .map(|c| {
                self.log_prior[c]
                    - 0.5
                        * row
                            .iter()
                            .zip(&self.mean[c])
                            .zip(&self.var[c])
                            .map(|((x, m), v)| (2.0 * std::f64::consts::PI * v).ln() + (x - m).powi(2) / v)
                            .sum::<f64>()
            })
            .collect();
        argmax(&ll)
    }
}

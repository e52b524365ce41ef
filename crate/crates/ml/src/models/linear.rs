//! Linear models: multinomial logistic regression and a one-vs-rest linear SVC.

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::tree::argmax;
use super::Design;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct LogisticParams {
    pub learning_rate: f64,
    pub l2: f64,
    pub iterations: usize,
}

impl Default for LogisticParams {
    fn default() -> Self {
        LogisticParams { learning_rate: 0.5, l2: 1e-3, iterations: 500 }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct SvcParams {
    /// Regularization strength of the Pegasos objective.
    pub lambda: f64,
    pub epochs: usize,
}

impl Default for SvcParams {
    fn default() -> Self {
        SvcParams { lambda: 1e-4, epochs: 30 }
    }
}

/// One weight row per class; the last entry of each row is the bias.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Linear {
    pub weights: Vec<Vec<f64>>,
}

impl Linear {
    pub fn decision(&self, row: &[f64]) -> Vec<f64> {
        self.weights
            .iter()
            .map(|w| {
                let d = row.len();
                w[..d].iter().zip(row).map(|(a, b)| a * b).sum::<f64>() + w[d]
            })
            .collect()
    }

    pub fn predict(&self, row: &[f64]) -> usize {
        argmax(&self.decision(row))
    }

    /// Full-batch gradient descent on the mean softmax cross-entropy plus `l2/2 * |W|^2`.
    pub(crate) fn fit_logistic(x: &Design, y: &[usize], k: usize, p: &LogisticParams) -> Linear {
        let (n, d) = (x.n(), x.d);
        let mut model = Linear { weights: vec![vec![0.0; d + 1]; k] };
        let mut grad = vec![vec![0.0; d + 1]; k];
        let mut prob = vec![0.0; k];
        for _ in 0..p.iterations {
            grad.iter_mut().for_each(|g| g.iter_mut().for_each(|v| *v = 0.0));
            for i in 0..n {
                let row = x.row(i);
                let z = model.decision(row);
                softmax(&z, &mut prob);
                for c in 0..k {
                    let e = prob[c] - f64::from(u8::from(y[i] == c));
                    let g = &mut grad[c];
                    for (gj, xj) in g[..d].iter_mut().zip(row) {
                        *gj += e * xj;
                    }
                    g[d] += e;
                }
            }
            for (w, g) in model.weights.iter_mut().zip(&grad) {
                for j in 0..=d {
                    let reg = if j < d { p.l2 * w[j] } else { 0.0 };
                    w[j] -= p.learning_rate * (g[j] / n as f64 + reg);
                }
            }
        }
        model
    }

    /// Pegasos stochastic subgradient descent on the hinge loss, one binary
    /// problem per class; the bias is the weight of a constant 1 input.
    pub(crate) fn fit_svc(x: &Design, y: &[usize], k: usize, p: &SvcParams, seed: u64) -> Linear {
        let (n, d) = (x.n(), x.d);
        let lambda = p.lambda.max(1e-12);
        let weights = (0..k)
            .map(|c| {
                let mut rng = ChaCha8Rng::seed_from_u64(super::derive_seed(seed, c as u64));
                let mut w = vec![0.0; d + 1];
                let mut order: Vec<usize> = (0..n).collect();
                let mut t = 0u64;
                for _ in 0..p.epochs.max(1) {
                    order.shuffle(&mut rng);
                    for &i in &order {
                        t += 1;
                        let eta = 1.0 / (lambda * t as f64);
                        let row = x.row(i);
                        let yi = if y[i] == c { 1.0 } else { -1.0 };
                        let margin = yi * (w[..d].iter().zip(row).map(|(a, b)| a * b).sum::<f64>() + w[d]);
                        let shrink = 1.0 - eta * lambda;
                        w.iter_mut().for_each(|v| *v *= shrink);
                        if margin < 1.0 {
                            for (wj, xj) in w[..d].iter_mut().zip(row) {
                                *wj += eta * yi * xj;
                            }
                            w[d] += eta * yi;
                        }
                    }
                }
                w
            })
            .collect();
        Linear { weights }
    }
}

pub(crate) fn softmax(z: &[f64], out: &mut [f64]) {
    let m = z.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    let mut s = 0.0;
    for (o, v) in out.iter_mut().zip(z) {
        *o = (v - m).exp();
        s += *o;
    }
    out.iter_mut().for_each(|o| *o /= s);
}

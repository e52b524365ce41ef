//! Single-hidden-layer network: ReLU hidden units, softmax output, Adam.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::linear::softmax;
use super::tree::argmax;
use super::Design;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct MlpParams {
    pub hidden: usize,
    pub epochs: usize,
    pub learning_rate: f64,
    pub batch_size: usize,
    pub l2: f64,
}

impl Default for MlpParams {
    fn default() -> Self {
        MlpParams { hidden: 64, epochs: 200, learning_rate: 1e-3, batch_size: 32, l2: 1e-4 }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Mlp {
    pub d: usize,
    pub hidden: usize,
    pub k: usize,
    /// `hidden x d`, row-major.
    pub w1: Vec<f64>,
    pub b1: Vec<f64>,
    /// `k x hidden`, row-major.
    pub w2: Vec<f64>,
    pub b2: Vec<f64>,
}

struct Adam {
    m: Vec<f64>,
    v: Vec<f64>,
}

impl Adam {
    fn new(n: usize) -> Adam {
        Adam { m: vec![0.0; n], v: vec![0.0; n] }
    }

    fn step(&mut self, w: &mut [f64], g: &[f64], lr: f64, t: i32) {
        const B1: f64 = 0.9;
        const B2: f64 = 0.999;
        let c1 = 1.0 - B1.powi(t);
        let c2 = 1.0 - B2.powi(t);
        for i in 0..w.len() {
            self.m[i] = B1 * self.m[i] + (1.0 - B1) * g[i];
            self.v[i] = B2 * self.v[i] + (1.0 - B2) * g[i] * g[i];
            w[i] -= lr * (self.m[i] / c1) / ((self.v[i] / c2).sqrt() + 1e-8);
        }
    }
}

impl Mlp {
    fn hidden_layer(&self, row: &[f64], out: &mut [f64]) {
        for (j, o) in out.iter_mut().enumerate() {
            let w = &self.w1[j * self.d..(j + 1) * self.d];
            *o = (w.iter().zip(row).map(|(a, b)| a * b).sum::<f64>() + self.b1[j]).max(0.0);
        }
    }

    fn output_layer(&self, h: &[f64], out: &mut [f64]) {
        for (c, o) in out.iter_mut().enumerate() {
            let w = &self.w2[c * self.hidden..(c + 1) * self.hidden];
            *o = w.iter().zip(h).map(|(a, b)| a * b).sum::<f64>() + self.b2[c];
        }
    }

    pub fn decision(&self, row: &[f64]) -> Vec<f64> {
        let mut h = vec![0.0; self.hidden];
        self.hidden_layer(row, &mut h);
        let mut z = vec![0.0; self.k];
        self.output_layer(&h, &mut z);
        z
    }

    pub fn predict(&self, row: &[f64]) -> usize {
        argmax(&self.decision(row))
    }

    /// Minibatch Adam on mean cross-entropy; epochs run in order with a
    /// seeded shuffle, so the fit is deterministic.
    pub(crate) fn fit(x: &Design, y: &[usize], k: usize, p: &MlpParams, seed: u64) -> Mlp {
        let (n, d) = (x.n(), x.d);
        let hidden = p.hidden.max(1);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a1 = (6.0 / (d + hidden) as f64).sqrt();
        let a2 = (6.0 / (hidden + k) as f64).sqrt();
        let mut net = Mlp {
            d,
            hidden,
            k,
            w1: (0..hidden * d).map(|_| rng.random_range(-a1..a1)).collect(),
            b1: vec![0.0; hidden],
            w2: (0..k * hidden).map(|_| rng.random_range(-a2..a2)).collect(),
            b2: vec![0.0; k],
        };
        let mut opt = [Adam::new(net.w1.len()), Adam::new(hidden), Adam::new(net.w2.len()), Adam::new(k)];
        let mut g_w1 = vec![0.0; net.w1.len()];
        let mut g_b1 = vec![0.0; hidden];
        let mut g_w2 = vec![0.0; net.w2.len()];
        let mut g_b2 = vec![0.0; k];
        let mut h = vec![0.0; hidden];
        let mut z = vec![0.0; k];
        let mut prob = vec![0.0; k];
        let mut dh = vec![0.0; hidden];
        let mut order: Vec<usize> = (0..n).collect();
        let batch = p.batch_size.clamp(1, n.max(1));
        let mut t = 0i32;
        for _ in 0..p.epochs {
            order.shuffle(&mut rng);
            for chunk in order.chunks(batch) {
                g_w1.iter_mut().for_each(|v| *v = 0.0);
                g_b1.iter_mut().for_each(|v| *v = 0.0);
                g_w2.iter_mut().for_each(|v| *v = 0.0);
                g_b2.iter_mut().for_each(|v| *v = 0.0);
                for &i in chunk {
                    let row = x.row(i);
                    net.hidden_layer(row, &mut h);
                    net.output_layer(&h, &mut z);
                    softmax(&z, &mut prob);
                    dh.iter_mut().for_each(|v| *v = 0.0);
                    for c in 0..k {
                        let e = prob[c] - f64::from(u8::from(y[i] == c));
                        g_b2[c] += e;
                        let w = &net.w2[c * hidden..(c + 1) * hidden];
                        for j in 0..hidden {
                            g_w2[c * hidden + j] += e * h[j];
                            dh[j] += e * w[j];
                        }
                    }
                    for j in 0..hidden {
                        if h[j] <= 0.0 {
                            continue;
                        }
                        g_b1[j] += dh[j];
                        for (g, xv) in g_w1[j * d..(j + 1) * d].iter_mut().zip(row) {
                            *g += dh[j] * xv;
                        }
                    }
                }
                let m = chunk.len() as f64;
                for (g, w) in g_w1.iter_mut().zip(&net.w1) {
                    *g = *g / m + p.l2 * w;
                }
                for (g, w) in g_w2.iter_mut().zip(&net.w2) {
                    *g = *g / m + p.l2 * w;
                }
                g_b1.iter_mut().for_each(|g| *g /= m);
                g_b2.iter_mut().for_each(|g| *g /= m);
                t = t.saturating_add(1);
                opt[0].step(&mut net.w1, &g_w1, p.learning_rate, t);
                opt[1].step(&mut net.b1, &g_b1, p.learning_rate, t);
                opt[2].step(&mut net.w2, &g_w2, p.learning_rate, t);
                opt[3].step(&mut net.b2, &g_b2, p.learning_rate, t);
            }
        }
        net
    }
}

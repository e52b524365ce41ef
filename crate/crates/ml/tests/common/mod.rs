#![allow(dead_code)]

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use wikiqual_core::{FeatureMatrix, QualityClass};
use wikiqual_ml::Hyperparams;

pub fn gaussian(rng: &mut impl Rng) -> f64 {
    let u1: f64 = rng.random_range(f64::EPSILON..1.0);
    let u2: f64 = rng.random();
    (-2.0 * u1.ln()).sqrt() * (std::f64::consts::TAU * u2).cos()
}

pub fn matrix(cols: usize, rows: Vec<(Vec<f64>, QualityClass)>) -> FeatureMatrix {
    let mut m = FeatureMatrix::new((0..cols).map(|j| format!("f{j}")).collect());
    for (i, (x, y)) in rows.into_iter().enumerate() {
        m.push_row(format!("r{i:05}"), &x, Some(y)).unwrap();
    }
    m
}

/// Two unit-variance blobs eight standard deviations apart.
pub fn blobs(n: usize, seed: u64) -> FeatureMatrix {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let rows = (0..n)
        .map(|i| {
            let (c, y) = if i % 2 == 0 { (0.0, QualityClass::Stub) } else { (8.0, QualityClass::FA) };
            (vec![c + gaussian(&mut rng), c + gaussian(&mut rng)], y)
        })
        .collect();
    matrix(2, rows)
}

/// Label is the sign of `x0 * x1`, with points kept away from the axes.
pub fn xor(n: usize, seed: u64) -> FeatureMatrix {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let rows = (0..n)
        .map(|_| {
            let a: f64 = rng.random_range(0.1..1.0) * if rng.random::<bool>() { 1.0 } else { -1.0 };
            let b: f64 = rng.random_range(0.1..1.0) * if rng.random::<bool>() { 1.0 } else { -1.0 };
            let y = if a * b > 0.0 { QualityClass::GA } else { QualityClass::C };
            (vec![a, b], y)
        })
        .collect();
    matrix(2, rows)
}

/// Balanced labels over all seven classes, features independent of the label.
pub fn noise(n: usize, cols: usize, seed: u64) -> FeatureMatrix {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let rows = (0..n).map(|i| ((0..cols).map(|_| rng.random()).collect(), QualityClass::ALL[i % 7])).collect();
    matrix(cols, rows)
}

/// Defaults scaled down for small test data.
pub fn quick_params() -> Hyperparams {
    let mut p = Hyperparams::default();
    p.rf.n_trees = 30;
    p.gb.rounds = 30;
    p.nn.epochs = 30;
    p.lr.iterations = 100;
    p.svc.epochs = 5;
    p
}

//! Dense and brute-force graph oracles over an adjacency matrix.

use nalgebra::{DMatrix, DVector};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Random simple digraph: `(n, edges)` with no self-loops or duplicates.
pub fn random_digraph(seed: u64, max_n: usize) -> (usize, Vec<(usize, usize)>) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = rng.random_range(2..=max_n);
    let p: f64 = rng.random_range(0.02..0.3);
    let mut edges = Vec::new();
    for a in 0..n {
        for b in 0..n {
            if a != b && rng.random_bool(p) {
                edges.push((a, b));
            }
        }
    }
    (n, edges)
}

pub fn adjacency(n: usize, edges: &[(usize, usize)]) -> Vec<Vec<bool>> {
    let mut a = vec![vec![false; n]; n];
    for &(u, v) in edges {
        a[u][v] = true;
    }
    a
}

/// Solves `(I - d M) x = (1 - d)/n` where `M` is the column-stochastic
/// transition matrix with dangling columns spread uniformly.
pub fn pagerank_dense(n: usize, edges: &[(usize, usize)], d: f64) -> Vec<f64> {
    let a = adjacency(n, edges);
    let mut m = DMatrix::<f64>::zeros(n, n);
    for u in 0..n {
        let out: Vec<usize> = (0..n).filter(|&v| a[u][v]).collect();
        if out.is_empty() {
            for v in 0..n {
                m[(v, u)] = 1.0 / n as f64;
            }
        } else {
            for &v in &out {
                m[(v, u)] = 1.0 / out.len() as f64;
            }
        }
    }
    let lhs = DMatrix::<f64>::identity(n, n) - m * d;
    let rhs = DVector::<f64>::from_element(n, (1.0 - d) / n as f64);
    let x = lhs.lu().solve(&rhs).expect("nonsingular");
    x.iter().copied().collect()
}

pub struct BruteMetrics {
    pub in_degree: Vec<f64>,
    pub out_degree: Vec<f64>,
    /// [in_in, in_out, out_in, out_out]
    pub assortativity: Vec<[f64; 4]>,
    pub clustering: Vec<f64>,
    pub reciprocity: Vec<f64>,
}

fn div(a: f64, b: f64) -> f64 {
    if b == 0.0 {
        0.0
    } else {
        a / b
    }
}

pub fn brute_metrics(n: usize, edges: &[(usize, usize)]) -> BruteMetrics {
    let a = adjacency(n, edges);
    let indeg: Vec<f64> = (0..n).map(|v| (0..n).filter(|&u| a[u][v]).count() as f64).collect();
    let outdeg: Vec<f64> = (0..n).map(|v| (0..n).filter(|&u| a[v][u]).count() as f64).collect();
    let mut assortativity = Vec::with_capacity(n);
    let mut clustering = Vec::with_capacity(n);
    let mut reciprocity = Vec::with_capacity(n);
    for v in 0..n {
        let preds: Vec<usize> = (0..n).filter(|&u| a[u][v]).collect();
        let succs: Vec<usize> = (0..n).filter(|&u| a[v][u]).collect();
        let mean = |set: &[usize], deg: &[f64]| div(set.iter().map(|&u| deg[u]).sum(), set.len() as f64);
        assortativity.push([
            div(indeg[v], mean(&preds, &indeg)),
            div(indeg[v], mean(&succs, &outdeg)),
            div(outdeg[v], mean(&preds, &indeg)),
            div(outdeg[v], mean(&succs, &outdeg)),
        ]);
        let nb: Vec<usize> = (0..n).filter(|&u| u != v && (a[u][v] || a[v][u])).collect();
        let k = nb.len();
        let mut links = 0usize;
        for i in 0..k {
            for j in i + 1..k {
                let (x, y) = (nb[i], nb[j]);
                if a[x][y] || a[y][x] {
                    links += 1;
                }
            }
        }
        clustering.push(if k < 2 { 0.0 } else { links as f64 / (k * (k - 1) / 2) as f64 });
        reciprocity.push(div(indeg[v], outdeg[v]));
    }
    BruteMetrics { in_degree: indeg, out_degree: outdeg, assortativity, clustering, reciprocity }
}

//! Dominant-eigenvector oracle for the article/reviewer reinforcement.

use nalgebra::{DMatrix, SymmetricEigen};

/// Quality and authority vectors from the top eigenvector of `B Bᵀ`, where
/// `B[a][u] = 1` when user `u` reviewed article `a`; both max-normalized.
pub fn eigen_scores(b: &[Vec<u8>]) -> (Vec<f64>, Vec<f64>) {
    let rows = b.len();
    let cols = b[0].len();
    let bm = DMatrix::<f64>::from_fn(rows, cols, |i, j| b[i][j] as f64);
    let bbt = &bm * bm.transpose();
    let eig = SymmetricEigen::new(bbt);
    let (top, _) = eig
        .eigenvalues
        .iter()
        .enumerate()
        .max_by(|a, b| a.1.total_cmp(b.1))
        .unwrap();
    let v = eig.eigenvectors.column(top).map(f64::abs);
    let max = v.max();
    let q = v / max;
    let auth = bm.transpose() * &q;
    let amax = auth.max();
    let a = auth / amax;
    (q.iter().copied().collect(), a.iter().copied().collect())
}

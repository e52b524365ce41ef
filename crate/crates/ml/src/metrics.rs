//! Accuracy and ordinal mean squared error.

use serde::{Deserialize, Serialize};
use wikiqual_core::QualityClass;

use crate::MlError;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Metrics {
    pub accuracy: f64,
    /// Mean squared difference of ordinals (Stub = 0 ... FA = 6).
    pub mse: f64,
}

pub fn evaluate(y_true: &[QualityClass], y_pred: &[QualityClass]) -> Result<Metrics, MlError> {
    if y_true.len() != y_pred.len() {
        return Err(MlError::LengthMismatch(y_true.len(), y_pred.len()));
    }
    if y_true.is_empty() {
        return Err(MlError::Empty);
    }
    let n = y_true.len() as f64;
    let mut hits = 0usize;
    let mut sq = 0u64;
    for (t, p) in y_true.iter().zip(y_pred) {
        hits += usize::from(t == p);
        let d = t.ordinal() as i64 - p.ordinal() as i64;
        sq += (d * d) as u64;
    }
    Ok(Metrics { accuracy: hits as f64 / n, mse: sq as f64 / n })
}

/// Mean and population standard deviation.
pub fn mean_std(xs: &[f64]) -> (f64, f64) {
    if xs.is_empty() {
        return (0.0, 0.0);
    }
    let n = xs.len() as f64;
    let mean = xs.iter().sum::<f64>() / n;
    let var = xs.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / n;
    (mean, var.sqrt())
}

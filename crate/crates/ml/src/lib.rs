//! Classifiers, evaluation and experiment protocols for article quality.
//!
//! - [`models`] holds the eight classifiers behind [`train`] and
//!   [`TrainedModel::predict`].
//! - [`metrics`] scores predictions by accuracy and ordinal MSE.
//! - [`cv`] runs stratified cross-validation, refitting the trigram selector
//!   and feature scaling inside every training fold.
//! - [`experiment`] runs the per-group experiments and renders result tables.

pub mod cv;
mod error;
pub mod experiment;
pub mod metrics;
pub mod models;
pub mod scale;

pub use cv::{assign_folds, cross_validate, CorpusSource, CvReport, FeatureSource};
pub use error::MlError;
pub use experiment::{experiment_tables, parse_groups, run_experiment, ExperimentConfig, GroupResult, ResultsTable};
pub use metrics::{evaluate, Metrics};
pub use models::{train, Algorithm, Hyperparams, TrainedModel};

use sha2::{Digest, Sha256};

fn hex(bytes: &[u8]) -> String {
    bytes.iter().map(|b| format!("{b:02x}")).collect()
}

/// SHA-256 over the column names, newline separated.
pub fn column_checksum(columns: &[String]) -> String {
    let mut h = Sha256::new();
    for (i, c) in columns.iter().enumerate() {
        if i > 0 {
            h.update(b"\n");
        }
        h.update(c.as_bytes());
    }
    hex(&h.finalize())
}

/// Order-independent SHA-256 over a set of row ids.
pub fn digest_ids<'a>(ids: impl IntoIterator<Item = &'a str>) -> String {
    let mut v: Vec<&str> = ids.into_iter().collect();
    v.sort_unstable();
    let mut h = Sha256::new();
    for id in v {
        h.update(id.as_bytes());
        h.update([0u8]);
    }
    hex(&h.finalize())
}

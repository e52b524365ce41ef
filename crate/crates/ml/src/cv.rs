//! Stratified k-fold cross-validation with per-fold refitting and leakage audit.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use wikiqual_core::feature::CoarseGroup;
use wikiqual_core::pipeline::Extraction;
use wikiqual_core::registry::columns_in_groups;
use wikiqual_core::{par, Execution, FeatureMatrix, QualityClass};

use crate::metrics::{evaluate, mean_std, Metrics};
use crate::models::{derive_seed, train, Algorithm, Hyperparams};
use crate::{digest_ids, MlError};

/// Features for one fold: every row, with corpus-fitted columns fitted on the training rows only.
#[derive(Debug, Clone)]
pub struct FoldMatrix {
    pub matrix: FeatureMatrix,
    /// Ids the trigram selector was fitted on, when one was fitted.
    pub selector_fitted_on: Option<Vec<String>>,
}

/// Where cross-validation gets its features from.
pub trait FeatureSource: Sync {
    fn ids(&self) -> Vec<String>;
    fn labels(&self) -> Vec<Option<QualityClass>>;
    /// Builds the fold's matrix restricted to `groups`.
    fn fold_matrix(&self, train: &[usize], groups: &[CoarseGroup], exec: Execution) -> Result<FoldMatrix, MlError>;
}

fn restrict(m: FeatureMatrix, groups: &[CoarseGroup]) -> Result<FeatureMatrix, MlError> {
    if groups.is_empty() {
        return Err(MlError::NoGroups);
    }
    if CoarseGroup::ALL.iter().all(|g| groups.contains(g)) {
        return Ok(m);
    }
    let names = columns_in_groups(&m.columns, groups);
    Ok(m.select_columns(&names)?)
}

/// A precomputed matrix; nothing is refitted per fold.
impl FeatureSource for FeatureMatrix {
    fn ids(&self) -> Vec<String> {
        self.ids.clone()
    }

    fn labels(&self) -> Vec<Option<QualityClass>> {
        self.labels.clone()
    }

    fn fold_matrix(&self, _train: &[usize], groups: &[CoarseGroup], _exec: Execution) -> Result<FoldMatrix, MlError> {
        Ok(FoldMatrix { matrix: restrict(self.clone(), groups)?, selector_fitted_on: None })
    }
}

/// An extraction whose trigram selector is refitted on each training fold.
pub struct CorpusSource<'a> {
    pub extraction: &'a Extraction,
    pub m: usize,
    pub n: usize,
}

impl FeatureSource for CorpusSource<'_> {
    fn ids(&self) -> Vec<String> {
        self.extraction.ids()
    }

    fn labels(&self) -> Vec<Option<QualityClass>> {
        self.extraction.labels()
    }

    fn fold_matrix(&self, train: &[usize], groups: &[CoarseGroup], exec: Execution) -> Result<FoldMatrix, MlError> {
        if !groups.contains(&CoarseGroup::Text) {
            return Ok(FoldMatrix { matrix: restrict(self.extraction.scalar_matrix(), groups)?, selector_fitted_on: None });
        }
        let sel = self.extraction.fit_selector(Some(train), self.m, self.n)?;
        let fitted = train.iter().map(|&i| self.extraction.rows[i].id.clone()).collect();
        Ok(FoldMatrix {
            matrix: restrict(self.extraction.matrix(&sel, exec), groups)?,
            selector_fitted_on: Some(fitted),
        })
    }
}

fn id_hash(seed: u64, id: &str) -> [u8; 32] {
    let mut h = Sha256::new();
    h.update(seed.to_le_bytes());
    h.update(id.as_bytes());
    h.finalize().into()
}

/// Stratified fold index per row.
///
/// Within each class rows are ranked by `sha256(seed, id)` and dealt round
/// robin, continuing from where the previous class stopped; the assignment
/// depends on ids only, never on row order.
pub fn assign_folds(ids: &[String], labels: &[QualityClass], folds: usize, seed: u64) -> Result<Vec<usize>, MlError> {
    if folds < 2 {
        return Err(MlError::TooFewFolds(folds));
    }
    let mut out = vec![0; ids.len()];
    let mut offset = 0;
    let mut smallest = usize::MAX;
    for class in QualityClass::ALL {
        let mut members: Vec<([u8; 32], &str, usize)> = (0..ids.len())
            .filter(|&i| labels[i] == class)
            .map(|i| (id_hash(seed, &ids[i]), ids[i].as_str(), i))
            .collect();
        if members.is_empty() {
            continue;
        }
        smallest = smallest.min(members.len());
        members.sort();
        for (rank, &(_, _, i)) in members.iter().enumerate() {
            out[i] = (offset + rank) % folds;
        }
        offset += members.len();
    }
    if smallest < folds {
        return Err(MlError::TooManyFolds { folds, smallest });
    }
    Ok(out)
}

/// Which leakage checks ran on a fold; a failed check is an error instead.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct LeakageAudit {
    pub disjoint_ids: bool,
    pub scaler_train_only: bool,
    pub selector_train_only: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FoldResult {
    pub fold: usize,
    pub n_train: usize,
    pub n_test: usize,
    pub metrics: Metrics,
    pub audit: LeakageAudit,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CvReport {
    pub algorithm: Algorithm,
    pub folds: Vec<FoldResult>,
    pub accuracy_mean: f64,
    pub accuracy_std: f64,
    pub mse_mean: f64,
    pub mse_std: f64,
}

impl CvReport {
    fn from_folds(algorithm: Algorithm, folds: Vec<FoldResult>) -> CvReport {
        let acc: Vec<f64> = folds.iter().map(|f| f.metrics.accuracy).collect();
        let mse: Vec<f64> = folds.iter().map(|f| f.metrics.mse).collect();
        let (accuracy_mean, accuracy_std) = mean_std(&acc);
        let (mse_mean, mse_std) = mean_std(&mse);
        CvReport { algorithm, folds, accuracy_mean, accuracy_std, mse_mean, mse_std }
    }
}

pub(crate) fn require_labels(source: &(impl FeatureSource + ?Sized)) -> Result<(Vec<String>, Vec<QualityClass>), MlError> {
    let ids = source.ids();
    let labels = source
        .labels()
        .into_iter()
        .zip(&ids)
        .map(|(l, id)| l.ok_or_else(|| MlError::Unlabeled(id.clone())))
        .collect::<Result<Vec<_>, _>>()?;
    Ok((ids, labels))
}

/// Trains on `train`, scores on `test`, and audits the fit for leakage.
///
/// Both row lists are put in id order first so the result does not depend on
/// the order rows arrive in.
#[allow(clippy::too_many_arguments)]
pub(crate) fn run_fold(
    source: &(impl FeatureSource + ?Sized),
    ids: &[String],
    mut train_rows: Vec<usize>,
    mut test_rows: Vec<usize>,
    fold: usize,
    groups: &[CoarseGroup],
    algo: Algorithm,
    params: &Hyperparams,
    seed: u64,
    exec: Execution,
) -> Result<FoldResult, MlError> {
    train_rows.sort_by(|&a, &b| ids[a].cmp(&ids[b]));
    test_rows.sort_by(|&a, &b| ids[a].cmp(&ids[b]));
    let fm = source.fold_matrix(&train_rows, groups, exec)?;
    let train_m = fm.matrix.select_rows(&train_rows);
    let test_m = fm.matrix.select_rows(&test_rows);
    let train_ids: BTreeSet<&str> = train_m.ids.iter().map(String::as_str).collect();
    let test_ids: BTreeSet<&str> = test_m.ids.iter().map(String::as_str).collect();
    let resubstitution = train_rows == test_rows;
    let disjoint_ids = !resubstitution;
    if disjoint_ids && !train_ids.is_disjoint(&test_ids) {
        return Err(MlError::Leakage(format!("fold {fold}: an id is in both the training and test rows")));
    }
    let selector_train_only = match &fm.selector_fitted_on {
        Some(fitted) => {
            let fitted: BTreeSet<&str> = fitted.iter().map(String::as_str).collect();
            if fitted != train_ids {
                return Err(MlError::Leakage(format!("fold {fold}: trigram selector was fitted on non-training rows")));
            }
            true
        }
        None => false,
    };
    let model = train(&train_m, algo, params, derive_seed(seed, fold as u64), exec)?;
    let scaler_train_only = match &model.scaler {
        Some(s) => {
            if s.n_fit != train_m.n_rows() || s.fit_digest != digest_ids(train_ids.iter().copied()) {
                return Err(MlError::Leakage(format!("fold {fold}: standardization saw non-training rows")));
            }
            true
        }
        None => false,
    };
    let pred = model.predict(&test_m, exec)?;
    let truth = test_m.require_labels().map_err(MlError::Unlabeled)?;
    Ok(FoldResult {
        fold,
        n_train: train_m.n_rows(),
        n_test: test_m.n_rows(),
        metrics: evaluate(&truth, &pred)?,
        audit: LeakageAudit { disjoint_ids, scaler_train_only, selector_train_only },
    })
}

/// Stratified k-fold cross-validation of one algorithm on the columns of `groups`.
///
/// Folds run concurrently and are reported in fold order.
pub fn cross_validate(
    source: &(impl FeatureSource + ?Sized),
    groups: &[CoarseGroup],
    algo: Algorithm,
    params: &Hyperparams,
    folds: usize,
    seed: u64,
    exec: Execution,
) -> Result<CvReport, MlError> {
    let (ids, labels) = require_labels(source)?;
    let assignment = assign_folds(&ids, &labels, folds, seed)?;
    let results = par::map_range(exec, folds, |f| {
        let train_rows = (0..ids.len()).filter(|&i| assignment[i] != f).collect();
        let test_rows = (0..ids.len()).filter(|&i| assignment[i] == f).collect();
        run_fold(source, &ids, train_rows, test_rows, f, groups, algo, params, seed, exec)
    });
    let folds = results.into_iter().collect::<Result<Vec<_>, _>>()?;
    Ok(CvReport::from_folds(algo, folds))
}

/// Trains and scores on all rows; for smoke runs where classes are too small to fold.
pub fn resubstitution(
    source: &(impl FeatureSource + ?Sized),
    groups: &[CoarseGroup],
    algo: Algorithm,
    params: &Hyperparams,
    seed: u64,
    exec: Execution,
) -> Result<CvReport, MlError> {
    let (ids, _) = require_labels(source)?;
    let all: Vec<usize> = (0..ids.len()).collect();
    let r = run_fold(source, &ids, all.clone(), all, 0, groups, algo, params, seed, exec)?;
    Ok(CvReport::from_folds(algo, vec![r]))
}

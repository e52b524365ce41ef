//! The eight classifiers and the serializable [`TrainedModel`].

pub mod bayes;
pub mod boosting;
pub mod forest;
pub mod knn;
pub mod linear;
pub mod mlp;
pub mod tree;

use std::fmt;
use std::str::FromStr;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use wikiqual_core::{par, Execution, FeatureMatrix, QualityClass};

use crate::scale::Standardizer;
use crate::{column_checksum, MlError};
use bayes::{NaiveBayes, NaiveBayesParams};
use boosting::{Boosting, BoostingParams};
use forest::{Forest, ForestParams};
use knn::{Knn, KnnParams};
use linear::{Linear, LogisticParams, SvcParams};
use mlp::{Mlp, MlpParams};
use tree::{argmax, Grower, Tree, TreeParams};

/// Current on-disk model format.
pub const MODEL_FORMAT: u32 = 1;

/// Row-major block of `d` columns.
pub(crate) struct Design<'a> {
    pub x: &'a [f64],
    pub d: usize,
}

impl Design<'_> {
    pub fn n(&self) -> usize {
        self.x.len().checked_div(self.d).unwrap_or(0)
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.x[i * self.d..(i + 1) * self.d]
    }
}

/// Mixes a base seed with a stream index (SplitMix64 finalizer).
pub fn derive_seed(seed: u64, stream: u64) -> u64 {
    let mut z = seed ^ stream.wrapping_add(1).wrapping_mul(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Algorithm {
    DT,
    KNN,
    LR,
    NB,
    RF,
    SVC,
    NN,
    GB,
}

impl Algorithm {
    pub const ALL: [Algorithm; 8] = [
        Algorithm::DT,
        Algorithm::KNN,
        Algorithm::LR,
        Algorithm::NB,
        Algorithm::RF,
        Algorithm::SVC,
        Algorithm::NN,
        Algorithm::GB,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Algorithm::DT => "DT",
            Algorithm::KNN => "KNN",
            Algorithm::LR => "LR",
            Algorithm::NB => "NB",
            Algorithm::RF => "RF",
            Algorithm::SVC => "SVC",
            Algorithm::NN => "NN",
            Algorithm::GB => "GB",
        }
    }

    /// KNN, LR, SVC and NN see standardized features; the others see raw values.
    pub fn standardizes(self) -> bool {
        matches!(self, Algorithm::KNN | Algorithm::LR | Algorithm::SVC | Algorithm::NN)
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Algorithm {
    type Err = MlError;

    fn from_str(s: &str) -> Result<Self, MlError> {
        Algorithm::ALL
            .into_iter()
            .find(|a| a.name().eq_ignore_ascii_case(s.trim()))
            .ok_or_else(|| MlError::UnknownAlgorithm(s.to_string()))
    }
}

/// Hyperparameters for every algorithm; absent keys take their defaults.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct Hyperparams {
    pub dt: TreeParams,
    pub knn: KnnParams,
    pub lr: LogisticParams,
    pub nb: NaiveBayesParams,
    pub rf: ForestParams,
    pub svc: SvcParams,
    pub nn: MlpParams,
    pub gb: BoostingParams,
}

impl Hyperparams {
    pub fn for_algorithm(&self, algo: Algorithm) -> AlgorithmParams {
        match algo {
            Algorithm::DT => AlgorithmParams::DT(self.dt.clone()),
            Algorithm::KNN => AlgorithmParams::KNN(self.knn.clone()),
            Algorithm::LR => AlgorithmParams::LR(self.lr.clone()),
            Algorithm::NB => AlgorithmParams::NB(self.nb.clone()),
            Algorithm::RF => AlgorithmParams::RF(self.rf.clone()),
            Algorithm::SVC => AlgorithmParams::SVC(self.svc.clone()),
            Algorithm::NN => AlgorithmParams::NN(self.nn.clone()),
            Algorithm::GB => AlgorithmParams::GB(self.gb.clone()),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum AlgorithmParams {
    DT(TreeParams),
    KNN(KnnParams),
    LR(LogisticParams),
    NB(NaiveBayesParams),
    RF(ForestParams),
    SVC(SvcParams),
    NN(MlpParams),
    GB(BoostingParams),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ModelState {
    Tree(Tree),
    Knn(Knn),
    Linear(Linear),
    NaiveBayes(NaiveBayes),
    Forest(Forest),
    Boosting(Boosting),
    Mlp(Mlp),
}

impl ModelState {
    fn predict(&self, row: &[f64]) -> usize {
        match self {
            ModelState::Tree(t) => argmax(t.leaf(row)),
            ModelState::Knn(m) => m.predict(row),
            ModelState::Linear(m) => m.predict(row),
            ModelState::NaiveBayes(m) => m.predict(row),
            ModelState::Forest(m) => m.predict(row),
            ModelState::Boosting(m) => m.predict(row),
            ModelState::Mlp(m) => m.predict(row),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrainedModel {
    pub format: u32,
    pub algorithm: Algorithm,
    pub params: AlgorithmParams,
    pub seed: u64,
    pub columns: Vec<String>,
    pub column_checksum: String,
    /// Classes seen in training; model outputs index into this list.
    pub classes: Vec<QualityClass>,
    pub scaler: Option<Standardizer>,
    pub state: ModelState,
}

/// Fits `algo` on every row of `x`.
pub fn train(
    x: &FeatureMatrix,
    algo: Algorithm,
    params: &Hyperparams,
    seed: u64,
    exec: Execution,
) -> Result<TrainedModel, MlError> {
    let labels = x.require_labels().map_err(MlError::Unlabeled)?;
    x.check_finite().map_err(|e| match e {
        wikiqual_core::matrix::MatrixError::NonFinite { row, column } => MlError::NonFinite { row, column },
        other => MlError::Matrix(other),
    })?;
    let mut classes = labels.clone();
    classes.sort();
    classes.dedup();
    if classes.len() < 2 {
        return Err(MlError::SingleClass(classes.len()));
    }
    let y: Vec<usize> = labels.iter().map(|l| classes.binary_search(l).expect("class present")).collect();
    let k = classes.len();
    let d = x.n_cols();
    let scaler = algo.standardizes().then(|| Standardizer::fit(&x.values, d, &x.ids));
    let scaled;
    let values: &[f64] = match &scaler {
        Some(s) => {
            scaled = s.transform(&x.values);
            &scaled
        }
        None => &x.values,
    };
    let design = Design { x: values, d };
    let state = match algo {
        Algorithm::DT => {
            let g = Grower { x: &design, y: &y, k, params: &params.dt, max_features: d };
            ModelState::Tree(g.grow((0..design.n()).collect(), &mut ChaCha8Rng::seed_from_u64(seed)))
        }
        Algorithm::KNN => ModelState::Knn(Knn::fit(values, d, &y, k, &params.knn)),
        Algorithm::LR => ModelState::Linear(Linear::fit_logistic(&design, &y, k, &params.lr)),
        Algorithm::NB => ModelState::NaiveBayes(NaiveBayes::fit(&design, &y, k, &params.nb)),
        Algorithm::RF => ModelState::Forest(Forest::fit(&design, &y, k, &params.rf, seed, exec)),
        Algorithm::SVC => ModelState::Linear(Linear::fit_svc(&design, &y, k, &params.svc, seed)),
        Algorithm::NN => ModelState::Mlp(Mlp::fit(&design, &y, k, &params.nn, seed)),
        Algorithm::GB => ModelState::Boosting(Boosting::fit(&design, &y, k, &params.gb, exec)),
    };
    Ok(TrainedModel {
        format: MODEL_FORMAT,
        algorithm: algo,
        params: params.for_algorithm(algo),
        seed,
        columns: x.columns.clone(),
        column_checksum: column_checksum(&x.columns),
        classes,
        scaler,
        state,
    })
}

impl TrainedModel {
    /// One label per row; refuses a matrix whose columns differ from training.
    pub fn predict(&self, x: &FeatureMatrix, exec: Execution) -> Result<Vec<QualityClass>, MlError> {
        if x.n_rows() == 0 {
            return Ok(Vec::new());
        }
        let found = column_checksum(&x.columns);
        if found != self.column_checksum {
            return Err(MlError::ChecksumMismatch { expected: self.column_checksum.clone(), found });
        }
        let idx = par::map_range(exec, x.n_rows(), |i| match &self.scaler {
            Some(s) => {
                let mut buf = Vec::with_capacity(x.n_cols());
                s.transform_row(x.row(i), &mut buf);
                self.state.predict(&buf)
            }
            None => self.state.predict(x.row(i)),
        });
        Ok(idx.into_iter().map(|i| self.classes[i]).collect())
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("model serializes")
    }

    pub fn from_json(s: &str) -> Result<Self, MlError> {
        #[derive(Deserialize)]
        struct Header {
            format: u32,
        }
        let h: Header = serde_json::from_str(s)?;
        if h.format != MODEL_FORMAT {
            return Err(MlError::ModelVersion(h.format));
        }
        Ok(serde_json::from_str(s)?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn algorithm_names_round_trip() {
        for a in Algorithm::ALL {
            assert_eq!(a.name().parse::<Algorithm>().unwrap(), a);
            assert_eq!(a.name().to_lowercase().parse::<Algorithm>().unwrap(), a);
        }
        assert!("svm".parse::<Algorithm>().is_err());
    }

    #[test]
    fn derived_seeds_differ() {
        assert_ne!(derive_seed(42, 0), derive_seed(42, 1));
        assert_ne!(derive_seed(42, 0), derive_seed(43, 0));
        assert_eq!(derive_seed(7, 3), derive_seed(7, 3));
    }

    #[test]
    fn partial_hyperparams_take_defaults() {
        let h: Hyperparams = serde_json::from_str(r#"{"rf": {"n_trees": 10}, "knn": {"k": 1}}"#).unwrap();
        assert_eq!(h.rf.n_trees, 10);
        assert_eq!(h.rf.max_features, forest::MaxFeatures::Sqrt);
        assert_eq!(h.knn.k, 1);
        assert_eq!(h.gb, BoostingParams::default());
    }
}

use wikiqual_core::matrix::MatrixError;
use wikiqual_core::pipeline::PipelineError;

#[derive(Debug, thiserror::Error)]
pub enum MlError {
    #[error("training data has {0} class(es); at least two are required")]
    SingleClass(usize),
    #[error("row {0:?} has no quality label")]
    Unlabeled(String),
    #[error("non-finite value in column {column:?} (row {row:?})")]
    NonFinite { row: String, column: String },
    #[error(
        "feature columns differ from the ones the model was trained on \
         (checksum {found}, expected {expected}); re-extract features with the training configuration"
    )]
    ChecksumMismatch { expected: String, found: String },
    #[error("{0} true labels but {1} predictions")]
    LengthMismatch(usize, usize),
    #[error("cannot evaluate an empty prediction list")]
    Empty,
    #[error("{folds} folds requested but the smallest class has {smallest} rows")]
    TooManyFolds { folds: usize, smallest: usize },
    #[error("at least 2 folds are required, got {0}")]
    TooFewFolds(usize),
    #[error("unknown feature group {0:?} (expected text, review or network)")]
    UnknownGroup(String),
    #[error("unknown algorithm {0:?}")]
    UnknownAlgorithm(String),
    #[error("no feature groups requested")]
    NoGroups,
    #[error("leakage check failed: {0}")]
    Leakage(String),
    #[error("unsupported model format version {0}")]
    ModelVersion(u32),
    #[error(transparent)]
    Matrix(#[from] MatrixError),
    #[error(transparent)]
    Pipeline(#[from] PipelineError),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

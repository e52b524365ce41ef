//! Feature extraction for Wikipedia article quality assessment.
//!
//! The crate turns wikitext articles, their revision histories and the
//! inter-article link graph into a dense numeric feature matrix:
//!
//! - [`corpus`] loads the input files and parses wikitext into a
//!   [`DocumentStructure`](corpus::DocumentStructure).
//! - [`textfeat`], [`stylefeat`] and [`readability`] compute the text features.
//! - [`reviewfeat`] mines revision histories, including the ProbReview score.
//! - [`netfeat`] computes PageRank and the per-node graph metrics.
//! - [`registry`] fixes the canonical column names and their order.
//! - [`pipeline`] runs everything over a corpus and builds a
//!   [`FeatureMatrix`](matrix::FeatureMatrix).
//!
//! Per-article work is data-parallel through [`par`]; with the `parallel`
//! feature disabled every loop runs sequentially and produces the same output.

pub mod corpus;
pub mod feature;
pub mod matrix;
pub mod netfeat;
pub mod par;
pub mod pipeline;
pub mod readability;
pub mod registry;
pub mod reviewfeat;
pub mod stylefeat;
pub mod synth;
pub mod textfeat;

pub use corpus::{Article, Corpus, DocumentStructure, LinkGraph, QualityClass, RevisionHistory};
pub use feature::{FeatureGroup, FeatureVector};
pub use matrix::FeatureMatrix;
pub use par::Execution;

/// Ratio with the zero-denominator sentinel: `0.0` whenever `den == 0`.
#[inline]
pub fn ratio(num: f64, den: f64) -> f64 {
    if den == 0.0 {
        0.0
    } else {
        num / den
    }
}

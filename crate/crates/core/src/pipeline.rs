//! End-to-end feature extraction over a loaded corpus.
//!
//! Extraction runs in two stages. [`extract`] computes every scalar feature
//! and a trigram profile per article; trigram columns need a fitted
//! [`TrigramSelector`] and are added by [`Extraction::matrix`]. Keeping the
//! profiles lets cross-validation refit the selector on each training fold
//! without reparsing the corpus.

use chrono::{DateTime, Utc};
use serde::{Deserialize, Serialize};

use crate::corpus::{parse_wikitext, Article, Corpus, QualityClass};
use crate::feature::FeatureVector;
use crate::matrix::FeatureMatrix;
use crate::netfeat::{graph_metrics, PageRankParams};
use crate::par::{self, Execution};
use crate::readability::{readability_features, ReadabilityCounts};
use crate::registry::{scalar_registry, SCALAR_FEATURE_COUNT};
use crate::reviewfeat::{prob_review, review_features, ProbReviewParams, PROB_REVIEW_FEATURE};
use crate::stylefeat::{
    fit_trigram_selector, pos_tag, style_scalar_features, trigram_features, StyleError, TrigramProfile,
    TrigramSelector,
};
use crate::textfeat::{length_features, structure_features};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ExtractOptions {
    /// Reference instant for article age and the recent-review window.
    pub now: DateTime<Utc>,
    pub pagerank: PageRankParams,
    pub prob_review: ProbReviewParams,
    #[serde(skip)]
    pub exec: Execution,
}

impl ExtractOptions {
    pub fn new(now: DateTime<Utc>) -> Self {
        ExtractOptions {
            now,
            pagerank: PageRankParams::default(),
            prob_review: ProbReviewParams::default(),
            exec: Execution::default(),
        }
    }
}

/// Data-quality notes for one article.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ArticleFlags {
    pub id: String,
    pub missing_history: bool,
    pub missing_graph_node: bool,
    pub missing_snapshots: bool,
    pub markup_anomalies: usize,
}

impl ArticleFlags {
    pub fn any(&self) -> bool {
        self.missing_history || self.missing_graph_node || self.missing_snapshots || self.markup_anomalies > 0
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ArticleFeatures {
    pub id: String,
    pub label: Option<QualityClass>,
    /// Values in scalar registry order.
    pub scalar: Vec<f64>,
    pub profile: TrigramProfile,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Extraction {
    pub columns: Vec<String>,
    pub rows: Vec<ArticleFeatures>,
    pub flags: Vec<ArticleFlags>,
    /// Ids of empty placeholder articles that were skipped.
    pub rejected: Vec<String>,
    pub prob_review_iterations: usize,
    pub prob_review_converged: bool,
}

/// Text features of one article: length, structure, style and readability,
/// plus its trigram profile and markup anomaly count.
pub fn text_features(article: &Article) -> (FeatureVector, TrigramProfile, usize) {
    let doc = parse_wikitext(&article.wikitext);
    let tagged = pos_tag(&doc);
    let mut fv = length_features(&doc);
    fv.extend(structure_features(&doc));
    fv.extend(style_scalar_features(&tagged));
    fv.extend(readability_features(&ReadabilityCounts::from_document(&doc)));
    (fv, TrigramProfile::from_tagged(&tagged), doc.anomaly_count)
}

pub fn extract(corpus: &Corpus, opts: &ExtractOptions) -> Extraction {
    let columns: Vec<String> = scalar_registry().into_iter().map(|s| s.name).collect();
    let (articles, rejected): (Vec<&Article>, Vec<&Article>) =
        corpus.articles.iter().partition(|a| !a.is_placeholder());
    for a in &rejected {
        log::warn!("article {:?} has empty wikitext; skipped", a.id);
    }

    let scores = prob_review(&corpus.histories, opts.prob_review);
    if !scores.converged {
        log::warn!("ProbReview stopped after {} iterations without converging", scores.iterations);
    }
    let metrics = graph_metrics(&corpus.graph, opts.pagerank, opts.exec);

    let per_article = par::map(opts.exec, &articles, |a| {
        let (mut fv, profile, anomalies) = text_features(a);
        let history = corpus.histories.get(&a.id);
        let empty = crate::corpus::RevisionHistory::new(a.id.clone(), Vec::new());
        let h = history.unwrap_or(&empty);
        if let Some(last) = h.revisions.last() {
            if last.timestamp > opts.now {
                log::warn!("article {:?} has revisions after the reference time", a.id);
            }
        }
        fv.extend(review_features(h, opts.now));
        fv.push(PROB_REVIEW_FEATURE, scores.article_quality.get(&a.id).copied().unwrap_or(0.0));
        let node = corpus.graph.index_of(&a.id);
        match node {
            Some(v) => fv.extend(metrics[v].to_features()),
            None => {
                for name in crate::netfeat::NETWORK_FEATURES {
                    fv.push(name, 0.0);
                }
            }
        }
        debug_assert_eq!(fv.len(), SCALAR_FEATURE_COUNT);
        let flags = ArticleFlags {
            id: a.id.clone(),
            missing_history: corpus.report.missing_history.contains(&a.id) || h.revisions.is_empty(),
            missing_graph_node: node.is_none() || corpus.report.missing_graph_node.contains(&a.id),
            missing_snapshots: h.snapshot_text_now.is_none() || h.snapshot_text_3mo.is_none(),
            markup_anomalies: anomalies,
        };
        let features = ArticleFeatures { id: a.id.clone(), label: a.label, scalar: fv.values().collect(), profile };
        (features, flags)
    });

    let (rows, flags): (Vec<_>, Vec<_>) = per_article.into_iter().unzip();
    for f in flags.iter().filter(|f| f.any()) {
        log::info!(
            "article {:?}: missing_history={} missing_graph_node={} missing_snapshots={} markup_anomalies={}",
            f.id,
            f.missing_history,
            f.missing_graph_node,
            f.missing_snapshots,
            f.markup_anomalies
        );
    }
    Extraction {
        columns,
        rows,
        flags,
        rejected: rejected.into_iter().map(|a| a.id.clone()).collect(),
        prob_review_iterations: scores.iterations,
        prob_review_converged: scores.converged,
    }
}

impl Extraction {
    pub fn ids(&self) -> Vec<String> {
        self.rows.iter().map(|r| r.id.clone()).collect()
    }

    pub fn labels(&self) -> Vec<Option<QualityClass>> {
        self.rows.iter().map(|r| r.label).collect()
    }

    /// The 166 scalar columns only.
    pub fn scalar_matrix(&self) -> FeatureMatrix {
        let mut m = FeatureMatrix::new(self.columns.clone());
        for r in &self.rows {
            m.ids.push(r.id.clone());
            m.values.extend_from_slice(&r.scalar);
            m.labels.push(r.label);
        }
        m
    }

    /// Fits a selector on the given rows (all rows when `None`); every row
    /// used must be labeled.
    pub fn fit_selector(&self, rows: Option<&[usize]>, m: usize, n: usize) -> Result<TrigramSelector, PipelineError> {
        let all: Vec<usize>;
        let rows = match rows {
            Some(r) => r,
            None => {
                all = (0..self.rows.len()).collect();
                &all
            }
        };
        let mut profiles = Vec::with_capacity(rows.len());
        let mut labels = Vec::with_capacity(rows.len());
        for &i in rows {
            let r = &self.rows[i];
            let label = r.label.ok_or_else(|| PipelineError::Unlabeled(r.id.clone()))?;
            profiles.push(&r.profile);
            labels.push(label);
        }
        Ok(fit_trigram_selector(&profiles, &labels, m, n)?)
    }

    /// Trigram columns for all rows under `sel`.
    pub fn trigram_matrix(&self, sel: &TrigramSelector, exec: Execution) -> FeatureMatrix {
        let columns = crate::stylefeat::trigram_feature_names(sel.m, sel.n);
        let values = par::map(exec, &self.rows, |r| trigram_features(&r.profile, sel).values().collect::<Vec<_>>());
        let mut m = FeatureMatrix::new(columns);
        for (r, v) in self.rows.iter().zip(values) {
            m.ids.push(r.id.clone());
            m.values.extend(v);
            m.labels.push(r.label);
        }
        m
    }

    /// Full matrix in registry order: scalar columns, then trigram columns.
    pub fn matrix(&self, sel: &TrigramSelector, exec: Execution) -> FeatureMatrix {
        self.scalar_matrix()
            .hconcat(&self.trigram_matrix(sel, exec))
            .expect("same rows")
    }
}

#[derive(Debug, thiserror::Error)]
pub enum PipelineError {
    #[error("article {0:?} has no quality label")]
    Unlabeled(String),
    #[error(transparent)]
    Style(#[from] StyleError),
}

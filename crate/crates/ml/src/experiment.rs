//! Experiment 1 (all feature groups) and Experiment 2 (one group at a time)
//! with CSV and aligned-text result tables.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use wikiqual_core::feature::CoarseGroup;
use wikiqual_core::Execution;

use crate::cv::{cross_validate, resubstitution, CvReport, FeatureSource};
use crate::models::{Algorithm, Hyperparams};
use crate::MlError;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentConfig {
    pub algorithms: Vec<Algorithm>,
    /// Stratified CV folds; `1` trains and scores on every row instead.
    pub folds: usize,
    pub seed: u64,
    pub params: Hyperparams,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        ExperimentConfig { algorithms: Algorithm::ALL.to_vec(), folds: 10, seed: 42, params: Hyperparams::default() }
    }
}

/// Results of every configured algorithm on one set of feature groups.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GroupResult {
    pub groups: Vec<CoarseGroup>,
    pub reports: Vec<CvReport>,
}

/// Parses group names (`text`, `review`, `network` and their short forms).
pub fn parse_groups<S: AsRef<str>>(names: &[S]) -> Result<Vec<CoarseGroup>, MlError> {
    let mut out = Vec::new();
    for n in names {
        let g = CoarseGroup::parse(n.as_ref()).ok_or_else(|| MlError::UnknownGroup(n.as_ref().to_string()))?;
        if !out.contains(&g) {
            out.push(g);
        }
    }
    if out.is_empty() {
        return Err(MlError::NoGroups);
    }
    Ok(out)
}

/// Evaluates every configured algorithm on the columns of `groups`.
pub fn run_experiment(
    source: &(impl FeatureSource + ?Sized),
    groups: &[CoarseGroup],
    cfg: &ExperimentConfig,
    exec: Execution,
) -> Result<GroupResult, MlError> {
    if groups.is_empty() {
        return Err(MlError::NoGroups);
    }
    let mut reports = Vec::with_capacity(cfg.algorithms.len());
    for &algo in &cfg.algorithms {
        let r = if cfg.folds == 1 {
            resubstitution(source, groups, algo, &cfg.params, cfg.seed, exec)?
        } else {
            cross_validate(source, groups, algo, &cfg.params, cfg.folds, cfg.seed, exec)?
        };
        log::info!(
            "{algo} on {}: accuracy {:.3} ± {:.3}, MSE {:.3} ± {:.3}",
            group_label(groups),
            r.accuracy_mean,
            r.accuracy_std,
            r.mse_mean,
            r.mse_std
        );
        reports.push(r);
    }
    Ok(GroupResult { groups: groups.to_vec(), reports })
}

/// `TF`, `RF`, `NF`, or `ALL` when every group is present.
pub fn group_label(groups: &[CoarseGroup]) -> String {
    if CoarseGroup::ALL.iter().all(|g| groups.contains(g)) {
        return "ALL".into();
    }
    groups
        .iter()
        .map(|g| match g {
            CoarseGroup::Text => "TF",
            CoarseGroup::Review => "RF",
            CoarseGroup::Network => "NF",
        })
        .collect::<Vec<_>>()
        .join("+")
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Measure {
    Accuracy,
    Mse,
}

impl Measure {
    fn pick(self, r: &CvReport) -> (f64, f64) {
        match self {
            Measure::Accuracy => (r.accuracy_mean, r.accuracy_std),
            Measure::Mse => (r.mse_mean, r.mse_std),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Measure::Accuracy => "accuracy",
            Measure::Mse => "mse",
        }
    }
}

/// Algorithms as rows, one column per group set; each cell is mean and std.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ResultsTable {
    pub title: String,
    pub measure: Measure,
    pub columns: Vec<String>,
    pub rows: Vec<(Algorithm, Vec<(f64, f64)>)>,
}

impl ResultsTable {
    /// Builds a table from group results that share the same algorithm list.
    pub fn build(title: &str, measure: Measure, results: &[GroupResult]) -> ResultsTable {
        let columns = results.iter().map(|g| group_label(&g.groups)).collect();
        let algos: Vec<Algorithm> = results.first().map(|g| g.reports.iter().map(|r| r.algorithm).collect()).unwrap_or_default();
        let rows = algos
            .iter()
            .enumerate()
            .map(|(i, &a)| (a, results.iter().map(|g| measure.pick(&g.reports[i])).collect()))
            .collect();
        ResultsTable { title: title.to_string(), measure, columns, rows }
    }

    /// Header `algorithm,<col>,<col>_std,...`.
    pub fn to_csv(&self) -> String {
        let mut s = String::from("algorithm");
        for c in &self.columns {
            let _ = write!(s, ",{c},{c}_std");
        }
        s.push('\n');
        for (a, cells) in &self.rows {
            s.push_str(a.name());
            for (m, sd) in cells {
                let _ = write!(s, ",{m},{sd}");
            }
            s.push('\n');
        }
        s
    }

    pub fn to_text(&self) -> String {
        let cells: Vec<Vec<String>> =
            self.rows.iter().map(|(_, c)| c.iter().map(|(m, sd)| format!("{m:.3} ± {sd:.3}")).collect()).collect();
        let first = self.rows.iter().map(|(a, _)| a.name().len()).chain(["algorithm".len()]).max().unwrap_or(0);
        let widths: Vec<usize> = self
            .columns
            .iter()
            .enumerate()
            .map(|(j, c)| cells.iter().map(|r| r[j].chars().count()).chain([c.len()]).max().unwrap_or(0))
            .collect();
        let mut s = format!("{}\n", self.title);
        let _ = write!(s, "{:<first$}", "algorithm");
        for (c, w) in self.columns.iter().zip(&widths) {
            let _ = write!(s, "  {c:>w$}");
        }
        s.push('\n');
        for ((a, _), row) in self.rows.iter().zip(&cells) {
            let _ = write!(s, "{:<first$}", a.name());
            for (c, w) in row.iter().zip(&widths) {
                let pad = w - c.chars().count();
                let _ = write!(s, "  {}{c}", " ".repeat(pad));
            }
            s.push('\n');
        }
        s
    }
}

/// The four result tables: Experiment 1 accuracy and MSE, then Experiment 2 accuracy and MSE.
pub fn experiment_tables(exp1: &GroupResult, exp2: &[GroupResult]) -> [ResultsTable; 4] {
    let one = std::slice::from_ref(exp1);
    [
        ResultsTable::build("Experiment 1: accuracy, all features", Measure::Accuracy, one),
        ResultsTable::build("Experiment 1: MSE, all features", Measure::Mse, one),
        ResultsTable::build("Experiment 2: accuracy per feature group", Measure::Accuracy, exp2),
        ResultsTable::build("Experiment 2: MSE per feature group", Measure::Mse, exp2),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn group_parsing() {
        assert_eq!(parse_groups(&["text", "TEXT", "network"]).unwrap(), vec![CoarseGroup::Text, CoarseGroup::Network]);
        assert!(matches!(parse_groups(&["style"]), Err(MlError::UnknownGroup(g)) if g == "style"));
        assert!(matches!(parse_groups::<&str>(&[]), Err(MlError::NoGroups)));
        assert_eq!(group_label(&CoarseGroup::ALL), "ALL");
        assert_eq!(group_label(&[CoarseGroup::Review]), "RF");
    }
}

mod common;

use chrono::{TimeZone, Utc};
use wikiqual_core::feature::CoarseGroup;
use wikiqual_core::pipeline::{extract, ExtractOptions};
use wikiqual_core::synth::{generate, SynthConfig};
use wikiqual_core::{Execution, QualityClass};
use wikiqual_ml::experiment::Measure;
use wikiqual_ml::{experiment_tables, run_experiment, Algorithm, CorpusSource, ExperimentConfig, MlError};

#[test]
fn one_row_per_class_smoke_table() {
    let rows = QualityClass::ALL.iter().map(|&c| (vec![f64::from(c.ordinal()), 1.0], c)).collect();
    let m = common::matrix(2, rows);
    let cfg = ExperimentConfig { folds: 1, params: common::quick_params(), ..ExperimentConfig::default() };
    let r = run_experiment(&m, &CoarseGroup::ALL, &cfg, Execution::Parallel).unwrap();
    assert_eq!(r.reports.len(), 8);
    let [acc, mse, ..] = experiment_tables(&r, std::slice::from_ref(&r));
    for t in [&acc, &mse] {
        assert_eq!(t.rows.len(), 8);
        assert!(t.rows.iter().all(|(_, c)| c.iter().all(|(m, s)| m.is_finite() && s.is_finite())));
    }
    assert_eq!(acc.rows.iter().map(|(a, _)| *a).collect::<Vec<_>>(), Algorithm::ALL.to_vec());
}

#[test]
fn four_tables_from_a_synthetic_corpus() {
    let now = Utc.with_ymd_and_hms(2024, 1, 1, 0, 0, 0).unwrap();
    let ex = extract(&generate(&SynthConfig::new(70, 1, now)), &ExtractOptions::new(now));
    let src = CorpusSource { extraction: &ex, m: 5, n: 5 };
    let cfg = ExperimentConfig { folds: 2, params: common::quick_params(), ..ExperimentConfig::default() };
    let exp1 = run_experiment(&src, &CoarseGroup::ALL, &cfg, Execution::Parallel).unwrap();
    let exp2: Vec<_> = CoarseGroup::ALL
        .iter()
        .map(|&g| run_experiment(&src, &[g], &cfg, Execution::Parallel).unwrap())
        .collect();
    let tables = experiment_tables(&exp1, &exp2);
    assert_eq!(tables[0].columns, vec!["ALL"]);
    assert_eq!(tables[2].columns, vec!["TF", "RF", "NF"]);
    assert_eq!([tables[0].measure, tables[1].measure, tables[2].measure, tables[3].measure], [
        Measure::Accuracy,
        Measure::Mse,
        Measure::Accuracy,
        Measure::Mse
    ]);
    for t in &tables {
        assert_eq!(t.rows.len(), 8);
        for (_, cells) in &t.rows {
            for (m, _) in cells {
                match t.measure {
                    Measure::Accuracy => assert!((0.0..=1.0).contains(m)),
                    Measure::Mse => assert!((0.0..=36.0).contains(m)),
                }
            }
        }
        let csv = t.to_csv();
        assert_eq!(csv.lines().count(), 9);
        let text = t.to_text();
        assert_eq!(text.lines().count(), 10);
        let widths: Vec<usize> = text.lines().skip(1).map(|l| l.chars().count()).collect();
        assert!(widths.windows(2).all(|w| w[0] == w[1]), "{text}");
    }
    assert!(tables[2].to_csv().starts_with("algorithm,TF,TF_std,RF,RF_std,NF,NF_std\n"));
}

#[test]
fn empty_group_list_is_rejected() {
    let m = common::noise(14, 2, 1);
    let cfg = ExperimentConfig::default();
    assert!(matches!(run_experiment(&m, &[], &cfg, Execution::Sequential), Err(MlError::NoGroups)));
}

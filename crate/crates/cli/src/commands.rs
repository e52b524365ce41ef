//! Subcommand implementations.

use std::fs;
use std::io::Write as _;
use std::path::Path;

use anyhow::{anyhow, Context};
use serde_json::json;
use wikiqual_core::corpus::{load_articles, load_corpus, load_graph, write_corpus, LoadReport};
use wikiqual_core::netfeat::{graph_metrics, write_metrics_tsv};
use wikiqual_core::pipeline::{extract, text_features, ExtractOptions, Extraction};
use wikiqual_core::registry::columns_in_groups;
use wikiqual_core::stylefeat::{fit_trigram_selector, TrigramSelector};
use wikiqual_core::synth::{generate, SynthConfig};
use wikiqual_core::{par, FeatureMatrix};
use wikiqual_ml::experiment::group_label;
use wikiqual_ml::{
    evaluate, experiment_tables, parse_groups, run_experiment, train, Algorithm, CorpusSource, ExperimentConfig,
    TrainedModel,
};

use crate::config::RunConfig;
use crate::exit::{usage, Failure};

pub fn dispatch(cfg: &RunConfig) -> Result<(), Failure> {
    match cfg.command.as_deref() {
        Some("extract") => cmd_extract(cfg),
        Some("fit-selector") => cmd_fit_selector(cfg),
        Some("train") => cmd_train(cfg),
        Some("evaluate") => cmd_evaluate(cfg),
        Some("experiment") => cmd_experiment(cfg),
        Some("predict") => cmd_predict(cfg),
        Some("graph-metrics") => cmd_graph_metrics(cfg),
        Some("synth") => cmd_synth(cfg),
        other => Err(usage(format!("unknown command {other:?}"))),
    }
}

fn write_file(path: &Path, text: impl AsRef<[u8]>) -> Result<(), Failure> {
    fs::write(path, text).with_context(|| format!("writing {}", path.display())).map_err(Failure::data)
}

fn read_file(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).with_context(|| format!("reading {}", path.display())).map_err(Failure::data)
}

fn create_dir(dir: &Path) -> Result<(), Failure> {
    fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display())).map_err(Failure::data)
}

fn required<'a, T>(value: &'a Option<T>, flag: &str) -> Result<&'a T, Failure> {
    value.as_ref().ok_or_else(|| usage(format!("missing --{flag}")))
}

fn load_extraction(cfg: &RunConfig) -> Result<Extraction, Failure> {
    let now = cfg.require_now()?;
    let paths = cfg.corpus.resolve()?;
    let corpus = load_corpus(&paths)?;
    let opts = ExtractOptions { now, pagerank: cfg.pagerank, prob_review: cfg.prob_review, exec: cfg.execution };
    let ex = extract(&corpus, &opts);
    log::info!(
        "extracted {} articles ({} placeholders skipped, {} flagged)",
        ex.rows.len(),
        ex.rejected.len(),
        ex.flags.iter().filter(|f| f.any()).count()
    );
    Ok(ex)
}

fn labeled_rows(ex: &Extraction) -> Vec<usize> {
    (0..ex.rows.len()).filter(|&i| ex.rows[i].label.is_some()).collect()
}

fn load_selector(path: &Path) -> Result<TrigramSelector, Failure> {
    TrigramSelector::from_json(&read_file(path)?)
        .with_context(|| format!("parsing selector {}", path.display()))
        .map_err(Failure::data)
}

fn read_matrix(path: &Path) -> Result<FeatureMatrix, Failure> {
    Ok(FeatureMatrix::read_csv_file(path)?)
}

fn load_model(path: &Path) -> Result<TrainedModel, Failure> {
    TrainedModel::from_json(&read_file(path)?).map_err(|e| {
        let f = Failure::from(e);
        Failure { error: f.error.context(format!("loading model {}", path.display())), ..f }
    })
}

fn cmd_extract(cfg: &RunConfig) -> Result<(), Failure> {
    let out = cfg.require_out()?;
    let ex = load_extraction(cfg)?;
    let selector = match &cfg.selector {
        Some(path) => load_selector(path)?,
        None => {
            let rows = labeled_rows(&ex);
            if rows.is_empty() {
                return Err(Failure::data(anyhow!("no labeled articles to fit the trigram selector on; pass --selector")));
            }
            ex.fit_selector(Some(&rows), cfg.m, cfg.n).map_err(Failure::data)?
        }
    };
    let matrix = ex.matrix(&selector, cfg.execution);
    create_dir(out)?;
    matrix.write_csv_file(&out.join("features.csv"))?;
    write_file(&out.join("selector.json"), selector.to_json())?;
    let mut flags = String::new();
    for f in ex.flags.iter().filter(|f| f.any()) {
        flags.push_str(&serde_json::to_string(f).expect("flags serialize"));
        flags.push('\n');
    }
    write_file(&out.join("flags.jsonl"), flags)?;
    cfg.write_beside(out)?;
    println!("{} rows x {} columns -> {}", matrix.n_rows(), matrix.n_cols(), out.join("features.csv").display());
    Ok(())
}

fn cmd_fit_selector(cfg: &RunConfig) -> Result<(), Failure> {
    let out = cfg.require_out()?;
    let paths = cfg.corpus.resolve()?;
    let articles = load_articles(&paths.articles)?;
    let labeled: Vec<_> = articles.iter().filter(|a| a.label.is_some() && !a.is_placeholder()).collect();
    if labeled.is_empty() {
        return Err(Failure::data(anyhow!("no labeled articles in {}", paths.articles.display())));
    }
    let profiles = par::map(cfg.execution, &labeled, |a| text_features(a).1);
    let labels: Vec<_> = labeled.iter().map(|a| a.label.expect("filtered")).collect();
    let sel = fit_trigram_selector(&profiles.iter().collect::<Vec<_>>(), &labels, cfg.m, cfg.n).map_err(Failure::data)?;
    if let Some(dir) = out.parent().filter(|d| !d.as_os_str().is_empty()) {
        create_dir(dir)?;
    }
    write_file(out, sel.to_json())?;
    cfg.write_beside(out)?;
    println!(
        "{} character and {} POS trigrams from {} articles -> {}",
        sel.char_trigrams.len(),
        sel.pos_trigrams.len(),
        labeled.len(),
        out.display()
    );
    Ok(())
}

fn restrict_groups(m: FeatureMatrix, cfg: &RunConfig) -> Result<FeatureMatrix, Failure> {
    let groups = parse_groups(&cfg.groups)?;
    let names = columns_in_groups(&m.columns, &groups);
    if names.len() == m.n_cols() {
        return Ok(m);
    }
    Ok(m.select_columns(&names)?)
}

fn cmd_train(cfg: &RunConfig) -> Result<(), Failure> {
    let out = cfg.require_out()?;
    let algo: Algorithm = cfg.algorithm.parse()?;
    let matrix = restrict_groups(read_matrix(required(&cfg.features, "features")?)?, cfg)?;
    let model = train(&matrix, algo, &cfg.hyperparams, cfg.seed, cfg.execution)?;
    if let Some(dir) = out.parent().filter(|d| !d.as_os_str().is_empty()) {
        create_dir(dir)?;
    }
    write_file(out, model.to_json())?;
    cfg.write_beside(out)?;
    println!("{algo} trained on {} rows x {} columns -> {}", matrix.n_rows(), matrix.n_cols(), out.display());
    Ok(())
}

fn cmd_evaluate(cfg: &RunConfig) -> Result<(), Failure> {
    let model = load_model(required(&cfg.model, "model")?)?;
    let matrix = read_matrix(required(&cfg.features, "features")?)?;
    let matrix = restrict_like(matrix, &model)?;
    let truth = matrix.require_labels().map_err(|id| Failure::data(anyhow!("row {id:?} has no label")))?;
    let pred = model.predict(&matrix, cfg.execution)?;
    let m = evaluate(&truth, &pred)?;
    let report = json!({ "algorithm": model.algorithm, "rows": truth.len(), "accuracy": m.accuracy, "mse": m.mse });
    println!("{} on {} rows: accuracy {:.4}, MSE {:.4}", model.algorithm, truth.len(), m.accuracy, m.mse);
    if let Some(out) = &cfg.out {
        write_file(out, format!("{report:#}\n"))?;
        cfg.write_beside(out)?;
    }
    Ok(())
}

/// Keeps the model's columns when the matrix is a superset of them, so a
/// group-restricted model can score a full extraction.
fn restrict_like(matrix: FeatureMatrix, model: &TrainedModel) -> Result<FeatureMatrix, Failure> {
    if matrix.columns == model.columns || matrix.n_rows() == 0 {
        return Ok(matrix);
    }
    if model.columns.iter().all(|c| matrix.column_index(c).is_some()) {
        let names: Vec<&str> = model.columns.iter().map(String::as_str).collect();
        return Ok(matrix.select_columns(&names)?);
    }
    Ok(matrix)
}

fn cmd_experiment(cfg: &RunConfig) -> Result<(), Failure> {
    let out = cfg.require_out()?;
    let algorithms = cfg.algorithms.iter().map(|a| a.parse()).collect::<Result<Vec<Algorithm>, _>>()?;
    if algorithms.is_empty() {
        return Err(usage("no algorithms requested".into()));
    }
    let groups = parse_groups(&cfg.groups)?;
    let ecfg = ExperimentConfig { algorithms, folds: cfg.folds, seed: cfg.seed, params: cfg.hyperparams.clone() };
    let all = wikiqual_core::feature::CoarseGroup::ALL;
    let (exp1, exp2) = match &cfg.features {
        Some(path) => {
            if !cfg.corpus.is_empty() {
                return Err(usage("pass either --features or corpus inputs, not both".into()));
            }
            let matrix = read_matrix(path)?;
            if matrix.columns.iter().any(|c| c.starts_with("char_trigram_") || c.starts_with("pos_trigram_")) {
                log::warn!("trigram columns in {} were selected outside the CV folds", path.display());
            }
            let exp1 = run_experiment(&matrix, &all, &ecfg, cfg.execution)?;
            let exp2 = groups.iter().map(|&g| run_experiment(&matrix, &[g], &ecfg, cfg.execution)).collect::<Result<Vec<_>, _>>()?;
            (exp1, exp2)
        }
        None => {
            let ex = load_extraction(cfg)?;
            let src = CorpusSource { extraction: &ex, m: cfg.m, n: cfg.n };
            let exp1 = run_experiment(&src, &all, &ecfg, cfg.execution)?;
            let exp2 = groups.iter().map(|&g| run_experiment(&src, &[g], &ecfg, cfg.execution)).collect::<Result<Vec<_>, _>>()?;
            (exp1, exp2)
        }
    };
    create_dir(out)?;
    let tables = experiment_tables(&exp1, &exp2);
    let names = ["exp1_accuracy", "exp1_mse", "exp2_accuracy", "exp2_mse"];
    let mut text = String::new();
    for (t, name) in tables.iter().zip(names) {
        write_file(&out.join(format!("{name}.csv")), t.to_csv())?;
        write_file(&out.join(format!("{name}.txt")), t.to_text())?;
        text.push_str(&t.to_text());
        text.push('\n');
    }
    let results = json!({
        "experiment1": exp1,
        "experiment2": exp2,
        "experiment2_columns": exp2.iter().map(|g| group_label(&g.groups)).collect::<Vec<_>>(),
    });
    write_file(&out.join("results.json"), format!("{results:#}\n"))?;
    cfg.write_beside(out)?;
    print!("{text}");
    Ok(())
}

fn cmd_predict(cfg: &RunConfig) -> Result<(), Failure> {
    let model = load_model(required(&cfg.model, "model")?)?;
    let matrix = restrict_like(read_matrix(required(&cfg.features, "features")?)?, &model)?;
    let pred = model.predict(&matrix, cfg.execution)?;
    let mut lines = String::new();
    let stdout = std::io::stdout();
    let mut w = stdout.lock();
    for (id, label) in matrix.ids.iter().zip(&pred) {
        let _ = writeln!(w, "{id}\t{label}");
        lines.push_str(&json!({ "id": id, "label": label.label() }).to_string());
        lines.push('\n');
    }
    if let Some(out) = &cfg.out {
        write_file(out, lines)?;
        cfg.write_beside(out)?;
    }
    Ok(())
}

fn cmd_graph_metrics(cfg: &RunConfig) -> Result<(), Failure> {
    let graph_path = required(&cfg.corpus.graph, "graph")?;
    let mut report = LoadReport::default();
    let g = load_graph(graph_path, cfg.corpus.red_links.as_deref(), &mut report)?;
    let metrics = graph_metrics(&g, cfg.pagerank, cfg.execution);
    let mut buf = Vec::new();
    write_metrics_tsv(&g, &metrics, &mut buf).map_err(Failure::internal)?;
    match &cfg.out {
        Some(out) => {
            write_file(out, &buf)?;
            cfg.write_beside(out)?;
        }
        None => {
            let _ = std::io::stdout().write_all(&buf);
        }
    }
    Ok(())
}

fn cmd_synth(cfg: &RunConfig) -> Result<(), Failure> {
    let out = cfg.require_out()?;
    let mut sc = SynthConfig::new(cfg.synth.articles, cfg.seed, cfg.require_now()?);
    sc.noise = cfg.synth.noise;
    let corpus = generate(&sc);
    write_corpus(&corpus, out)?;
    cfg.write_beside(out)?;
    println!("{} synthetic articles -> {}", corpus.articles.len(), out.display());
    Ok(())
}

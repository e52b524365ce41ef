//! `wikiqual`: extract article quality features, train classifiers and run
//! the evaluation experiments.

mod commands;
mod config;
mod exit;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use config::{CorpusInputs, RunConfig};
use exit::Failure;

#[derive(Debug, Parser)]
#[command(name = "wikiqual", version, about = "Wikipedia article quality features and classifiers")]
struct Cli {
    /// TOML run configuration; flags override its values.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Worker threads (0 = all cores).
    #[arg(long, global = true)]
    jobs: Option<usize>,
    /// Run every data-parallel loop on the calling thread.
    #[arg(long, global = true)]
    sequential: bool,
    /// More log output (repeatable).
    #[arg(short, long, global = true, action = clap::ArgAction::Count)]
    verbose: u8,
    /// Only log errors.
    #[arg(short, long, global = true)]
    quiet: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Default, Args)]
struct CorpusArgs {
    /// Directory holding articles.jsonl, revisions.jsonl, graph.tsv and the optional files.
    #[arg(long)]
    corpus: Option<PathBuf>,
    #[arg(long)]
    articles: Option<PathBuf>,
    #[arg(long)]
    revisions: Option<PathBuf>,
    #[arg(long)]
    graph: Option<PathBuf>,
    #[arg(long)]
    discussions: Option<PathBuf>,
    #[arg(long)]
    snapshots: Option<PathBuf>,
    #[arg(long)]
    red_links: Option<PathBuf>,
}

impl CorpusArgs {
    fn into_inputs(self) -> CorpusInputs {
        CorpusInputs {
            dir: self.corpus,
            articles: self.articles,
            revisions: self.revisions,
            graph: self.graph,
            discussions: self.discussions,
            snapshots: self.snapshots,
            red_links: self.red_links,
        }
    }
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Extract the feature matrix of a corpus.
    Extract {
        #[command(flatten)]
        corpus: CorpusArgs,
        /// Reference time for article age and recent-review windows (RFC 3339).
        #[arg(long)]
        now: Option<String>,
        /// Character trigrams to select.
        #[arg(long)]
        m: Option<usize>,
        /// POS trigrams to select.
        #[arg(long)]
        n: Option<usize>,
        /// Use this selector instead of fitting one on the labeled articles.
        #[arg(long)]
        selector: Option<PathBuf>,
        /// Output directory.
        #[arg(long, short)]
        out: Option<PathBuf>,
    },
    /// Fit the χ² trigram selector on the labeled articles.
    FitSelector {
        #[command(flatten)]
        corpus: CorpusArgs,
        #[arg(long)]
        m: Option<usize>,
        #[arg(long)]
        n: Option<usize>,
        /// Output JSON file.
        #[arg(long, short)]
        out: Option<PathBuf>,
    },
    /// Train one classifier on a feature matrix.
    Train {
        #[arg(long)]
        features: Option<PathBuf>,
        /// DT, KNN, LR, NB, RF, SVC, NN or GB.
        #[arg(long)]
        algorithm: Option<String>,
        /// Restrict to these feature groups (text, review, network).
        #[arg(long, value_delimiter = ',')]
        groups: Option<Vec<String>>,
        #[arg(long)]
        seed: Option<u64>,
        /// Output model file (JSON).
        #[arg(long, short)]
        out: Option<PathBuf>,
    },
    /// Score a trained model on a labeled feature matrix.
    Evaluate {
        #[arg(long)]
        model: Option<PathBuf>,
        #[arg(long)]
        features: Option<PathBuf>,
        /// Also write the metrics as JSON here.
        #[arg(long, short)]
        out: Option<PathBuf>,
    },
    /// Run Experiment 1 (all features) and Experiment 2 (one group at a time).
    Experiment {
        #[command(flatten)]
        corpus: CorpusArgs,
        /// Use a precomputed matrix instead of a corpus (trigram columns are then not refitted per fold).
        #[arg(long)]
        features: Option<PathBuf>,
        #[arg(long)]
        now: Option<String>,
        #[arg(long)]
        m: Option<usize>,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long, value_delimiter = ',')]
        algorithms: Option<Vec<String>>,
        /// Groups evaluated one at a time in Experiment 2.
        #[arg(long, value_delimiter = ',')]
        groups: Option<Vec<String>>,
        /// Stratified CV folds; 1 trains and scores on all rows.
        #[arg(long)]
        folds: Option<usize>,
        #[arg(long)]
        seed: Option<u64>,
        /// Output directory.
        #[arg(long, short)]
        out: Option<PathBuf>,
    },
    /// Predict quality classes for the rows of a feature matrix.
    Predict {
        #[arg(long)]
        model: Option<PathBuf>,
        #[arg(long)]
        features: Option<PathBuf>,
        /// Write predictions as JSON Lines here.
        #[arg(long, short)]
        out: Option<PathBuf>,
    },
    /// Compute per-node graph metrics for a link graph.
    GraphMetrics {
        #[arg(long)]
        graph: Option<PathBuf>,
        #[arg(long)]
        red_links: Option<PathBuf>,
        #[arg(long)]
        damping: Option<f64>,
        /// Output TSV file (stdout when absent).
        #[arg(long, short)]
        out: Option<PathBuf>,
    },
    /// Write a synthetic labeled corpus for benchmarking and demos.
    Synth {
        #[arg(long)]
        articles: Option<usize>,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        now: Option<String>,
        #[arg(long)]
        noise: Option<f64>,
        /// Output directory.
        #[arg(long, short)]
        out: Option<PathBuf>,
    },
}

fn set<T>(slot: &mut T, value: Option<T>) {
    if let Some(v) = value {
        *slot = v;
    }
}

fn set_opt<T>(slot: &mut Option<T>, value: Option<T>) {
    if value.is_some() {
        *slot = value;
    }
}

fn run(cli: Cli) -> Result<(), Failure> {
    let mut cfg = match &cli.config {
        Some(path) => RunConfig::load(path)?,
        None => RunConfig::default(),
    };
    set(&mut cfg.jobs, cli.jobs);
    if cli.sequential {
        cfg.execution = wikiqual_core::Execution::Sequential;
    }
    let command = match cli.command {
        Command::Extract { corpus, now, m, n, selector, out } => {
            cfg.corpus.merge(corpus.into_inputs());
            set_opt(&mut cfg.now, now.as_deref().map(config::parse_now).transpose()?);
            set(&mut cfg.m, m);
            set(&mut cfg.n, n);
            set_opt(&mut cfg.selector, selector);
            set_opt(&mut cfg.out, out);
            "extract"
        }
        Command::FitSelector { corpus, m, n, out } => {
            cfg.corpus.merge(corpus.into_inputs());
            set(&mut cfg.m, m);
            set(&mut cfg.n, n);
            set_opt(&mut cfg.out, out);
            "fit-selector"
        }
        Command::Train { features, algorithm, groups, seed, out } => {
            set_opt(&mut cfg.features, features);
            set(&mut cfg.algorithm, algorithm);
            set(&mut cfg.groups, groups);
            set(&mut cfg.seed, seed);
            set_opt(&mut cfg.out, out);
            "train"
        }
        Command::Evaluate { model, features, out } => {
            set_opt(&mut cfg.model, model);
            set_opt(&mut cfg.features, features);
            set_opt(&mut cfg.out, out);
            "evaluate"
        }
        Command::Experiment { corpus, features, now, m, n, algorithms, groups, folds, seed, out } => {
            cfg.corpus.merge(corpus.into_inputs());
            set_opt(&mut cfg.features, features);
            set_opt(&mut cfg.now, now.as_deref().map(config::parse_now).transpose()?);
            set(&mut cfg.m, m);
            set(&mut cfg.n, n);
            set(&mut cfg.algorithms, algorithms);
            set(&mut cfg.groups, groups);
            set(&mut cfg.folds, folds);
            set(&mut cfg.seed, seed);
            set_opt(&mut cfg.out, out);
            "experiment"
        }
        Command::Predict { model, features, out } => {
            set_opt(&mut cfg.model, model);
            set_opt(&mut cfg.features, features);
            set_opt(&mut cfg.out, out);
            "predict"
        }
        Command::GraphMetrics { graph, red_links, damping, out } => {
            set_opt(&mut cfg.corpus.graph, graph);
            set_opt(&mut cfg.corpus.red_links, red_links);
            set(&mut cfg.pagerank.damping, damping);
            set_opt(&mut cfg.out, out);
            "graph-metrics"
        }
        Command::Synth { articles, seed, now, noise, out } => {
            set(&mut cfg.synth.articles, articles);
            set(&mut cfg.seed, seed);
            set_opt(&mut cfg.now, now.as_deref().map(config::parse_now).transpose()?);
            set(&mut cfg.synth.noise, noise);
            set_opt(&mut cfg.out, out);
            "synth"
        }
    };
    cfg.command = Some(command.to_string());
    let jobs = cfg.jobs;
    wikiqual_core::par::with_jobs(jobs, move || commands::dispatch(&cfg))
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    let level = if cli.quiet {
        "error"
    } else {
        match cli.verbose {
            0 => "warn",
            1 => "info",
            _ => "debug",
        }
    };
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or(level)).init();
    match std::panic::catch_unwind(|| run(cli)) {
        Ok(Ok(())) => ExitCode::SUCCESS,
        Ok(Err(f)) => {
            eprintln!("error: {f}");
            f.exit_code()
        }
        Err(_) => {
            eprintln!("error: internal failure");
            ExitCode::from(exit::Code::Internal as u8)
        }
    }
}

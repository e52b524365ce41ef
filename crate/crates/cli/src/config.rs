//! Run configuration: a TOML file merged with command-line flags.

use std::fs;
use std::path::{Path, PathBuf};

use anyhow::Context;
use chrono::{DateTime, Utc};
use serde::{Deserialize, Serialize};
use wikiqual_core::corpus::CorpusPaths;
use wikiqual_core::netfeat::PageRankParams;
use wikiqual_core::reviewfeat::ProbReviewParams;
use wikiqual_core::Execution;
use wikiqual_ml::Hyperparams;

use crate::exit::{usage, Failure};

/// Corpus file locations; `dir` supplies any file not named explicitly.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct CorpusInputs {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub dir: Option<PathBuf>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub articles: Option<PathBuf>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub revisions: Option<PathBuf>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub graph: Option<PathBuf>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub discussions: Option<PathBuf>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub snapshots: Option<PathBuf>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub red_links: Option<PathBuf>,
}

impl CorpusInputs {
    pub fn merge(&mut self, other: CorpusInputs) {
        let CorpusInputs { dir, articles, revisions, graph, discussions, snapshots, red_links } = other;
        macro_rules! take {
            ($($f:ident),*) => { $( if $f.is_some() { self.$f = $f; } )* };
        }
        take!(dir, articles, revisions, graph, discussions, snapshots, red_links);
    }

    /// Required files must resolve; optional ones are used when present.
    pub fn resolve(&self) -> Result<CorpusPaths, Failure> {
        let from_dir = |name: &str| self.dir.as_ref().map(|d| d.join(name));
        let optional = |given: &Option<PathBuf>, name: &str| {
            given.clone().or_else(|| from_dir(name).filter(|p| p.exists()))
        };
        let required = |given: &Option<PathBuf>, name: &str, flag: &str| {
            given
                .clone()
                .or_else(|| from_dir(name))
                .ok_or_else(|| usage(format!("no {name} file: pass --{flag} or --corpus DIR")))
        };
        Ok(CorpusPaths {
            articles: required(&self.articles, "articles.jsonl", "articles")?,
            revisions: required(&self.revisions, "revisions.jsonl", "revisions")?,
            graph: required(&self.graph, "graph.tsv", "graph")?,
            discussions: optional(&self.discussions, "discussions.jsonl"),
            snapshots: optional(&self.snapshots, "snapshots.jsonl"),
            red_links: optional(&self.red_links, "red_links.jsonl"),
        })
    }

    pub fn is_empty(&self) -> bool {
        *self == CorpusInputs::default()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SynthSettings {
    pub articles: usize,
    pub noise: f64,
}

impl Default for SynthSettings {
    fn default() -> Self {
        SynthSettings { articles: 2800, noise: 0.25 }
    }
}

/// Everything a command needs; written back out as `*.run_config.toml`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RunConfig {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub command: Option<String>,
    /// Reference instant for review features (RFC 3339).
    #[serde(skip_serializing_if = "Option::is_none")]
    pub now: Option<DateTime<Utc>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub features: Option<PathBuf>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub model: Option<PathBuf>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub selector: Option<PathBuf>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub out: Option<PathBuf>,
    /// Selected character and POS trigrams.
    pub m: usize,
    pub n: usize,
    /// Feature groups: `text`, `review`, `network`.
    pub groups: Vec<String>,
    pub algorithm: String,
    pub algorithms: Vec<String>,
    pub folds: usize,
    pub seed: u64,
    /// Worker threads, `0` for all cores.
    pub jobs: usize,
    pub execution: Execution,
    pub corpus: CorpusInputs,
    pub pagerank: PageRankParams,
    pub prob_review: ProbReviewParams,
    pub synth: SynthSettings,
    pub hyperparams: Hyperparams,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            command: None,
            now: None,
            features: None,
            model: None,
            selector: None,
            out: None,
            m: 50,
            n: 50,
            groups: vec!["text".into(), "review".into(), "network".into()],
            algorithm: "GB".into(),
            algorithms: wikiqual_ml::Algorithm::ALL.iter().map(|a| a.name().to_string()).collect(),
            folds: 10,
            seed: 42,
            jobs: 0,
            execution: Execution::default(),
            corpus: CorpusInputs::default(),
            pagerank: PageRankParams::default(),
            prob_review: ProbReviewParams::default(),
            synth: SynthSettings::default(),
            hyperparams: Hyperparams::default(),
        }
    }
}

impl RunConfig {
    pub fn load(path: &Path) -> Result<RunConfig, Failure> {
        let text = fs::read_to_string(path)
            .with_context(|| format!("reading config {}", path.display()))
            .map_err(Failure::usage)?;
        toml::from_str(&text)
            .with_context(|| format!("parsing config {}", path.display()))
            .map_err(Failure::usage)
    }

    pub fn to_toml(&self) -> String {
        toml::to_string(self).expect("config serializes")
    }

    pub fn require_now(&self) -> Result<DateTime<Utc>, Failure> {
        self.now.ok_or_else(|| {
            usage("a reference time is required: pass --now (RFC 3339, e.g. 2024-01-01T00:00:00Z)".to_string())
        })
    }

    pub fn require_out(&self) -> Result<&Path, Failure> {
        self.out.as_deref().ok_or_else(|| usage("an output location is required: pass --out".to_string()))
    }

    /// Writes the resolved config next to `output`: inside it when it is a
    /// directory, otherwise as `<stem>.run_config.toml`.
    pub fn write_beside(&self, output: &Path) -> Result<PathBuf, Failure> {
        let path = if output.is_dir() {
            output.join("run_config.toml")
        } else {
            let stem = output.file_stem().and_then(|s| s.to_str()).unwrap_or("output");
            output.with_file_name(format!("{stem}.run_config.toml"))
        };
        fs::write(&path, self.to_toml())
            .with_context(|| format!("writing {}", path.display()))
            .map_err(Failure::data)?;
        Ok(path)
    }
}

pub fn parse_now(s: &str) -> Result<DateTime<Utc>, Failure> {
    DateTime::parse_from_rfc3339(s)
        .map(|t| t.with_timezone(&Utc))
        .map_err(|e| usage(format!("invalid --now {s:?}: {e}")))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn partial_file_takes_defaults() {
        let c: RunConfig = toml::from_str(
            "seed = 7\nnow = \"2024-01-01T00:00:00Z\"\n[hyperparams.rf]\nn_trees = 10\n[pagerank]\ndamping = 0.9\n",
        )
        .unwrap();
        assert_eq!(c.seed, 7);
        assert_eq!(c.folds, 10);
        assert_eq!(c.hyperparams.rf.n_trees, 10);
        assert_eq!(c.pagerank.damping, 0.9);
        assert_eq!(c.pagerank.max_iter, PageRankParams::default().max_iter);
        let back: RunConfig = toml::from_str(&c.to_toml()).unwrap();
        assert_eq!(back, c);
    }

    #[test]
    fn unknown_keys_are_rejected() {
        assert!(toml::from_str::<RunConfig>("sede = 7").is_err());
    }

    #[test]
    fn corpus_dir_fills_paths() {
        let inputs = CorpusInputs { dir: Some("/data".into()), graph: Some("/g.tsv".into()), ..Default::default() };
        let p = inputs.resolve().unwrap();
        assert_eq!(p.articles, PathBuf::from("/data/articles.jsonl"));
        assert_eq!(p.graph, PathBuf::from("/g.tsv"));
        assert!(CorpusInputs::default().resolve().is_err());
    }
}

use std::collections::{BTreeMap, HashMap, HashSet};
use std::fs;
use std::path::{Path, PathBuf};

use chrono::{DateTime, Utc};
use serde::{Deserialize, Serialize};
use serde_json::{Map, Value};

use super::graph::{EdgeOutcome, LinkGraph};
use super::{Article, Corpus, CorpusError, LoadReport, QualityClass, Revision, RevisionHistory, UserKind};

/// Locations of the corpus files. Sidecars are optional.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct CorpusPaths {
    pub articles: PathBuf,
    pub revisions: PathBuf,
    pub graph: PathBuf,
    #[serde(default)]
    pub discussions: Option<PathBuf>,
    #[serde(default)]
    pub snapshots: Option<PathBuf>,
    #[serde(default)]
    pub red_links: Option<PathBuf>,
}

fn read(path: &Path) -> Result<String, CorpusError> {
    fs::read_to_string(path).map_err(|source| CorpusError::Io { path: path.to_path_buf(), source })
}

struct Record<'a> {
    path: &'a Path,
    line: usize,
    obj: Map<String, Value>,
}

impl Record<'_> {
    fn err(&self, field: &str, message: impl Into<String>) -> CorpusError {
        CorpusError::Malformed {
            path: self.path.to_path_buf(),
            line: self.line,
            field: field.to_string(),
            message: message.into(),
        }
    }

    fn str(&self, field: &str) -> Result<String, CorpusError> {
        match self.obj.get(field) {
            Some(Value::String(s)) => Ok(s.clone()),
            Some(Value::Number(n)) => Ok(n.to_string()),
            Some(_) => Err(self.err(field, "expected a string")),
            None => Err(self.err(field, "missing")),
        }
    }

    fn opt_str(&self, field: &str) -> Result<Option<String>, CorpusError> {
        match self.obj.get(field) {
            None | Some(Value::Null) => Ok(None),
            Some(Value::String(s)) => Ok(Some(s.clone())),
            Some(_) => Err(self.err(field, "expected a string or null")),
        }
    }

    fn uint(&self, field: &str) -> Result<u64, CorpusError> {
        match self.obj.get(field) {
            Some(v) => v
                .as_u64()
                .ok_or_else(|| self.err(field, "expected a nonnegative integer")),
            None => Err(self.err(field, "missing")),
        }
    }

    fn uint_or_zero(&self, field: &str) -> Result<u64, CorpusError> {
        match self.obj.get(field) {
            None | Some(Value::Null) => Ok(0),
            Some(_) => self.uint(field),
        }
    }

    fn bool(&self, field: &str) -> Result<bool, CorpusError> {
        match self.obj.get(field) {
            Some(Value::Bool(b)) => Ok(*b),
            Some(_) => Err(self.err(field, "expected a boolean")),
            None => Err(self.err(field, "missing")),
        }
    }
}

/// Parses a JSON Lines file into objects, skipping blank lines.
fn json_lines(path: &Path) -> Result<Vec<Record<'_>>, CorpusError> {
    let text = read(path)?;
    let mut out = Vec::new();
    for (i, line) in text.lines().enumerate() {
        if line.trim().is_empty() {
            continue;
        }
        let value: Value = serde_json::from_str(line).map_err(|e| CorpusError::Malformed {
            path: path.to_path_buf(),
            line: i + 1,
            field: "<record>".into(),
            message: e.to_string(),
        })?;
        let Value::Object(obj) = value else {
            return Err(CorpusError::Malformed {
                path: path.to_path_buf(),
                line: i + 1,
                field: "<record>".into(),
                message: "expected a JSON object".into(),
            });
        };
        out.push(Record { path, line: i + 1, obj });
    }
    Ok(out)
}

pub fn load_articles(path: &Path) -> Result<Vec<Article>, CorpusError> {
    let mut seen = HashSet::new();
    let mut articles = Vec::new();
    for rec in json_lines(path)? {
        let id = rec.str("id")?;
        if !seen.insert(id.clone()) {
            return Err(CorpusError::DuplicateId { path: path.to_path_buf(), line: rec.line, id });
        }
        let label = match rec.opt_str("label")? {
            None => None,
            Some(s) if s.trim().is_empty() => None,
            Some(s) => Some(s.parse::<QualityClass>().map_err(|e| rec.err("label", e.to_string()))?),
        };
        articles.push(Article {
            title: rec.opt_str("title")?.unwrap_or_default(),
            wikitext: rec.str("wikitext")?,
            label,
            language_version_count: rec.uint_or_zero("translations")?,
            raw_link_count: rec.uint_or_zero("link_count")?,
            id,
        });
    }
    Ok(articles)
}

fn parse_time(rec: &Record<'_>, field: &str) -> Result<DateTime<Utc>, CorpusError> {
    let s = rec.str(field)?;
    DateTime::parse_from_rfc3339(&s)
        .map(|t| t.with_timezone(&Utc))
        .map_err(|e| rec.err(field, format!("not RFC 3339: {e}")))
}

/// Loads revisions (and the optional sidecars), grouped by article id.
pub fn load_revisions(
    revisions: &Path,
    discussions: Option<&Path>,
    snapshots: Option<&Path>,
) -> Result<BTreeMap<String, RevisionHistory>, CorpusError> {
    let mut grouped: BTreeMap<String, Vec<Revision>> = BTreeMap::new();
    for rec in json_lines(revisions)? {
        let article_id = rec.str("article_id")?;
        let rev = Revision {
            revision_id: rec.str("revision_id")?,
            timestamp: parse_time(&rec, "timestamp")?,
            user_key: rec.str("user")?,
            user_kind: if rec.bool("anonymous")? { UserKind::Anonymous } else { UserKind::Registered },
            content_hash: rec.str("sha1")?,
            size_bytes: rec.uint_or_zero("size")?,
        };
        grouped.entry(article_id).or_default().push(rev);
    }
    let mut histories: BTreeMap<String, RevisionHistory> = grouped
        .into_iter()
        .map(|(id, revs)| (id.clone(), RevisionHistory::new(id, revs)))
        .collect();

    if let Some(p) = discussions {
        for rec in json_lines(p)? {
            let id = rec.str("article_id")?;
            let n = rec.uint("discussion_count")?;
            histories
                .entry(id.clone())
                .or_insert_with(|| RevisionHistory::new(id, Vec::new()))
                .discussion_count = n;
        }
    }
    if let Some(p) = snapshots {
        for rec in json_lines(p)? {
            let id = rec.str("article_id")?;
            let h = histories
                .entry(id.clone())
                .or_insert_with(|| RevisionHistory::new(id, Vec::new()));
            h.snapshot_text_now = rec.opt_str("text_now")?;
            h.snapshot_text_3mo = rec.opt_str("text_3mo")?;
        }
    }
    Ok(histories)
}

/// Loads the TSV edge list and optional red-link sidecar.
pub fn load_graph(path: &Path, red_links: Option<&Path>, report: &mut LoadReport) -> Result<LinkGraph, CorpusError> {
    let text = read(path)?;
    let mut g = LinkGraph::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.trim_end_matches('\r');
        if line.trim().is_empty() || line.starts_with('#') {
            continue;
        }
        let mut cols = line.split('\t');
        let citing = cols.next().unwrap_or("").trim();
        let cited = cols.next().map(str::trim);
        if citing.is_empty() {
            return Err(CorpusError::Malformed {
                path: path.to_path_buf(),
                line: i + 1,
                field: "citing_id".into(),
                message: "empty".into(),
            });
        }
        match cited {
            None | Some("") => {
                g.add_node(citing);
            }
            Some(cited) => match g.add_edge(citing, cited) {
                EdgeOutcome::Added => {}
                EdgeOutcome::SelfLoop => report.self_loops_dropped += 1,
                EdgeOutcome::Duplicate => report.duplicate_edges_dropped += 1,
            },
        }
    }
    if report.self_loops_dropped > 0 {
        log::warn!("{}: dropped {} self-loops", path.display(), report.self_loops_dropped);
    }
    if let Some(p) = red_links {
        for rec in json_lines(p)? {
            let id = rec.str("article_id")?;
            let n = rec.uint("red_links")?;
            let node = g.add_node(&id);
            g.set_red_links(node, n);
        }
    }
    Ok(g)
}

/// Loads all corpus files and keys them consistently by article id.
///
/// Articles without a history get an empty one, articles missing from the
/// graph become isolated nodes; both are listed in [`Corpus::report`].
pub fn load_corpus(paths: &CorpusPaths) -> Result<Corpus, CorpusError> {
    let articles = load_articles(&paths.articles)?;
    let mut histories = load_revisions(&paths.revisions, paths.discussions.as_deref(), paths.snapshots.as_deref())?;
    let mut report = LoadReport::default();
    let mut graph = load_graph(&paths.graph, paths.red_links.as_deref(), &mut report)?;

    let known: HashMap<&str, usize> = articles.iter().enumerate().map(|(i, a)| (a.id.as_str(), i)).collect();
    report.orphan_revisions = histories
        .iter()
        .filter(|(id, _)| !known.contains_key(id.as_str()))
        .map(|(_, h)| h.revisions.len())
        .sum();
    if report.orphan_revisions > 0 {
        log::warn!("{} revisions name unknown articles; ignored", report.orphan_revisions);
    }
    histories.retain(|id, _| known.contains_key(id.as_str()));

    for a in &articles {
        let has_revisions = histories.get(&a.id).is_some_and(|h| !h.revisions.is_empty());
        if !has_revisions {
            report.missing_history.push(a.id.clone());
            histories
                .entry(a.id.clone())
                .or_insert_with(|| RevisionHistory::new(a.id.clone(), Vec::new()));
        }
        let node = match graph.index_of(&a.id) {
            Some(n) => n,
            None => {
                report.missing_graph_node.push(a.id.clone());
                graph.add_node(&a.id)
            }
        };
        graph.set_translations(node, a.language_version_count);
    }
    for id in &report.missing_history {
        log::warn!("article {id:?} has no revision history");
    }
    for id in &report.missing_graph_node {
        log::warn!("article {id:?} is not in the link graph; added as an isolated node");
    }
    Ok(Corpus { articles, histories, graph, report })
}

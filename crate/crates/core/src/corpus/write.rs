use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use chrono::SecondsFormat;
use serde_json::json;

use super::{Corpus, CorpusError, CorpusPaths, UserKind};

fn save(path: &Path, text: String) -> Result<(), CorpusError> {
    fs::write(path, text).map_err(|source| CorpusError::Io { path: path.to_path_buf(), source })
}

/// Writes `corpus` in the input formats under `dir`, returning the paths.
/// Loading them back with [`load_corpus`](super::load_corpus) gives the same
/// corpus; node order is kept by declaring every node before the edges.
pub fn write_corpus(corpus: &Corpus, dir: &Path) -> Result<CorpusPaths, CorpusError> {
    fs::create_dir_all(dir).map_err(|source| CorpusError::Io { path: dir.to_path_buf(), source })?;
    let paths = CorpusPaths {
        articles: dir.join("articles.jsonl"),
        revisions: dir.join("revisions.jsonl"),
        graph: dir.join("graph.tsv"),
        discussions: Some(dir.join("discussions.jsonl")),
        snapshots: Some(dir.join("snapshots.jsonl")),
        red_links: Some(dir.join("red_links.jsonl")),
    };

    let mut text = String::new();
    for a in &corpus.articles {
        let rec = json!({
            "id": a.id,
            "title": a.title,
            "wikitext": a.wikitext,
            "label": a.label.map(|l| l.label()),
            "translations": a.language_version_count,
            "link_count": a.raw_link_count,
        });
        writeln!(text, "{rec}").unwrap();
    }
    save(&paths.articles, text)?;

    let mut text = String::new();
    for h in corpus.histories.values() {
        for r in &h.revisions {
            let rec = json!({
                "article_id": h.article_id,
                "revision_id": r.revision_id,
                "timestamp": r.timestamp.to_rfc3339_opts(SecondsFormat::AutoSi, true),
                "user": r.user_key,
                "anonymous": r.user_kind == UserKind::Anonymous,
                "sha1": r.content_hash,
                "size": r.size_bytes,
            });
            writeln!(text, "{rec}").unwrap();
        }
    }
    save(&paths.revisions, text)?;

    let mut text = String::new();
    for h in corpus.histories.values().filter(|h| h.discussion_count > 0) {
        writeln!(text, "{}", json!({"article_id": h.article_id, "discussion_count": h.discussion_count})).unwrap();
    }
    save(paths.discussions.as_deref().expect("set above"), text)?;

    let mut text = String::new();
    for h in corpus.histories.values() {
        if h.snapshot_text_now.is_some() || h.snapshot_text_3mo.is_some() {
            let rec = json!({
                "article_id": h.article_id,
                "text_now": h.snapshot_text_now,
                "text_3mo": h.snapshot_text_3mo,
            });
            writeln!(text, "{rec}").unwrap();
        }
    }
    save(paths.snapshots.as_deref().expect("set above"), text)?;

    let g = &corpus.graph;
    let mut text = String::new();
    for v in 0..g.node_count() {
        writeln!(text, "{}", g.node_id(v)).unwrap();
    }
    for (a, b) in g.edges() {
        writeln!(text, "{}\t{}", g.node_id(a), g.node_id(b)).unwrap();
    }
    save(&paths.graph, text)?;

    let mut text = String::new();
    for v in (0..g.node_count()).filter(|&v| g.red_links(v) > 0) {
        writeln!(text, "{}", json!({"article_id": g.node_id(v), "red_links": g.red_links(v)})).unwrap();
    }
    save(paths.red_links.as_deref().expect("set above"), text)?;
    Ok(paths)
}

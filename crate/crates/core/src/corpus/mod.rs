//! Corpus ingestion: articles, revision histories and the link graph.
//!
//! Input formats (all UTF-8):
//!
//! - articles: JSON Lines `{"id","title","wikitext","label"?,"translations","link_count"}`
//! - revisions: JSON Lines `{"article_id","revision_id","timestamp","user","anonymous","sha1","size"}`
//! - discussions (optional): JSON Lines `{"article_id","discussion_count"}`
//! - snapshots (optional): JSON Lines `{"article_id","text_now","text_3mo"}`
//! - graph: TSV `citing_id<TAB>cited_id`; a line with a single id declares an isolated node
//! - red links (optional): JSON Lines `{"article_id","red_links"}`
//!
//! [`write_corpus`] emits the same formats.

mod document;
mod graph;
mod load;
mod write;
pub mod segment;
pub mod wikitext;

use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use chrono::{DateTime, Utc};
use serde::{Deserialize, Serialize};

pub use document::{DocumentStructure, Section, Sentence};
pub use graph::{EdgeOutcome, LinkGraph};
pub use load::{load_articles, load_corpus, load_graph, load_revisions, CorpusPaths};
pub use segment::{segment, syllable_count, Segmentation};
pub use wikitext::parse_wikitext;
pub use write::write_corpus;

/// The seven WikiProject quality grades, ordered from lowest to highest.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum QualityClass {
    Stub,
    Start,
    C,
    B,
    GA,
    A,
    FA,
}

impl QualityClass {
    /// All classes in ordinal order (Stub = 0 ... FA = 6).
    pub const ALL: [QualityClass; 7] = [
        QualityClass::Stub,
        QualityClass::Start,
        QualityClass::C,
        QualityClass::B,
        QualityClass::GA,
        QualityClass::A,
        QualityClass::FA,
    ];

    pub fn ordinal(self) -> u8 {
        self as u8
    }

    pub fn from_ordinal(ordinal: u8) -> Option<Self> {
        Self::ALL.get(ordinal as usize).copied()
    }

    pub fn label(self) -> &'static str {
        match self {
            QualityClass::Stub => "Stub",
            QualityClass::Start => "Start",
            QualityClass::C => "C",
            QualityClass::B => "B",
            QualityClass::GA => "GA",
            QualityClass::A => "A",
            QualityClass::FA => "FA",
        }
    }
}

impl fmt::Display for QualityClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("unknown quality class {0:?}")]
pub struct UnknownClass(pub String);

impl FromStr for QualityClass {
    type Err = UnknownClass;

    /// Accepts `FA`, `fa`, `FA-Class`, `Stub-Class`, ...
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let t = s.trim();
        let t = t
            .strip_suffix("-Class")
            .or_else(|| t.strip_suffix("-class"))
            .unwrap_or(t);
        Self::ALL
            .iter()
            .copied()
            .find(|c| c.label().eq_ignore_ascii_case(t))
            .ok_or_else(|| UnknownClass(s.to_string()))
    }
}

/// One article record.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Article {
    pub id: String,
    pub title: String,
    pub wikitext: String,
    pub label: Option<QualityClass>,
    /// Number of other language editions.
    pub language_version_count: u64,
    /// Links including red links, as reported by the source.
    pub raw_link_count: u64,
}

impl Article {
    /// Records with empty wikitext are placeholders and carry no features.
    pub fn is_placeholder(&self) -> bool {
        self.wikitext.trim().is_empty()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum UserKind {
    Registered,
    Anonymous,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Revision {
    pub revision_id: String,
    pub timestamp: DateTime<Utc>,
    /// User name, or the IP literal for anonymous edits.
    pub user_key: String,
    pub user_kind: UserKind,
    /// Hash of the full revision text.
    pub content_hash: String,
    pub size_bytes: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RevisionHistory {
    pub article_id: String,
    /// Sorted by timestamp; ties keep file order.
    pub revisions: Vec<Revision>,
    pub discussion_count: u64,
    pub snapshot_text_now: Option<String>,
    pub snapshot_text_3mo: Option<String>,
}

impl RevisionHistory {
    pub fn new(article_id: impl Into<String>, mut revisions: Vec<Revision>) -> Self {
        revisions.sort_by_key(|r| r.timestamp);
        Self {
            article_id: article_id.into(),
            revisions,
            discussion_count: 0,
            snapshot_text_now: None,
            snapshot_text_3mo: None,
        }
    }
}

/// Diagnostics collected while loading. Nothing listed here is dropped
/// silently: missing pieces are flagged and filled with empty defaults.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct LoadReport {
    /// Articles without any revision record.
    pub missing_history: Vec<String>,
    /// Articles absent from the edge list; added as isolated nodes.
    pub missing_graph_node: Vec<String>,
    /// Revision records naming an unknown article.
    pub orphan_revisions: usize,
    pub self_loops_dropped: usize,
    pub duplicate_edges_dropped: usize,
}

/// Everything the extractors need, keyed by article id.
#[derive(Debug, Clone)]
pub struct Corpus {
    pub articles: Vec<Article>,
    pub histories: std::collections::BTreeMap<String, RevisionHistory>,
    pub graph: LinkGraph,
    pub report: LoadReport,
}

#[derive(Debug, thiserror::Error)]
pub enum CorpusError {
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("{path}:{line}: field `{field}`: {message}")]
    Malformed {
        path: PathBuf,
        line: usize,
        field: String,
        message: String,
    },
    #[error("{path}:{line}: duplicate article id {id:?}")]
    DuplicateId { path: PathBuf, line: usize, id: String },
}

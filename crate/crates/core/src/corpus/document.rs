use serde::{Deserialize, Serialize};

/// A heading and the prose between it and the next heading of any depth.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Section {
    pub title: String,
    /// 1 for `== X ==`, 2 for `=== X ===`, and so on.
    pub depth: usize,
    /// Index of the enclosing section, if any.
    pub parent: Option<usize>,
    /// Normalized paragraphs joined by a blank line.
    pub body_text: String,
    /// Characters of the section's own paragraphs, separators excluded.
    pub char_size: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Sentence {
    pub tokens: Vec<String>,
    /// `.`, `!` or `?` when the sentence ended with one.
    pub terminator: Option<char>,
}

/// Parsed article: section tree plus segmented plain text and markup counts.
///
/// `sections` is a pre-order flattening of the tree; `parent` links recover
/// the nesting.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct DocumentStructure {
    pub abstract_text: String,
    pub abstract_size: usize,
    pub sections: Vec<Section>,
    pub paragraphs: Vec<String>,
    pub sentences: Vec<Sentence>,
    pub tokens: Vec<String>,
    pub syllable_counts: Vec<usize>,
    pub citation_count: usize,
    pub external_link_count: usize,
    pub internal_link_count: usize,
    pub image_count: usize,
    /// Unbalanced or unterminated markup encountered while parsing.
    pub anomaly_count: usize,
}

impl DocumentStructure {
    /// Abstract and section bodies joined by blank lines.
    pub fn plain_text(&self) -> String {
        let mut out = String::new();
        let pieces = std::iter::once(self.abstract_text.as_str())
            .chain(self.sections.iter().map(|s| s.body_text.as_str()))
            .filter(|p| !p.is_empty());
        for piece in pieces {
            if !out.is_empty() {
                out.push_str("\n\n");
            }
            out.push_str(piece);
        }
        out
    }

    /// Characters including spaces, paragraph separators excluded.
    pub fn character_count(&self) -> usize {
        self.paragraphs.iter().map(|p| p.chars().count()).sum()
    }

    pub fn top_level_sections(&self) -> impl Iterator<Item = (usize, &Section)> {
        self.sections.iter().enumerate().filter(|(_, s)| s.depth == 1)
    }

    /// Size of section `idx` including all of its descendants.
    pub fn section_size(&self, idx: usize) -> usize {
        let depth = self.sections[idx].depth;
        let mut total = self.sections[idx].char_size;
        for s in &self.sections[idx + 1..] {
            if s.depth <= depth {
                break;
            }
            total += s.char_size;
        }
        total
    }

    pub fn syllable_total(&self) -> usize {
        self.syllable_counts.iter().sum()
    }
}

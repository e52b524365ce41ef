//! Named feature values.

use std::fmt;

use serde::{Deserialize, Serialize};

/// Fine-grained feature family. Length, Structure, Style and Readability
/// together form the text features.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum FeatureGroup {
    Length,
    Structure,
    Style,
    Readability,
    Review,
    Network,
}

/// The three coarse groups used by the per-group ablation experiment.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum CoarseGroup {
    Text,
    Review,
    Network,
}

impl FeatureGroup {
    pub fn coarse(self) -> CoarseGroup {
        match self {
            FeatureGroup::Length
            | FeatureGroup::Structure
            | FeatureGroup::Style
            | FeatureGroup::Readability => CoarseGroup::Text,
            FeatureGroup::Review => CoarseGroup::Review,
            FeatureGroup::Network => CoarseGroup::Network,
        }
    }
}

impl CoarseGroup {
    pub const ALL: [CoarseGroup; 3] = [CoarseGroup::Text, CoarseGroup::Review, CoarseGroup::Network];

    pub fn name(self) -> &'static str {
        match self {
            CoarseGroup::Text => "text",
            CoarseGroup::Review => "review",
            CoarseGroup::Network => "network",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "text" | "tf" => Some(CoarseGroup::Text),
            "review" | "rf" => Some(CoarseGroup::Review),
            "network" | "nf" => Some(CoarseGroup::Network),
            _ => None,
        }
    }
}

impl fmt::Display for CoarseGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Ordered `(name, value)` pairs emitted by one extractor for one article.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct FeatureVector {
    entries: Vec<(String, f64)>,
}

impl FeatureVector {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with_capacity(n: usize) -> Self {
        Self { entries: Vec::with_capacity(n) }
    }

    /// Appends a value. Non-finite inputs are replaced by the `0.0` sentinel.
    pub fn push(&mut self, name: impl Into<String>, value: f64) {
        let value = if value.is_finite() { value } else { 0.0 };
        self.entries.push((name.into(), value));
    }

    pub fn extend(&mut self, other: FeatureVector) {
        self.entries.extend(other.entries);
    }

    pub fn get(&self, name: &str) -> Option<f64> {
        self.entries.iter().find(|(n, _)| n == name).map(|(_, v)| *v)
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn names(&self) -> impl Iterator<Item = &str> {
        self.entries.iter().map(|(n, _)| n.as_str())
    }

    pub fn values(&self) -> impl Iterator<Item = f64> + '_ {
        self.entries.iter().map(|(_, v)| *v)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, f64)> {
        self.entries.iter().map(|(n, v)| (n.as_str(), *v))
    }
}

impl std::ops::Index<&str> for FeatureVector {
    type Output = f64;

    fn index(&self, name: &str) -> &f64 {
        self.entries
            .iter()
            .find(|(n, _)| n == name)
            .map(|(_, v)| v)
            .unwrap_or_else(|| panic!("no feature named {name:?}"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn non_finite_becomes_sentinel() {
        let mut fv = FeatureVector::new();
        fv.push("a", f64::NAN);
        fv.push("b", f64::INFINITY);
        fv.push("c", 2.5);
        assert_eq!(fv.get("a"), Some(0.0));
        assert_eq!(fv.get("b"), Some(0.0));
        assert_eq!(fv["c"], 2.5);
        assert_eq!(fv.get("d"), None);
    }

    #[test]
    fn coarse_groups() {
        assert_eq!(FeatureGroup::Readability.coarse(), CoarseGroup::Text);
        assert_eq!(FeatureGroup::Review.coarse(), CoarseGroup::Review);
        assert_eq!(CoarseGroup::parse("NF"), Some(CoarseGroup::Network));
        assert_eq!(CoarseGroup::parse("graph"), None);
    }
}

//! Canonical feature names, groups and column order.
//!
//! The scalar registry has 166 features: 4 length, 21 structure, 91 style,
//! 8 readability, 31 review (30 history features plus `prob_review`) and
//! 11 network. The character and POS trigram columns follow, `m` and `n` of
//! them, named by rank (`char_trigram_00`, ..., `pos_trigram_00`, ...).

use serde::{Deserialize, Serialize};

use crate::feature::{CoarseGroup, FeatureGroup};
use crate::netfeat::NETWORK_FEATURES;
use crate::readability::READABILITY_FEATURES;
use crate::reviewfeat::{PROB_REVIEW_FEATURE, REVIEW_FEATURES};
use crate::stylefeat::{style_feature_names, trigram_feature_names};
use crate::textfeat::{LENGTH_FEATURES, STRUCTURE_FEATURES};

/// Bumped whenever a name, group or position changes.
pub const REGISTRY_VERSION: &str = "1";

pub const SCALAR_FEATURE_COUNT: usize = 166;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FeatureSpec {
    pub name: String,
    pub group: FeatureGroup,
    /// Extractor function that emits the feature.
    pub operation: &'static str,
}

impl FeatureSpec {
    fn new(name: impl Into<String>, group: FeatureGroup, operation: &'static str) -> Self {
        FeatureSpec { name: name.into(), group, operation }
    }
}

/// The 166 scalar features in column order.
pub fn scalar_registry() -> Vec<FeatureSpec> {
    use FeatureGroup::*;
    let mut r = Vec::with_capacity(SCALAR_FEATURE_COUNT);
    r.extend(LENGTH_FEATURES.iter().map(|n| FeatureSpec::new(*n, Length, "textfeat::length_features")));
    r.extend(STRUCTURE_FEATURES.iter().map(|n| FeatureSpec::new(*n, Structure, "textfeat::structure_features")));
    r.extend(style_feature_names().into_iter().map(|n| FeatureSpec::new(n, Style, "stylefeat::style_scalar_features")));
    r.extend(
        READABILITY_FEATURES
            .iter()
            .map(|n| FeatureSpec::new(*n, Readability, "readability::readability_features")),
    );
    r.extend(REVIEW_FEATURES.iter().map(|n| FeatureSpec::new(*n, Review, "reviewfeat::review_features")));
    r.push(FeatureSpec::new(PROB_REVIEW_FEATURE, Review, "reviewfeat::prob_review"));
    r.extend(NETWORK_FEATURES.iter().map(|n| FeatureSpec::new(*n, Network, "netfeat::graph_metrics")));
    r
}

/// Full registry: scalar features followed by `m + n` trigram columns.
pub fn registry(m: usize, n: usize) -> Vec<FeatureSpec> {
    let mut r = scalar_registry();
    r.extend(
        trigram_feature_names(m, n)
            .into_iter()
            .map(|name| FeatureSpec::new(name, FeatureGroup::Style, "stylefeat::trigram_features")),
    );
    r
}

pub fn feature_names(m: usize, n: usize) -> Vec<String> {
    registry(m, n).into_iter().map(|s| s.name).collect()
}

/// Group of a column name, trigram columns included.
pub fn group_of(name: &str) -> Option<FeatureGroup> {
    if name.starts_with("char_trigram_") || name.starts_with("pos_trigram_") {
        return Some(FeatureGroup::Style);
    }
    scalar_registry().into_iter().find(|s| s.name == name).map(|s| s.group)
}

/// Names in `columns` belonging to any of `groups`, in their original order.
pub fn columns_in_groups<'a>(columns: &'a [String], groups: &[CoarseGroup]) -> Vec<&'a str> {
    let scalar = scalar_registry();
    columns
        .iter()
        .filter(|c| {
            let group = if c.starts_with("char_trigram_") || c.starts_with("pos_trigram_") {
                Some(FeatureGroup::Style)
            } else {
                scalar.iter().find(|s| &s.name == *c).map(|s| s.group)
            };
            group.is_some_and(|g| groups.contains(&g.coarse()))
        })
        .map(String::as_str)
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    #[test]
    fn counts_per_group() {
        let r = scalar_registry();
        assert_eq!(r.len(), SCALAR_FEATURE_COUNT);
        let count = |g| r.iter().filter(|s| s.group == g).count();
        assert_eq!(count(FeatureGroup::Length), 4);
        assert_eq!(count(FeatureGroup::Structure), 21);
        assert_eq!(count(FeatureGroup::Style), 91);
        assert_eq!(count(FeatureGroup::Readability), 8);
        assert_eq!(count(FeatureGroup::Review), 31);
        assert_eq!(count(FeatureGroup::Network), 11);
    }

    #[test]
    fn names_unique() {
        let names = feature_names(50, 50);
        assert_eq!(names.len(), 266);
        assert_eq!(names.iter().collect::<HashSet<_>>().len(), 266);
    }

    #[test]
    fn group_lookup() {
        assert_eq!(group_of("pagerank"), Some(FeatureGroup::Network));
        assert_eq!(group_of("pos_trigram_07"), Some(FeatureGroup::Style));
        assert_eq!(group_of("nope"), None);
        let cols = feature_names(2, 2);
        assert_eq!(columns_in_groups(&cols, &[CoarseGroup::Network]).len(), 11);
        assert_eq!(columns_in_groups(&cols, &[CoarseGroup::Text]).len(), 128);
    }
}

//! Length and structure features.
//!
//! Section statistics use top-level (depth 1) sections, each sized with its
//! subsections included. Ratios with a zero denominator are `0.0`.

use crate::corpus::DocumentStructure;
use crate::feature::FeatureVector;
use crate::ratio;

pub const LENGTH_FEATURES: [&str; 4] = ["character_count", "word_count", "sentence_count", "syllable_count"];

pub const STRUCTURE_FEATURES: [&str; 21] = [
    "section_count",
    "subsection_count",
    "paragraph_count",
    "mean_section_size",
    "mean_paragraph_size",
    "longest_section_size",
    "shortest_section_size",
    "longest_shortest_section_ratio",
    "section_size_stddev",
    "mean_subsections_per_section",
    "abstract_size",
    "abstract_size_article_length_ratio",
    "citation_count",
    "citations_per_section",
    "citations_per_text_length",
    "external_link_count",
    "external_links_per_section",
    "external_links_per_text_length",
    "image_count",
    "images_per_section",
    "images_per_text_length",
];

pub fn length_features(doc: &DocumentStructure) -> FeatureVector {
    let mut fv = FeatureVector::with_capacity(4);
    fv.push("character_count", doc.character_count() as f64);
    fv.push("word_count", doc.tokens.len() as f64);
    fv.push("sentence_count", doc.sentences.len() as f64);
    fv.push("syllable_count", doc.syllable_total() as f64);
    fv
}

pub fn structure_features(doc: &DocumentStructure) -> FeatureVector {
    let sizes: Vec<f64> = doc.top_level_sections().map(|(i, _)| doc.section_size(i) as f64).collect();
    let section_count = sizes.len() as f64;
    let subsection_count = doc.sections.iter().filter(|s| s.depth >= 2).count() as f64;
    let paragraph_count = doc.paragraphs.len() as f64;
    let chars = doc.character_count() as f64;
    let sentences = doc.sentences.len() as f64;

    let mean = ratio(sizes.iter().sum(), section_count);
    let longest = sizes.iter().copied().fold(0.0_f64, f64::max);
    let shortest = if sizes.is_empty() { 0.0 } else { sizes.iter().copied().fold(f64::INFINITY, f64::min) };
    let stddev = if sizes.is_empty() {
        0.0
    } else {
        (sizes.iter().map(|s| (s - mean).powi(2)).sum::<f64>() / section_count).sqrt()
    };
    let mean_paragraph = ratio(chars, paragraph_count);

    let citations = doc.citation_count as f64;
    let ext = doc.external_link_count as f64;
    let images = doc.image_count as f64;
    let abstract_size = doc.abstract_size as f64;

    let mut fv = FeatureVector::with_capacity(21);
    fv.push("section_count", section_count);
    fv.push("subsection_count", subsection_count);
    fv.push("paragraph_count", paragraph_count);
    fv.push("mean_section_size", mean);
    fv.push("mean_paragraph_size", mean_paragraph);
    fv.push("longest_section_size", longest);
    fv.push("shortest_section_size", shortest);
    fv.push("longest_shortest_section_ratio", ratio(longest, shortest));
    fv.push("section_size_stddev", stddev);
    fv.push("mean_subsections_per_section", ratio(subsection_count, section_count));
    fv.push("abstract_size", abstract_size);
    fv.push("abstract_size_article_length_ratio", ratio(abstract_size, chars));
    fv.push("citation_count", citations);
    fv.push("citations_per_section", ratio(citations, section_count));
    fv.push("citations_per_text_length", ratio(citations, chars));
    fv.push("external_link_count", ext);
    fv.push("external_links_per_section", ratio(ext, section_count));
    fv.push("external_links_per_text_length", ratio(ext, chars));
    fv.push("image_count", images);
    fv.push("images_per_section", ratio(images, section_count));
    fv.push("images_per_text_length", ratio(images, sentences));
    fv
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::{parse_wikitext, Section};

    fn section(depth: usize, size: usize) -> Section {
        Section { title: "s".into(), depth, parent: None, body_text: "x".repeat(size), char_size: size }
    }

    #[test]
    fn hi_there() {
        let doc = parse_wikitext("Hi there. Go.");
        let fv = length_features(&doc);
        assert_eq!(fv["character_count"], 13.0);
        assert_eq!(fv["word_count"], 3.0);
        assert_eq!(fv["sentence_count"], 2.0);
        assert_eq!(fv["syllable_count"], 3.0);
    }

    #[test]
    fn empty_body() {
        let fv = length_features(&DocumentStructure::default());
        assert!(fv.values().all(|v| v == 0.0));
    }

    #[test]
    fn section_statistics() {
        let doc = DocumentStructure { sections: vec![section(1, 100), section(1, 50)], ..Default::default() };
        let fv = structure_features(&doc);
        assert_eq!(fv["mean_section_size"], 75.0);
        assert_eq!(fv["longest_section_size"], 100.0);
        assert_eq!(fv["shortest_section_size"], 50.0);
        assert_eq!(fv["longest_shortest_section_ratio"], 2.0);
        assert_eq!(fv["section_size_stddev"], 25.0);
    }

    #[test]
    fn subsections_roll_into_parent_size() {
        let doc = DocumentStructure {
            sections: vec![section(1, 10), section(2, 5), section(3, 1), section(1, 4)],
            ..Default::default()
        };
        let fv = structure_features(&doc);
        assert_eq!(fv["section_count"], 2.0);
        assert_eq!(fv["subsection_count"], 2.0);
        assert_eq!(fv["longest_section_size"], 16.0);
        assert_eq!(fv["mean_subsections_per_section"], 1.0);
    }

    #[test]
    fn no_sections_gives_sentinels() {
        let doc = parse_wikitext("Only an abstract.<ref>r</ref> [[File:x.png]]");
        let fv = structure_features(&doc);
        assert_eq!(fv.len(), 21);
        for name in [
            "mean_section_size",
            "longest_shortest_section_ratio",
            "section_size_stddev",
            "mean_subsections_per_section",
            "citations_per_section",
            "external_links_per_section",
            "images_per_section",
        ] {
            assert_eq!(fv[name], 0.0, "{name}");
        }
        assert_eq!(fv["abstract_size_article_length_ratio"], 1.0);
        assert_eq!(fv["images_per_text_length"], 1.0);
    }
}

//! A total, lossy wikitext parser.
//!
//! Produces the section tree, normalized prose and markup counts. It never
//! fails: unbalanced constructs are dropped and counted in
//! [`DocumentStructure::anomaly_count`].
//!
//! Counting rules:
//! - `<ref>...</ref>` is one citation; a self-closing `<ref name=x/>` reuses
//!   an earlier one and is not counted.
//! - `{{cite ...}}` / `{{citation ...}}` outside a ref is one citation.
//! - `[[File:...]]`, `[[Image:...]]`, `[[Media:...]]`, gallery lines and
//!   imagemaps are images.
//! - `[[Target]]` without a namespace prefix is an internal link.
//! - `[http://... label]` is an external link anywhere; a bare URL only in an
//!   "External links" section.
//!
//! All other templates are removed wholesale, tables are dropped from the prose
//! (their citations, links and images still count), and formatting markup is
//! stripped.

use super::document::{DocumentStructure, Section};
use super::segment::{normalize_line, segment_paragraphs};

/// Marks a blank source line so paragraph breaks survive markup removal.
const PARA_MARK: char = '\u{2029}';
const MAX_NESTING: u32 = 48;

const NAMESPACES: &[&str] = &[
    "wikipedia", "wp", "project", "template", "help", "portal", "user", "talk", "user talk",
    "special", "module", "draft", "mediawiki", "book", "wiktionary", "wikt", "commons", "wikisource",
    "s", "wikiquote", "q", "wikinews", "n", "wikibooks", "b", "wikiversity", "v", "wikivoyage",
    "voy", "meta", "m", "mw", "species", "d", "wikidata", "file talk", "template talk",
    "wikipedia talk", "category talk", "portal talk",
];

const DROPPED_TAGS: &[&str] = &[
    "math", "timeline", "score", "syntaxhighlight", "source", "graph", "mapframe", "maplink",
    "templatedata", "chem", "ce", "hiero", "inputbox", "categorytree", "charinsert",
];

#[derive(Debug, Default, Clone, Copy)]
struct Counts {
    citations: usize,
    external_links: usize,
    internal_links: usize,
    images: usize,
    anomalies: usize,
}

/// Parses wikitext into a [`DocumentStructure`].
pub fn parse_wikitext(wikitext: &str) -> DocumentStructure {
    let mut counts = Counts::default();
    let without_comments = strip_comments(wikitext, &mut counts);
    let raw = split_headings(&without_comments, &mut counts);

    let mut doc = DocumentStructure::default();
    let mut paragraphs_all: Vec<String> = Vec::new();

    let abstract_paras = render_block(raw.preamble, false, &mut counts);
    doc.abstract_size = char_len(&abstract_paras);
    doc.abstract_text = abstract_paras.join("\n\n");
    paragraphs_all.extend(abstract_paras);

    let mut stack: Vec<usize> = Vec::new();
    for (idx, h) in raw.sections.into_iter().enumerate() {
        while let Some(&top) = stack.last() {
            if doc.sections[top].depth >= h.depth {
                stack.pop();
            } else {
                break;
            }
        }
        let ext = is_external_links_title(&h.title);
        let paras = render_block(h.body, ext, &mut counts);
        doc.sections.push(Section {
            title: h.title,
            depth: h.depth,
            parent: stack.last().copied(),
            char_size: char_len(&paras),
            body_text: paras.join("\n\n"),
        });
        paragraphs_all.extend(paras);
        stack.push(idx);
    }

    let seg = segment_paragraphs(paragraphs_all);
    doc.paragraphs = seg.paragraphs;
    doc.sentences = seg.sentences;
    doc.tokens = seg.tokens;
    doc.syllable_counts = seg.syllable_counts;
    doc.citation_count = counts.citations;
    doc.external_link_count = counts.external_links;
    doc.internal_link_count = counts.internal_links;
    doc.image_count = counts.images;
    doc.anomaly_count = counts.anomalies;
    doc
}

fn char_len(paras: &[String]) -> usize {
    paras.iter().map(|p| p.chars().count()).sum()
}

fn is_external_links_title(title: &str) -> bool {
    let t = title.trim().to_ascii_lowercase();
    matches!(t.as_str(), "external links" | "external link" | "external sources" | "weblinks" | "web links")
}

fn strip_comments(src: &str, counts: &mut Counts) -> String {
    let mut out = String::with_capacity(src.len());
    let mut rest = src;
    while let Some(start) = rest.find("<!--") {
        out.push_str(&rest[..start]);
        match rest[start + 4..].find("-->") {
            Some(end) => rest = &rest[start + 4 + end + 3..],
            None => {
                counts.anomalies += 1;
                rest = "";
            }
        }
    }
    out.push_str(rest);
    out
}

struct RawHeading<'a> {
    title: String,
    depth: usize,
    body: &'a str,
}

struct RawDoc<'a> {
    preamble: &'a str,
    sections: Vec<RawHeading<'a>>,
}

/// Returns `(level, inner title)` if the line is a heading.
fn heading_of(line: &str) -> Option<(usize, &str)> {
    let t = line.trim();
    if !t.starts_with('=') || !t.ends_with('=') || t.len() < 3 {
        return None;
    }
    let lead = t.bytes().take_while(|&b| b == b'=').count();
    let trail = t.bytes().rev().take_while(|&b| b == b'=').count();
    if lead == t.len() {
        return None;
    }
    let level = lead.min(trail).min(6);
    let inner = t[level..t.len() - level].trim();
    if inner.is_empty() {
        return None;
    }
    Some((level, inner))
}

fn split_headings<'a>(src: &'a str, counts: &mut Counts) -> RawDoc<'a> {
    let mut sections: Vec<RawHeading<'a>> = Vec::new();
    let mut preamble_end = src.len();
    let mut body_start: Option<usize> = None;
    let mut offset = 0usize;
    for line in src.split_inclusive('\n') {
        let line_start = offset;
        offset += line.len();
        let Some((level, inner)) = heading_of(line) else {
            continue;
        };
        match body_start {
            None => preamble_end = line_start,
            Some(b) => {
                if let Some(last) = sections.last_mut() {
                    last.body = &src[b..line_start];
                }
            }
        }
        let mut scratch = *counts;
        let title = render_inline(inner, false, &mut scratch).trim().to_string();
        counts.anomalies = scratch.anomalies;
        sections.push(RawHeading {
            title: normalize_line(&title),
            depth: level.saturating_sub(1).max(1),
            body: "",
        });
        body_start = Some(offset);
    }
    if let (Some(b), Some(last)) = (body_start, sections.last_mut()) {
        last.body = &src[b..];
    }
    RawDoc { preamble: &src[..preamble_end], sections }
}

/// Renders a block of wikitext into normalized paragraphs.
fn render_block(src: &str, external_section: bool, counts: &mut Counts) -> Vec<String> {
    let mut marked = String::with_capacity(src.len() + 8);
    for line in src.split('\n') {
        if line.trim().is_empty() {
            marked.push(PARA_MARK);
        } else {
            marked.push_str(line);
        }
        marked.push('\n');
    }
    let rendered = render_inline(&marked, external_section, counts);

    let mut paragraphs = Vec::new();
    let mut current: Vec<String> = Vec::new();
    let flush = |current: &mut Vec<String>, paragraphs: &mut Vec<String>| {
        if !current.is_empty() {
            paragraphs.push(current.join("\n"));
            current.clear();
        }
    };
    for line in rendered.split('\n') {
        if line.contains(PARA_MARK) && line.chars().all(|c| c == PARA_MARK || c.is_whitespace()) {
            flush(&mut current, &mut paragraphs);
            continue;
        }
        let line = line.replace(PARA_MARK, " ");
        let trimmed = line.trim_start();
        if trimmed.starts_with("----") {
            continue;
        }
        let is_list = trimmed.starts_with(['*', '#', ':', ';']);
        let body = trimmed.trim_start_matches(['*', '#', ':', ';']);
        let norm = normalize_line(body);
        if norm.is_empty() {
            continue;
        }
        if is_list {
            flush(&mut current, &mut paragraphs);
            paragraphs.push(norm);
        } else {
            current.push(norm);
        }
    }
    flush(&mut current, &mut paragraphs);
    paragraphs
}

fn render_inline(src: &str, external_section: bool, counts: &mut Counts) -> String {
    let mut r = Renderer { counts, external_section, nesting: 0 };
    let mut out = String::with_capacity(src.len());
    r.render(src, &mut out);
    out
}

struct Renderer<'c> {
    counts: &'c mut Counts,
    external_section: bool,
    nesting: u32,
}

fn starts_with_ci(hay: &str, at: usize, needle: &str) -> bool {
    hay.as_bytes()
        .get(at..at + needle.len())
        .is_some_and(|s| s.eq_ignore_ascii_case(needle.as_bytes()))
}

fn find_ci(hay: &str, from: usize, needle: &str) -> Option<usize> {
    let hb = hay.as_bytes();
    let nb = needle.as_bytes();
    if nb.is_empty() || from > hb.len() {
        return None;
    }
    (from..=hb.len().saturating_sub(nb.len())).find(|&i| hb[i..i + nb.len()].eq_ignore_ascii_case(nb))
}

/// Finds the index of the closing delimiter that balances the opener at `from`.
fn find_balanced(src: &str, from: usize, open: &[u8], close: &[u8]) -> Option<usize> {
    let b = src.as_bytes();
    let mut depth = 0usize;
    let mut i = from;
    while i + close.len() <= b.len() {
        if b[i..].starts_with(open) {
            depth += 1;
            i += open.len();
        } else if b[i..].starts_with(close) {
            depth = depth.saturating_sub(1);
            if depth == 0 {
                return Some(i);
            }
            i += close.len();
        } else {
            i += 1;
        }
    }
    None
}

struct Tag {
    name: String,
    closing: bool,
    self_closing: bool,
    end: usize,
}

/// Parses an HTML-like tag at `at` (which holds `<`).
fn parse_tag(src: &str, at: usize) -> Option<Tag> {
    let b = src.as_bytes();
    let mut i = at + 1;
    let closing = b.get(i) == Some(&b'/');
    if closing {
        i += 1;
    }
    let name_start = i;
    while i < b.len() && b[i].is_ascii_alphanumeric() {
        i += 1;
    }
    if i == name_start || !b[name_start].is_ascii_alphabetic() {
        return None;
    }
    let name = src[name_start..i].to_ascii_lowercase();
    // Attributes end at '>' on the same logical tag; reject runaway tags.
    let limit = (i + 512).min(b.len());
    let rel = b[i..limit].iter().position(|&c| c == b'>' || c == b'<' || c == b'\n')?;
    if b[i + rel] != b'>' {
        return None;
    }
    let end = i + rel + 1;
    let self_closing = end >= 2 && b[end - 2] == b'/';
    Some(Tag { name, closing, self_closing, end })
}

fn is_url_start(src: &str, at: usize) -> bool {
    ["http://", "https://", "ftp://", "//", "mailto:"]
        .iter()
        .any(|p| starts_with_ci(src, at, p))
}

fn is_bare_url_start(src: &str, at: usize) -> bool {
    let prev_ok = at == 0 || !src.as_bytes()[at - 1].is_ascii_alphanumeric();
    prev_ok && ["http://", "https://", "ftp://"].iter().any(|p| starts_with_ci(src, at, p))
}

fn url_end(src: &str, from: usize) -> usize {
    let b = src.as_bytes();
    let mut i = from;
    while i < b.len() && !b[i].is_ascii_whitespace() && !matches!(b[i], b'[' | b']' | b'<' | b'>' | b'"' | b'|' | b'{' | b'}')
    {
        i += 1;
    }
    // Stop before non-ASCII (e.g. the paragraph marker) on a char boundary.
    while !src.is_char_boundary(i) {
        i -= 1;
    }
    i
}

fn is_interlanguage_prefix(p: &str) -> bool {
    let mut parts = p.split('-');
    let head = parts.next().unwrap_or("");
    (2..=3).contains(&head.len())
        && head.bytes().all(|c| c.is_ascii_lowercase())
        && parts.all(|s| !s.is_empty() && s.bytes().all(|c| c.is_ascii_lowercase()))
        || p == "simple"
}

impl Renderer<'_> {
    fn render(&mut self, src: &str, out: &mut String) {
        if self.nesting > MAX_NESTING {
            self.counts.anomalies += 1;
            return;
        }
        self.nesting += 1;
        let b = src.as_bytes();
        let mut i = 0usize;
        let mut line_start = true;
        let mut plain_from = 0usize;
        while i < b.len() {
            let c = b[i];
            let special = matches!(c, b'<' | b'{' | b'[' | b'\'' | b'_' | b'\n' | b'h' | b'H' | b'f' | b'F');
            if !special {
                if !(c == b' ' || c == b'\t') {
                    line_start = false;
                }
                i += 1;
                continue;
            }
            out.push_str(&src[plain_from..i]);
            let next = match c {
                b'<' => self.on_angle(src, i, out),
                b'{' if line_start && b.get(i + 1) == Some(&b'|') => self.on_table(src, i),
                b'{' if b.get(i + 1) == Some(&b'{') => self.on_template(src, i),
                b'[' if b.get(i + 1) == Some(&b'[') => self.on_wikilink(src, i, out),
                b'[' if is_url_start(src, i + 1) => self.on_external(src, i, out),
                b'\'' if b.get(i + 1) == Some(&b'\'') => {
                    let mut j = i;
                    while j < b.len() && b[j] == b'\'' {
                        j += 1;
                    }
                    Some(j)
                }
                b'_' if starts_with_ci(src, i, "__") => magic_word_end(src, i),
                b'h' | b'H' | b'f' | b'F' if is_bare_url_start(src, i) => {
                    if self.external_section {
                        self.counts.external_links += 1;
                    }
                    Some(url_end(src, i))
                }
                b'\n' => {
                    out.push('\n');
                    line_start = true;
                    plain_from = i + 1;
                    i += 1;
                    continue;
                }
                _ => None,
            };
            match next {
                Some(j) => {
                    line_start = false;
                    i = j;
                }
                None => {
                    // Not markup after all: copy the byte (ASCII) through.
                    out.push(c as char);
                    line_start = false;
                    i += 1;
                }
            }
            plain_from = i;
        }
        out.push_str(&src[plain_from..]);
        self.nesting -= 1;
    }

    /// Renders `src` for its counts only.
    fn count_only(&mut self, src: &str) {
        let mut sink = String::new();
        self.render(src, &mut sink);
    }

    fn on_angle(&mut self, src: &str, at: usize, out: &mut String) -> Option<usize> {
        if starts_with_ci(src, at, "<!--") {
            // Comments were stripped up front; this one was unterminated.
            self.counts.anomalies += 1;
            return Some(src.len());
        }
        let tag = parse_tag(src, at)?;
        if tag.closing {
            return Some(tag.end);
        }
        let name = tag.name.as_str();
        if name == "br" {
            out.push(' ');
            return Some(tag.end);
        }
        if tag.self_closing {
            return Some(tag.end);
        }
        let close_pat = format!("</{name}");
        let close = find_ci(src, tag.end, &close_pat);
        let after_close = |c: usize| -> usize {
            src[c..].find('>').map_or(src.len(), |p| c + p + 1)
        };
        match name {
            "ref" => {
                self.counts.citations += 1;
                match close {
                    Some(c) => Some(after_close(c)),
                    None => {
                        self.counts.anomalies += 1;
                        Some(src[tag.end..].find('\n').map_or(src.len(), |p| tag.end + p))
                    }
                }
            }
            "references" => match close {
                Some(c) => {
                    self.count_only(&src[tag.end..c]);
                    Some(after_close(c))
                }
                None => Some(tag.end),
            },
            "gallery" | "imagemap" | "nowiki" | "pre" => {
                let Some(c) = close else {
                    self.counts.anomalies += 1;
                    return Some(tag.end);
                };
                let inner = &src[tag.end..c];
                match name {
                    "gallery" => {
                        self.counts.images += inner
                            .lines()
                            .filter(|l| {
                                let t = l.trim().trim_matches(PARA_MARK);
                                !t.is_empty() && !t.starts_with('<')
                            })
                            .count();
                    }
                    "imagemap" => self.counts.images += 1,
                    _ => out.push_str(&inner.replace(PARA_MARK, "")),
                }
                Some(after_close(c))
            }
            _ if DROPPED_TAGS.contains(&name) => match close {
                Some(c) => Some(after_close(c)),
                None => {
                    self.counts.anomalies += 1;
                    Some(tag.end)
                }
            },
            _ => Some(tag.end),
        }
    }

    fn on_template(&mut self, src: &str, at: usize) -> Option<usize> {
        let Some(close) = find_balanced(src, at, b"{{", b"}}") else {
            self.counts.anomalies += 1;
            return Some(at + 2);
        };
        let inner = &src[at + 2..close];
        let name_end = inner.find(['|', '}', '\n']).unwrap_or(inner.len());
        let name = inner[..name_end].trim().trim_matches(PARA_MARK).trim().to_ascii_lowercase();
        let name = name.strip_prefix("subst:").unwrap_or(&name);
        if name.starts_with("cite") || name == "citation" {
            self.counts.citations += 1;
        }
        Some(close + 2)
    }

    fn on_table(&mut self, src: &str, at: usize) -> Option<usize> {
        // Tables nest; openers/closers only count at line starts.
        let b = src.as_bytes();
        let mut depth = 0usize;
        let mut i = at;
        let mut at_line_start = true;
        while i < b.len() {
            if at_line_start {
                let mut j = i;
                while j < b.len() && (b[j] == b' ' || b[j] == b'\t') {
                    j += 1;
                }
                if b[j..].starts_with(b"{|") {
                    depth += 1;
                } else if b[j..].starts_with(b"|}") {
                    depth -= 1;
                    if depth == 0 {
                        self.count_only(&src[at + 2..j]);
                        return Some(j + 2);
                    }
                }
            }
            at_line_start = b[i] == b'\n';
            i += 1;
        }
        self.counts.anomalies += 1;
        self.count_only(&src[at + 2..]);
        Some(src.len())
    }

    fn on_wikilink(&mut self, src: &str, at: usize, out: &mut String) -> Option<usize> {
        let Some(close) = find_balanced(src, at, b"[[", b"]]") else {
            self.counts.anomalies += 1;
            return Some(at + 2);
        };
        let inner = &src[at + 2..close];
        let (target, rest) = match inner.find('|') {
            Some(p) => (&inner[..p], Some(&inner[p + 1..])),
            None => (inner, None),
        };
        let target = target.trim();
        if let Some(stripped) = target.strip_prefix(':') {
            self.render(rest.filter(|r| !r.trim().is_empty()).unwrap_or(stripped), out);
            return Some(close + 2);
        }
        let prefix = target.split_once(':').map(|(p, _)| p.trim());
        if let Some(p) = prefix {
            let lower = p.to_ascii_lowercase();
            match lower.as_str() {
                "file" | "image" | "media" => {
                    self.counts.images += 1;
                    if let Some(r) = rest {
                        self.count_only(r);
                    }
                    return Some(close + 2);
                }
                "category" => return Some(close + 2),
                _ if is_interlanguage_prefix(p) => return Some(close + 2),
                _ if NAMESPACES.contains(&lower.as_str()) => {
                    let shown = rest.filter(|r| !r.trim().is_empty()).unwrap_or(target);
                    self.render(shown, out);
                    return Some(close + 2);
                }
                _ => {}
            }
        }
        self.counts.internal_links += 1;
        let shown = rest.filter(|r| !r.trim().is_empty()).unwrap_or(target);
        self.render(shown, out);
        Some(close + 2)
    }

    fn on_external(&mut self, src: &str, at: usize, out: &mut String) -> Option<usize> {
        let b = src.as_bytes();
        let line_end = src[at..].find('\n').map_or(src.len(), |p| at + p);
        let Some(rel) = b[at..line_end].iter().position(|&c| c == b']') else {
            self.counts.anomalies += 1;
            return Some(url_end(src, at + 1));
        };
        let close = at + rel;
        self.counts.external_links += 1;
        let inner = &src[at + 1..close];
        if let Some(space) = inner.find([' ', '\t']) {
            self.render(&inner[space + 1..], out);
        }
        Some(close + 1)
    }
}

fn magic_word_end(src: &str, at: usize) -> Option<usize> {
    let b = src.as_bytes();
    let mut j = at + 2;
    while j < b.len() && b[j].is_ascii_uppercase() {
        j += 1;
    }
    (j > at + 2 && b[j..].starts_with(b"__")).then_some(j + 2)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn heading_grammar() {
        let doc = parse_wikitext("Intro.\n== A ==\nBody.\n=== A1 ===\nMore.");
        assert_eq!(doc.abstract_text, "Intro.");
        assert_eq!(doc.sections.len(), 2);
        assert_eq!(doc.sections[0].title, "A");
        assert_eq!(doc.sections[0].depth, 1);
        assert_eq!(doc.sections[1].depth, 2);
        assert_eq!(doc.sections[1].parent, Some(0));
        assert_eq!(doc.sections[0].body_text, "Body.");
        assert_eq!(doc.section_size(0), 5 + 5);
    }

    #[test]
    fn refs_and_files() {
        let text = "A<ref>x</ref> b<ref name=\"n\">{{cite web|url=u}}</ref> c.<ref name=n/> \
                    d<ref>y</ref>\n[[File:a.jpg|thumb|cap]]\n[[Image:b.png]]\nEnd.";
        let doc = parse_wikitext(text);
        assert_eq!(doc.citation_count, 3);
        assert_eq!(doc.image_count, 2);
        assert_eq!(doc.anomaly_count, 0);
    }

    #[test]
    fn links() {
        let doc = parse_wikitext(
            "See [[Rome]] and [[Roman Empire|the empire]], [[Category:X]] [[fr:Rome]] \
             [[Wikipedia:Manual|manual]] [http://example.org site] https://bare.example.",
        );
        assert_eq!(doc.internal_link_count, 2);
        assert_eq!(doc.external_link_count, 1);
        assert_eq!(doc.abstract_text, "See Rome and the empire, manual site");
    }

    #[test]
    fn bare_urls_in_external_links_section() {
        let doc = parse_wikitext("Text.\n== External links ==\n* https://a.example\n* [http://b.example B]\n");
        assert_eq!(doc.external_link_count, 2);
        assert_eq!(doc.sections[0].body_text, "B");
    }

    #[test]
    fn templates_removed_and_cites_counted() {
        let doc = parse_wikitext("{{Infobox|name={{nested|x}}}}Text {{cite book|title=T}} here.{{citation needed}}");
        assert_eq!(doc.abstract_text, "Text here.");
        assert_eq!(doc.citation_count, 1);
    }

    #[test]
    fn formatting_stripped() {
        let doc = parse_wikitext("'''Bold''' and ''italic'' <small>small</small><br/>x __NOTOC__");
        assert_eq!(doc.abstract_text, "Bold and italic small x");
    }

    #[test]
    fn tables_dropped_but_counted() {
        let doc = parse_wikitext("Before.\n{| class=\"wikitable\"\n|-\n| cell<ref>r</ref> || [[Link]]\n|}\nAfter.");
        assert_eq!(doc.abstract_text, "Before.\nAfter.");
        assert_eq!(doc.citation_count, 1);
        assert_eq!(doc.internal_link_count, 1);
    }

    #[test]
    fn paragraphs_and_lists() {
        let doc = parse_wikitext("P1 line one\nline two.\n\nP2.\n* item a\n* item b\n");
        assert_eq!(doc.paragraphs, vec!["P1 line one\nline two.", "P2.", "item a", "item b"]);
    }

    #[test]
    fn unbalanced_markup_is_recorded() {
        let doc = parse_wikitext("Start {{broken [[also <ref>open\n== H ==\ntext <!-- never closed");
        assert!(doc.anomaly_count >= 3);
        assert_eq!(doc.sections.len(), 1);
    }

    #[test]
    fn char_sizes_add_up() {
        let doc = parse_wikitext("Abstract  text.\n\nMore.\n== S ==\nOne.\n\nTwo.\n=== T ===\nThree.");
        let sum: usize = doc.sections.iter().map(|s| s.char_size).sum::<usize>() + doc.abstract_size;
        assert_eq!(sum, doc.character_count());
        let pt = doc.plain_text();
        assert_eq!(pt.chars().count(), doc.character_count() + 2 * (doc.paragraphs.len() - 1));
    }
}

//! Plain-text segmentation: paragraphs, sentences, word tokens, syllables.

use std::collections::HashSet;
use std::sync::LazyLock;

use super::document::Sentence;

static ABBREVIATIONS: LazyLock<HashSet<&'static str>> = LazyLock::new(|| {
    include_str!("../../data/abbreviations.txt")
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
        .collect()
});

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Segmentation {
    pub paragraphs: Vec<String>,
    pub sentences: Vec<Sentence>,
    pub tokens: Vec<String>,
    pub syllable_counts: Vec<usize>,
}

/// Segments plain text. Total: empty input gives empty output.
pub fn segment(text: &str) -> Segmentation {
    let paragraphs = split_paragraphs(text);
    segment_paragraphs(paragraphs)
}

pub(crate) fn segment_paragraphs(paragraphs: Vec<String>) -> Segmentation {
    let mut seg = Segmentation::default();
    for p in &paragraphs {
        for (sentence_text, terminator) in split_sentences(p) {
            let tokens = tokenize(sentence_text);
            if tokens.is_empty() {
                continue;
            }
            for t in &tokens {
                seg.syllable_counts.push(syllable_count(t));
                seg.tokens.push(t.clone());
            }
            seg.sentences.push(Sentence { tokens, terminator });
        }
    }
    seg.paragraphs = paragraphs;
    seg
}

/// Collapses runs of spaces and tabs to one space and trims the line.
pub fn normalize_line(line: &str) -> String {
    let mut out = String::with_capacity(line.len());
    let mut pending_space = false;
    for c in line.chars() {
        if c == ' ' || c == '\t' || (c.is_whitespace() && c != '\n') {
            pending_space = true;
        } else {
            if pending_space && !out.is_empty() {
                out.push(' ');
            }
            pending_space = false;
            out.push(c);
        }
    }
    out
}

/// Splits on blank lines; each paragraph's lines are normalized and joined by `\n`.
pub fn split_paragraphs(text: &str) -> Vec<String> {
    let mut paragraphs = Vec::new();
    let mut current: Vec<String> = Vec::new();
    for line in text.lines() {
        let norm = normalize_line(line);
        if norm.is_empty() {
            if !current.is_empty() {
                paragraphs.push(current.join("\n"));
                current.clear();
            }
        } else {
            current.push(norm);
        }
    }
    if !current.is_empty() {
        paragraphs.push(current.join("\n"));
    }
    paragraphs
}

fn is_terminator(c: char) -> bool {
    matches!(c, '.' | '!' | '?')
}

fn is_closer(c: char) -> bool {
    matches!(c, '"' | '\'' | ')' | ']' | '\u{201d}' | '\u{2019}' | '\u{00bb}')
}

fn is_opener(c: char) -> bool {
    matches!(c, '"' | '\'' | '(' | '[' | '\u{201c}' | '\u{2018}' | '\u{00ab}')
}

/// Splits one paragraph into sentences.
///
/// A boundary is a run of `.`/`!`/`?` (plus closing quotes or brackets)
/// followed by whitespace and an uppercase letter or digit, or the end of the
/// paragraph. A period after a listed abbreviation or a single-letter initial
/// is not a boundary.
pub fn split_sentences(paragraph: &str) -> Vec<(&str, Option<char>)> {
    let chars: Vec<(usize, char)> = paragraph.char_indices().collect();
    let mut out = Vec::new();
    let mut start = 0usize;
    let mut i = 0usize;
    while i < chars.len() {
        let (pos, c) = chars[i];
        if !is_terminator(c) {
            i += 1;
            continue;
        }
        // Consume the terminator run and trailing closers.
        let mut j = i;
        let mut last_term = c;
        while j < chars.len() && is_terminator(chars[j].1) {
            last_term = chars[j].1;
            j += 1;
        }
        while j < chars.len() && is_closer(chars[j].1) {
            j += 1;
        }
        let end_byte = chars.get(j).map_or(paragraph.len(), |&(b, _)| b);
        let boundary = if j >= chars.len() {
            true
        } else if chars[j].1.is_whitespace() {
            let mut k = j;
            while k < chars.len() && chars[k].1.is_whitespace() {
                k += 1;
            }
            while k < chars.len() && is_opener(chars[k].1) {
                k += 1;
            }
            let next_ok = k < chars.len() && (chars[k].1.is_uppercase() || chars[k].1.is_ascii_digit());
            next_ok && !(c == '.' && j == i + 1 && is_abbreviation(&paragraph[start..pos]))
        } else {
            false
        };
        if boundary {
            let text = paragraph[start..end_byte].trim();
            if !text.is_empty() {
                out.push((text, Some(last_term)));
            }
            start = end_byte;
        }
        i = j.max(i + 1);
    }
    let rest = paragraph[start..].trim();
    if !rest.is_empty() {
        out.push((rest, None));
    }
    out
}

/// True if the word right before a period is an abbreviation or an initial.
fn is_abbreviation(before: &str) -> bool {
    let word: String = before
        .chars()
        .rev()
        .take_while(|c| c.is_alphanumeric() || *c == '.')
        .collect::<Vec<_>>()
        .into_iter()
        .rev()
        .collect();
    let word = word.trim_start_matches('.');
    if word.is_empty() {
        return false;
    }
    let mut cs = word.chars();
    if let (Some(first), None) = (cs.next(), cs.next()) {
        return first.is_alphabetic() && first.is_uppercase();
    }
    ABBREVIATIONS.contains(word.to_lowercase().as_str())
}

fn is_joiner(c: char) -> bool {
    matches!(c, '-' | '\'' | '\u{2019}')
}

/// Word tokens: runs of alphanumerics, with internal hyphens and apostrophes
/// kept when flanked by alphanumerics on both sides.
pub fn tokenize(text: &str) -> Vec<String> {
    let chars: Vec<char> = text.chars().collect();
    let mut tokens = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        if !chars[i].is_alphanumeric() {
            i += 1;
            continue;
        }
        let mut tok = String::new();
        while i < chars.len() {
            let c = chars[i];
            if c.is_alphanumeric() || (is_joiner(c) && i + 1 < chars.len() && chars[i + 1].is_alphanumeric()) {
                tok.push(c);
                i += 1;
            } else {
                break;
            }
        }
        tokens.push(tok);
    }
    tokens
}

fn is_vowel(c: char) -> bool {
    matches!(c, 'a' | 'e' | 'i' | 'o' | 'u' | 'y')
}

/// Heuristic syllable count: contiguous vowel groups (a, e, i, o, u, y), minus a
/// silent final `e` after a consonant unless the word ends in consonant + `le`.
/// Never less than 1.
pub fn syllable_count(token: &str) -> usize {
    let w: Vec<char> = token
        .chars()
        .filter(|c| c.is_alphabetic())
        .flat_map(char::to_lowercase)
        .collect();
    if w.is_empty() {
        return 1;
    }
    let mut count = 0usize;
    let mut prev_vowel = false;
    for &c in &w {
        let v = is_vowel(c);
        if v && !prev_vowel {
            count += 1;
        }
        prev_vowel = v;
    }
    let n = w.len();
    if n >= 2 && w[n - 1] == 'e' && !is_vowel(w[n - 2]) {
        let consonant_le = n >= 3 && w[n - 2] == 'l' && !is_vowel(w[n - 3]);
        if !consonant_le {
            count = count.saturating_sub(1);
        }
    }
    count.max(1)
}

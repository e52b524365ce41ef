//! Rule-based part-of-speech tagger.
//!
//! Known words take their most frequent Penn Treebank tag from the bundled
//! Brill lexicon. Unknown words default to `NNP` (title case), `CD`
//! (numerals) or `NN`, refined by Brill's lexical (suffix/prefix) rules.
//! Brill's contextual rules then run left to right over the sentence.
//! Lexicon and rules: `data/brill_*.txt`; see `data/README.md`.

use std::collections::HashMap;
use std::sync::LazyLock;

const LEXICON_SRC: &str = include_str!("../../data/brill_lexicon.txt");
const MORPHOLOGY_SRC: &str = include_str!("../../data/brill_morphology.txt");
const CONTEXT_SRC: &str = include_str!("../../data/brill_context.txt");

/// Version of the bundled lexicon and rule files.
pub const TAGGER_DATA_VERSION: &str = "brill-1.14-lexicon+rules/1";

static LEXICON: LazyLock<HashMap<&'static str, &'static str>> = LazyLock::new(|| {
    let mut map = HashMap::with_capacity(100_000);
    for line in LEXICON_SRC.lines() {
        if line.starts_with(";;;") {
            continue;
        }
        let mut parts = line.split_whitespace();
        if let (Some(word), Some(tag)) = (parts.next(), parts.next()) {
            map.entry(word).or_insert(tag);
        }
    }
    map
});

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum MorphCmd {
    Word,
    Char,
    HasPref,
    HasSuf,
    AddPref,
    AddSuf,
    DeletePref,
    DeleteSuf,
    GoodLeft,
    GoodRight,
}

impl MorphCmd {
    fn parse(s: &str) -> Option<Self> {
        Some(match s {
            "word" => MorphCmd::Word,
            "char" => MorphCmd::Char,
            "haspref" => MorphCmd::HasPref,
            "hassuf" => MorphCmd::HasSuf,
            "addpref" => MorphCmd::AddPref,
            "addsuf" => MorphCmd::AddSuf,
            "deletepref" => MorphCmd::DeletePref,
            "deletesuf" => MorphCmd::DeleteSuf,
            "goodleft" => MorphCmd::GoodLeft,
            "goodright" => MorphCmd::GoodRight,
            _ => return None,
        })
    }
}

#[derive(Debug, Clone)]
struct MorphRule {
    /// Required current tag for the `f`-prefixed rule forms.
    from: Option<&'static str>,
    affix: &'static str,
    cmd: MorphCmd,
    to: &'static str,
}

static MORPHOLOGY: LazyLock<Vec<MorphRule>> = LazyLock::new(|| {
    let mut rules = Vec::new();
    for line in MORPHOLOGY_SRC.lines() {
        if line.starts_with(";;;") {
            continue;
        }
        let f: Vec<&'static str> = line.split_whitespace().collect();
        if f.len() < 4 {
            continue;
        }
        let to = f[f.len() - 2];
        if let Some(cmd) = MorphCmd::parse(&f[1].to_ascii_lowercase()) {
            rules.push(MorphRule { from: None, affix: f[0], cmd, to });
        } else if let Some(cmd) = f[2]
            .to_ascii_lowercase()
            .strip_prefix('f')
            .and_then(MorphCmd::parse)
        {
            rules.push(MorphRule { from: Some(f[0]), affix: f[1], cmd, to });
        }
    }
    rules
});

#[derive(Debug, Clone)]
struct ContextRule {
    from: &'static str,
    to: &'static str,
    cmd: String,
    x: &'static str,
    y: &'static str,
}

static CONTEXT: LazyLock<Vec<ContextRule>> = LazyLock::new(|| {
    CONTEXT_SRC
        .lines()
        .filter(|l| !l.starts_with(";;;"))
        .filter_map(|line| {
            let f: Vec<&'static str> = line.split_whitespace().collect();
            (f.len() >= 4).then(|| ContextRule {
                from: f[0],
                to: f[1],
                cmd: f[2].to_ascii_lowercase(),
                x: f[3],
                y: f.get(4).copied().unwrap_or(""),
            })
        })
        .collect()
});

fn lexicon_contains(word: &str) -> bool {
    LEXICON.contains_key(word)
}

/// Python-style `istitle`: cased characters start uppercase after an uncased
/// character and stay lowercase after a cased one.
fn is_title(word: &str) -> bool {
    let mut prev_cased = false;
    let mut any_cased = false;
    for c in word.chars() {
        if c.is_uppercase() {
            if prev_cased {
                return false;
            }
            prev_cased = true;
            any_cased = true;
        } else if c.is_lowercase() {
            if !prev_cased {
                return false;
            }
            prev_cased = true;
            any_cased = true;
        } else {
            prev_cased = false;
        }
    }
    any_cased
}

fn is_numeral(word: &str) -> bool {
    word.chars().any(|c| c.is_ascii_digit())
        && word.chars().all(|c| c.is_ascii_digit() || matches!(c, '-' | ',' | '.' | ':' | '/' | '%'))
}

fn apply_morphology(word: &str, mut tag: &'static str, prev: Option<&str>, next: Option<&str>) -> &'static str {
    for r in MORPHOLOGY.iter() {
        if let Some(from) = r.from {
            if tag != from {
                continue;
            }
        }
        let x = r.affix;
        let hit = match r.cmd {
            MorphCmd::Word => word == x,
            MorphCmd::Char => word.contains(x),
            MorphCmd::HasPref => word.starts_with(x),
            MorphCmd::HasSuf => word.ends_with(x),
            MorphCmd::AddPref => lexicon_contains(&format!("{x}{word}")),
            MorphCmd::AddSuf => lexicon_contains(&format!("{word}{x}")),
            MorphCmd::DeletePref => word.strip_prefix(x).is_some_and(lexicon_contains),
            MorphCmd::DeleteSuf => word.strip_suffix(x).is_some_and(lexicon_contains),
            MorphCmd::GoodLeft => next == Some(x),
            MorphCmd::GoodRight => prev == Some(x),
        };
        if hit {
            tag = r.to;
        }
    }
    tag
}

/// Tags one sentence of word tokens.
pub fn tag_tokens<S: AsRef<str>>(tokens: &[S]) -> Vec<&'static str> {
    let words: Vec<&str> = tokens.iter().map(AsRef::as_ref).collect();
    let mut tags: Vec<Option<&'static str>> = words
        .iter()
        .enumerate()
        .map(|(i, w)| {
            LEXICON.get(w).copied().or_else(|| {
                if i == 0 {
                    LEXICON.get(w.to_lowercase().as_str()).copied()
                } else {
                    None
                }
            })
        })
        .collect();

    for i in 0..words.len() {
        if tags[i].is_some() {
            continue;
        }
        let w = words[i];
        let t = if is_title(w) {
            "NNP"
        } else if is_numeral(w) {
            "CD"
        } else {
            let prev = i.checked_sub(1).map(|j| words[j]);
            let next = words.get(i + 1).copied();
            apply_morphology(w, "NN", prev, next)
        };
        tags[i] = Some(t);
    }
    let mut tags: Vec<&'static str> = tags.into_iter().map(|t| t.unwrap_or("NN")).collect();
    apply_context(&words, &mut tags);
    tags
}

const PAD: &str = "STAART";

fn apply_context(words: &[&str], tags: &mut [&'static str]) {
    let n = words.len();
    let w = |i: isize| -> &str {
        if i < 0 || i as usize >= n {
            PAD
        } else {
            words[i as usize]
        }
    };
    for i in 0..n {
        for r in CONTEXT.iter() {
            if tags[i] != r.from && r.from != "*" {
                continue;
            }
            let ii = i as isize;
            let t = |k: isize| -> &str {
                let j = ii + k;
                if j < 0 || j as usize >= n {
                    PAD
                } else {
                    tags[j as usize]
                }
            };
            let (x, y) = (r.x, r.y);
            let hit = match r.cmd.as_str() {
                "prevtag" => x == t(-1),
                "nexttag" => x == t(1),
                "prev2tag" => x == t(-2),
                "next2tag" => x == t(2),
                "prev1or2tag" => x == t(-1) || x == t(-2),
                "next1or2tag" => x == t(1) || x == t(2),
                "prev1or2or3tag" => x == t(-1) || x == t(-2) || x == t(-3),
                "next1or2or3tag" => x == t(1) || x == t(2) || x == t(3),
                "surroundtag" => x == t(-1) && y == t(1),
                "curwd" => x == w(ii),
                "prevwd" => x == w(ii - 1),
                "nextwd" => x == w(ii + 1),
                "prev1or2wd" => x == w(ii - 1) || x == w(ii - 2),
                "next1or2wd" => x == w(ii + 1) || x == w(ii + 2),
                "prevwdtag" => x == w(ii - 1) && y == t(-1),
                "nextwdtag" => x == w(ii + 1) && y == t(1),
                "wdprevtag" => x == t(-1) && y == w(ii),
                "wdnexttag" => x == w(ii) && y == t(1),
                "wdand2aft" => x == w(ii) && y == w(ii + 2),
                "wdand2tagbfr" => x == t(-2) && y == w(ii),
                "wdand2tagaft" => x == w(ii) && y == t(2),
                "lbigram" => x == w(ii - 1) && y == w(ii),
                "rbigram" => x == w(ii) && y == w(ii + 1),
                "prevbigram" => x == t(-2) && y == t(-1),
                "nextbigram" => x == t(1) && y == t(2),
                _ => false,
            };
            if hit {
                tags[i] = r.to;
            }
        }
    }
}

//! Seeded synthetic corpora for tests, benchmarks and demonstrations.
//!
//! Articles cycle through the seven classes. Text length, section structure,
//! citation density, sentence complexity, revision activity and linking all
//! grow with the class ordinal, each with its own noise so that neighbouring
//! classes overlap. The same configuration always yields the same corpus.

use std::collections::BTreeMap;

use chrono::{DateTime, Duration, Utc};
use rand::seq::IndexedRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::corpus::{Article, Corpus, LinkGraph, LoadReport, QualityClass, Revision, RevisionHistory, UserKind};

const NOUNS: &[&str] = &[
    "city", "river", "army", "church", "team", "species", "language", "school", "railway", "album", "bridge",
    "county", "war", "king", "election", "museum", "island", "company", "village", "festival", "castle", "treaty",
    "province", "novel", "station", "temple", "harbour", "university", "mountain", "parliament", "battle", "film",
    "dynasty", "empire", "garden", "library", "market", "theatre", "canal", "tower",
];
const ADJECTIVES: &[&str] = &[
    "large", "ancient", "northern", "local", "major", "early", "small", "famous", "modern", "royal", "southern",
    "wooden", "national", "rural", "coastal", "medieval", "public", "private", "historic", "central",
];
const PAST_VERBS: &[&str] = &[
    "built", "founded", "described", "destroyed", "recorded", "opened", "captured", "restored", "expanded",
    "renamed", "designed", "abandoned",
];
const PRESENT_VERBS: &[&str] = &["includes", "remains", "contains", "serves", "covers", "hosts", "attracts", "follows"];
const ADVERBS: &[&str] = &["later", "also", "quickly", "largely", "eventually", "recently", "still", "officially"];
const SUBORDINATORS: &[&str] = &["because", "although", "while", "after", "before", "when"];
const PREPOSITIONS: &[&str] = &["in", "near", "during", "across", "under", "beside"];

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SynthConfig {
    pub articles: usize,
    pub seed: u64,
    /// Reference instant; every revision falls before it.
    pub now: DateTime<Utc>,
    /// Half-width of the uniform jitter added to each class-driven property.
    pub noise: f64,
}

impl SynthConfig {
    pub fn new(articles: usize, seed: u64, now: DateTime<Utc>) -> Self {
        SynthConfig { articles, seed, now, noise: 0.25 }
    }
}

pub fn article_id(i: usize) -> String {
    format!("art_{i:05}")
}

struct Writer<'a> {
    rng: &'a mut ChaCha8Rng,
    n_articles: usize,
    links: Vec<usize>,
    citations: usize,
}

impl Writer<'_> {
    fn pick(&mut self, words: &[&'static str]) -> &'static str {
        words.choose(self.rng).expect("nonempty word list")
    }

    /// A noun, sometimes wrapped in an internal link. Link targets favour
    /// the higher classes so that they collect more in-links.
    fn noun(&mut self, link_p: f64) -> String {
        let noun = self.pick(NOUNS);
        if self.n_articles < 2 || !self.rng.random_bool(link_p) {
            return noun.to_string();
        }
        let mut target = self.rng.random_range(0..self.n_articles);
        if self.rng.random_bool(0.5) {
            let other = self.rng.random_range(0..self.n_articles);
            if other % 7 > target % 7 {
                target = other;
            }
        }
        self.links.push(target);
        format!("[[{}|{noun}]]", article_id(target))
    }

    fn sentence(&mut self, q: f64, title: &str) -> String {
        let link_p = 0.03 + 0.12 * q;
        let templates = if self.rng.random_bool(0.15 + 0.5 * q) { 6 } else { 3 };
        let mut s = match self.rng.random_range(0..templates) {
            0 => format!(
                "The {} {} was {} in {}.",
                self.pick(ADJECTIVES),
                self.noun(link_p),
                self.pick(PAST_VERBS),
                self.rng.random_range(1200..2020)
            ),
            1 => format!("{title} {} a {} {}.", self.pick(PRESENT_VERBS), self.pick(ADJECTIVES), self.noun(link_p)),
            2 => format!("It is a {} {}.", self.pick(ADJECTIVES), self.noun(link_p)),
            3 => format!(
                "It was {} {} {} the {} {} {} the {} {}.",
                self.pick(ADVERBS),
                self.pick(PAST_VERBS),
                self.pick(SUBORDINATORS),
                self.noun(link_p),
                self.pick(PRESENT_VERBS),
                self.pick(PREPOSITIONS),
                self.pick(ADJECTIVES),
                self.noun(link_p)
            ),
            4 => format!(
                "The {} and the {} were {} by the {} {}, which {} the {} {}.",
                self.noun(link_p),
                self.noun(link_p),
                self.pick(PAST_VERBS),
                self.pick(ADJECTIVES),
                self.noun(link_p),
                self.pick(PRESENT_VERBS),
                self.pick(ADJECTIVES),
                self.noun(link_p)
            ),
            _ => format!(
                "{} the {} {} was {}, its {} {} {} the {} {}.",
                capitalize(self.pick(SUBORDINATORS)),
                self.pick(ADJECTIVES),
                self.noun(link_p),
                self.pick(PAST_VERBS),
                self.noun(link_p),
                self.pick(ADVERBS),
                self.pick(PRESENT_VERBS),
                self.pick(ADJECTIVES),
                self.noun(link_p)
            ),
        };
        let r: f64 = self.rng.random();
        if r < 0.02 {
            s = format!("Why was the {} {}?", self.pick(NOUNS), self.pick(PAST_VERBS));
        } else if r < 0.03 {
            s = format!("The {} {} again!", self.pick(NOUNS), self.pick(PRESENT_VERBS));
        }
        if self.rng.random_bool(0.02 + 0.35 * q) {
            self.citations += 1;
            s.push_str(&format!(
                "<ref>{{{{cite web |title={} |url=http://example.org/ref/{}}}}}</ref>",
                self.pick(NOUNS),
                self.citations
            ));
        }
        s
    }

    fn paragraph(&mut self, q: f64, title: &str) -> String {
        let n = 2 + self.rng.random_range(0..=2 + (q * 4.0).round() as usize);
        (0..n).map(|_| self.sentence(q, title)).collect::<Vec<_>>().join(" ")
    }
}

fn capitalize(w: &str) -> String {
    let mut c = w.chars();
    match c.next() {
        Some(f) => f.to_uppercase().chain(c).collect(),
        None => String::new(),
    }
}

fn hash(rng: &mut ChaCha8Rng) -> String {
    format!("{:016x}{:016x}{:08x}", rng.random::<u64>(), rng.random::<u64>(), rng.random::<u32>())
}

/// Class-driven level in `[0, 1]` with fresh jitter.
fn level(rng: &mut ChaCha8Rng, q: f64, noise: f64) -> f64 {
    if noise <= 0.0 {
        return q;
    }
    (q + rng.random_range(-noise..noise)).clamp(0.0, 1.0)
}

struct Generated {
    wikitext: String,
    links: Vec<usize>,
}

fn wikitext(rng: &mut ChaCha8Rng, q: f64, noise: f64, title: &str, n_articles: usize, idx: usize) -> Generated {
    let sections = (level(rng, q, noise) * 8.0).round() as usize + rng.random_range(0..2);
    let paragraphs = 1 + (level(rng, q, noise) * 3.0).round() as usize;
    let image_p = 0.05 + 0.5 * level(rng, q, noise);
    let sub_p = 0.4 * level(rng, q, noise);
    let externals = (level(rng, q, noise) * 5.0).round() as usize;
    let text_q = level(rng, q, noise);

    let mut w = Writer { rng, n_articles, links: Vec::new(), citations: 0 };
    let mut out = String::new();
    let abstract_paragraphs = 1 + (text_q * 2.0).round() as usize;
    for i in 0..abstract_paragraphs {
        let mut p = w.paragraph(text_q, title);
        if i == 0 {
            p = format!("'''{title}''' is a {} {}. {p}", w.pick(ADJECTIVES), w.pick(NOUNS));
        }
        out.push_str(&p);
        out.push_str("\n\n");
    }
    for s in 0..sections {
        out.push_str(&format!("== {} {} ==\n", capitalize(w.pick(ADJECTIVES)), w.pick(NOUNS)));
        if w.rng.random_bool(image_p) {
            out.push_str(&format!(
                "[[File:{}_{idx}_{s}.jpg|thumb|The {} {}.]]\n",
                capitalize(w.pick(NOUNS)),
                w.pick(ADJECTIVES),
                w.pick(NOUNS)
            ));
        }
        for _ in 0..paragraphs {
            let p = w.paragraph(text_q, title);
            out.push_str(&p);
            out.push_str("\n\n");
        }
        if w.rng.random_bool(sub_p) {
            out.push_str(&format!("=== {} ===\n", capitalize(w.pick(NOUNS))));
            let p = w.paragraph(text_q, title);
            out.push_str(&p);
            out.push_str("\n\n");
        }
    }
    if externals > 0 {
        out.push_str("== External links ==\n");
        for k in 0..externals {
            out.push_str(&format!("* [http://example.org/{idx}/{k} {} site]\n", capitalize(w.pick(NOUNS))));
        }
    }
    Generated { wikitext: out, links: w.links }
}

fn history(rng: &mut ChaCha8Rng, id: &str, q: f64, noise: f64, now: DateTime<Utc>, text: &str) -> RevisionHistory {
    let activity = level(rng, q, noise);
    let count = 2 + (activity.powf(1.5) * 150.0 * rng.random_range(0.5..1.5)).round() as usize;
    let n_users = 1 + (count as f64 * rng.random_range(0.15..0.5)).round() as usize;
    let anon_share = (0.55 - 0.4 * level(rng, q, noise)).max(0.05);
    let users: Vec<(String, UserKind)> = (0..n_users)
        .map(|_| {
            if rng.random_bool(anon_share) {
                (format!("10.{}.{}.{}", rng.random_range(0..4), rng.random_range(0..256), rng.random_range(1..255)), UserKind::Anonymous)
            } else {
                (format!("User{}", rng.random_range(0..800)), UserKind::Registered)
            }
        })
        .collect();
    let max_age = 200.0 + 4000.0 * level(rng, q, noise);
    let age_days = rng.random_range(30.0..max_age);
    let span = (age_days * 86_400.0) as i64;
    let created = now - Duration::seconds(span);
    let revert_p = 0.02 + 0.06 * level(rng, q, noise);

    let mut times: Vec<i64> = (0..count).map(|_| rng.random_range(0..span)).collect();
    times.sort_unstable();
    times[0] = 0;
    let mut hashes: Vec<String> = Vec::with_capacity(count);
    let mut revisions = Vec::with_capacity(count);
    for (k, t) in times.into_iter().enumerate() {
        // Skewed toward the first users so a few editors dominate.
        let u: f64 = rng.random();
        let (user, kind) = users[((u * u) * n_users as f64) as usize].clone();
        let h = if k >= 2 && rng.random_bool(revert_p) { hashes[k - 2].clone() } else { hash(rng) };
        hashes.push(h.clone());
        revisions.push(Revision {
            revision_id: format!("{id}-{k}"),
            timestamp: created + Duration::seconds(t),
            user_key: user,
            user_kind: kind,
            content_hash: h,
            size_bytes: (text.len() as u64 * (k as u64 + 1)) / count as u64,
        });
    }
    let mut h = RevisionHistory::new(id, revisions);
    h.discussion_count = (level(rng, q, noise) * 40.0 * rng.random_range(0.0..1.5)).round() as u64;
    if rng.random_bool(0.95) {
        let drop_p = rng.random_range(0.0..0.4);
        let old: Vec<&str> = text.lines().filter(|_| !rng.random_bool(drop_p)).collect();
        h.snapshot_text_now = Some(text.to_string());
        h.snapshot_text_3mo = Some(old.join("\n"));
    }
    h
}

/// Builds a corpus of `cfg.articles` articles. Article `i` has id
/// `art_{i:05}` and class `QualityClass::ALL[i % 7]`.
pub fn generate(cfg: &SynthConfig) -> Corpus {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut articles = Vec::with_capacity(cfg.articles);
    let mut histories = BTreeMap::new();
    let mut graph = LinkGraph::new();
    for i in 0..cfg.articles {
        graph.add_node(&article_id(i));
    }
    for i in 0..cfg.articles {
        let class = QualityClass::ALL[i % 7];
        let q = class.ordinal() as f64 / 6.0;
        let id = article_id(i);
        let title = capitalize(&format!("{} of {}", NOUNS[i % NOUNS.len()], ADJECTIVES[i % ADJECTIVES.len()]));
        let g = wikitext(&mut rng, q, cfg.noise, &title, cfg.articles, i);
        let mut outgoing = 0u64;
        for &t in &g.links {
            if graph.add_edge(&id, &article_id(t)) == crate::corpus::EdgeOutcome::Added {
                outgoing += 1;
            }
        }
        let red = rng.random_range(0..=1 + ((1.0 - q) * 5.0).round() as u64);
        let node = graph.index_of(&id).expect("declared above");
        graph.set_red_links(node, red);
        let translations = (level(&mut rng, q, cfg.noise) * 40.0 * rng.random_range(0.5..1.5)).round() as u64;
        graph.set_translations(node, translations);
        histories.insert(id.clone(), history(&mut rng, &id, q, cfg.noise, cfg.now, &g.wikitext));
        articles.push(Article {
            id,
            title,
            wikitext: g.wikitext,
            label: Some(class),
            language_version_count: translations,
            raw_link_count: outgoing + red,
        });
    }
    Corpus { articles, histories, graph, report: LoadReport::default() }
}

#[cfg(test)]
mod tests {
    use super::*;
    use chrono::TimeZone;

    fn now() -> DateTime<Utc> {
        Utc.with_ymd_and_hms(2024, 1, 1, 0, 0, 0).unwrap()
    }

    #[test]
    fn deterministic_and_balanced() {
        let cfg = SynthConfig::new(70, 5, now());
        let a = generate(&cfg);
        let b = generate(&cfg);
        assert_eq!(a.articles, b.articles);
        assert_eq!(a.histories, b.histories);
        assert_eq!(a.graph, b.graph);
        for c in QualityClass::ALL {
            assert_eq!(a.articles.iter().filter(|x| x.label == Some(c)).count(), 10);
        }
        assert!(a.histories.values().flat_map(|h| &h.revisions).all(|r| r.timestamp <= now()));
    }

    #[test]
    fn higher_classes_are_longer() {
        let c = generate(&SynthConfig::new(140, 1, now()));
        let mean_len = |k: usize| {
            let v: Vec<usize> = c.articles.iter().skip(k).step_by(7).map(|a| a.wikitext.len()).collect();
            v.iter().sum::<usize>() as f64 / v.len() as f64
        };
        assert!(mean_len(6) > 2.0 * mean_len(0));
    }
}

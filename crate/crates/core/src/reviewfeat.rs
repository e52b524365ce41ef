//! Review features mined from revision histories, and ProbReview.
//!
//! One revision counts as one review. Users are identified by `user_key`; a
//! user's kind is taken from their first revision. Occasional users edited the
//! article fewer than four times. A revert is a revision whose content hash
//! equals the hash of an earlier revision of the same article. The recent
//! window covers the 90 days up to `now`. The most active users are the top
//! `max(1, ceil(0.05 · users))` by edit count, ties broken by user key.
//!
//! `modified_lines_rate` compares the two text snapshots line by line: lines
//! of the current text outside a longest common subsequence with the text
//! from three months earlier, divided by the current line count. Without both
//! snapshots it is `0.0`.

use std::collections::{BTreeMap, HashMap, HashSet};

use chrono::{DateTime, Duration, Utc};
use serde::{Deserialize, Serialize};

use crate::corpus::{RevisionHistory, UserKind};
use crate::feature::FeatureVector;
use crate::ratio;

pub const REVIEW_FEATURES: [&str; 30] = [
    "age_days",
    "age_per_review",
    "reviews_per_day",
    "reviews_per_user",
    "reviews_per_user_stddev",
    "discussion_count",
    "review_count",
    "user_count",
    "registered_user_count",
    "anonymous_user_count",
    "occasional_user_count",
    "registered_user_rate",
    "anonymous_user_rate",
    "occasional_user_rate",
    "registered_anonymous_user_ratio",
    "registered_review_count",
    "anonymous_review_count",
    "occasional_review_count",
    "registered_review_rate",
    "anonymous_review_rate",
    "occasional_review_rate",
    "registered_anonymous_review_ratio",
    "revert_count",
    "revert_review_ratio",
    "diversity",
    "modified_lines_rate",
    "last_3mo_review_count",
    "last_3mo_review_rate",
    "most_active_review_count",
    "most_active_review_rate",
];

pub const PROB_REVIEW_FEATURE: &str = "prob_review";

/// Users with fewer edits than this are occasional.
pub const OCCASIONAL_THRESHOLD: usize = 4;
pub const RECENT_WINDOW_DAYS: i64 = 90;
pub const MOST_ACTIVE_FRACTION: f64 = 0.05;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct UserActivity {
    pub user_key: String,
    pub kind: UserKind,
    pub edit_count: usize,
}

impl UserActivity {
    pub fn is_occasional(&self) -> bool {
        self.edit_count < OCCASIONAL_THRESHOLD
    }
}

/// Per-user activity on one article, sorted by user key.
pub fn user_activity(h: &RevisionHistory) -> Vec<UserActivity> {
    let mut users: BTreeMap<&str, UserActivity> = BTreeMap::new();
    for r in &h.revisions {
        users
            .entry(r.user_key.as_str())
            .or_insert_with(|| UserActivity { user_key: r.user_key.clone(), kind: r.user_kind, edit_count: 0 })
            .edit_count += 1;
    }
    users.into_values().collect()
}

fn seconds_to_days(d: Duration) -> f64 {
    d.num_milliseconds() as f64 / 86_400_000.0
}

/// Number of revisions repeating the content hash of an earlier revision.
pub fn revert_count(h: &RevisionHistory) -> usize {
    let mut seen = HashSet::new();
    h.revisions.iter().filter(|r| !seen.insert(r.content_hash.as_str())).count()
}

/// Length of the longest common subsequence of two line sequences.
pub fn lcs_len<T: PartialEq>(a: &[T], b: &[T]) -> usize {
    let prefix = a.iter().zip(b).take_while(|(x, y)| x == y).count();
    let (a, b) = (&a[prefix..], &b[prefix..]);
    let suffix = a.iter().rev().zip(b.iter().rev()).take_while(|(x, y)| x == y).count();
    let (a, b) = (&a[..a.len() - suffix], &b[..b.len() - suffix]);
    let mut prev = vec![0usize; b.len() + 1];
    let mut cur = vec![0usize; b.len() + 1];
    for x in a {
        for (j, y) in b.iter().enumerate() {
            cur[j + 1] = if x == y { prev[j] + 1 } else { cur[j].max(prev[j + 1]) };
        }
        std::mem::swap(&mut prev, &mut cur);
    }
    prefix + suffix + prev[b.len()]
}

/// Changed-line rate between the current and three-month-old snapshots, or
/// `None` when either snapshot is missing.
pub fn modified_lines_rate(h: &RevisionHistory) -> Option<f64> {
    let now = h.snapshot_text_now.as_deref()?;
    let old = h.snapshot_text_3mo.as_deref()?;
    let now_lines: Vec<&str> = now.lines().collect();
    let old_lines: Vec<&str> = old.lines().collect();
    let common = lcs_len(&now_lines, &old_lines);
    Some(ratio((now_lines.len() - common) as f64, now_lines.len() as f64))
}

/// The 30 review features of one article as of `now`.
pub fn review_features(h: &RevisionHistory, now: DateTime<Utc>) -> FeatureVector {
    let reviews = h.revisions.len() as f64;
    let users = user_activity(h);
    let user_count = users.len() as f64;

    let age_days = h.revisions.first().map_or(0.0, |r| seconds_to_days(now - r.timestamp).max(0.0));

    let per_user: Vec<f64> = users.iter().map(|u| u.edit_count as f64).collect();
    let mean_per_user = ratio(reviews, user_count);
    let stddev = if per_user.is_empty() {
        0.0
    } else {
        (per_user.iter().map(|c| (c - mean_per_user).powi(2)).sum::<f64>() / user_count).sqrt()
    };

    let kind_of: HashMap<&str, &UserActivity> = users.iter().map(|u| (u.user_key.as_str(), u)).collect();
    let count_users = |f: &dyn Fn(&UserActivity) -> bool| users.iter().filter(|u| f(u)).count() as f64;
    let count_reviews = |f: &dyn Fn(&UserActivity) -> bool| {
        h.revisions.iter().filter(|r| f(kind_of[r.user_key.as_str()])).count() as f64
    };
    let registered = |u: &UserActivity| u.kind == UserKind::Registered;
    let anonymous = |u: &UserActivity| u.kind == UserKind::Anonymous;
    let occasional = |u: &UserActivity| u.is_occasional();

    let reg_users = count_users(&registered);
    let anon_users = count_users(&anonymous);
    let occ_users = count_users(&occasional);
    let reg_reviews = count_reviews(&registered);
    let anon_reviews = count_reviews(&anonymous);
    let occ_reviews = count_reviews(&occasional);

    let reverts = revert_count(h) as f64;
    let window_start = now - Duration::days(RECENT_WINDOW_DAYS);
    let recent = h.revisions.iter().filter(|r| r.timestamp >= window_start && r.timestamp <= now).count() as f64;

    let mut by_activity: Vec<&UserActivity> = users.iter().collect();
    by_activity.sort_by(|a, b| b.edit_count.cmp(&a.edit_count).then_with(|| a.user_key.cmp(&b.user_key)));
    let top_k = if users.is_empty() { 0 } else { ((MOST_ACTIVE_FRACTION * user_count).ceil() as usize).max(1) };
    let most_active: f64 = by_activity.iter().take(top_k).map(|u| u.edit_count as f64).sum();

    let mut fv = FeatureVector::with_capacity(30);
    fv.push("age_days", age_days);
    fv.push("age_per_review", ratio(age_days, reviews));
    fv.push("reviews_per_day", ratio(reviews, age_days));
    fv.push("reviews_per_user", mean_per_user);
    fv.push("reviews_per_user_stddev", stddev);
    fv.push("discussion_count", h.discussion_count as f64);
    fv.push("review_count", reviews);
    fv.push("user_count", user_count);
    fv.push("registered_user_count", reg_users);
    fv.push("anonymous_user_count", anon_users);
    fv.push("occasional_user_count", occ_users);
    fv.push("registered_user_rate", ratio(reg_users, user_count));
    fv.push("anonymous_user_rate", ratio(anon_users, user_count));
    fv.push("occasional_user_rate", ratio(occ_users, user_count));
    fv.push("registered_anonymous_user_ratio", ratio(reg_users, anon_users));
    fv.push("registered_review_count", reg_reviews);
    fv.push("anonymous_review_count", anon_reviews);
    fv.push("occasional_review_count", occ_reviews);
    fv.push("registered_review_rate", ratio(reg_reviews, reviews));
    fv.push("anonymous_review_rate", ratio(anon_reviews, reviews));
    fv.push("occasional_review_rate", ratio(occ_reviews, reviews));
    fv.push("registered_anonymous_review_ratio", ratio(reg_reviews, anon_reviews));
    fv.push("revert_count", reverts);
    fv.push("revert_review_ratio", ratio(reverts, reviews));
    fv.push("diversity", ratio(user_count, reviews));
    fv.push("modified_lines_rate", modified_lines_rate(h).unwrap_or(0.0));
    fv.push("last_3mo_review_count", recent);
    fv.push("last_3mo_review_rate", ratio(recent, reviews));
    fv.push("most_active_review_count", most_active);
    fv.push("most_active_review_rate", ratio(most_active, reviews));
    fv
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct ProbReviewParams {
    pub max_iterations: usize,
    pub tol: f64,
}

impl Default for ProbReviewParams {
    fn default() -> Self {
        ProbReviewParams { max_iterations: 100, tol: 1e-8 }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ProbReviewScores {
    pub article_quality: BTreeMap<String, f64>,
    pub user_authority: BTreeMap<String, f64>,
    pub iterations: usize,
    pub converged: bool,
}

fn max_normalize(v: &mut [f64]) {
    let max = v.iter().copied().fold(0.0_f64, f64::max);
    if max > 0.0 {
        v.iter_mut().for_each(|x| *x /= max);
    }
}

/// Mutual reinforcement between article quality and reviewer authority.
///
/// Starting from 1.0 everywhere, each round sets an article's quality to the
/// sum of its distinct reviewers' authorities, then each user's authority to
/// the sum of the new qualities of the articles they reviewed; both vectors
/// are scaled to a maximum of 1. Stops once no score moves by `tol` or more.
pub fn prob_review(histories: &BTreeMap<String, RevisionHistory>, params: ProbReviewParams) -> ProbReviewScores {
    let user_keys: Vec<&str> = histories
        .values()
        .flat_map(|h| h.revisions.iter().map(|r| r.user_key.as_str()))
        .collect::<std::collections::BTreeSet<_>>()
        .into_iter()
        .collect();
    let user_idx: HashMap<&str, usize> = user_keys.iter().enumerate().map(|(i, &u)| (u, i)).collect();
    let reviewers: Vec<Vec<usize>> = histories
        .values()
        .map(|h| {
            let mut r: Vec<usize> = h.revisions.iter().map(|r| user_idx[r.user_key.as_str()]).collect();
            r.sort_unstable();
            r.dedup();
            r
        })
        .collect();
    let mut reviewed: Vec<Vec<usize>> = vec![Vec::new(); user_keys.len()];
    for (a, rs) in reviewers.iter().enumerate() {
        for &u in rs {
            reviewed[u].push(a);
        }
    }

    let mut quality = vec![1.0; reviewers.len()];
    let mut authority = vec![1.0; user_keys.len()];
    let mut iterations = 0;
    let mut converged = false;
    while iterations < params.max_iterations.max(1) {
        iterations += 1;
        let mut q: Vec<f64> = reviewers.iter().map(|rs| rs.iter().map(|&u| authority[u]).sum()).collect();
        max_normalize(&mut q);
        let mut au: Vec<f64> = reviewed.iter().map(|as_| as_.iter().map(|&a| q[a]).sum()).collect();
        max_normalize(&mut au);
        let change = quality
            .iter()
            .zip(&q)
            .chain(authority.iter().zip(&au))
            .map(|(x, y)| (x - y).abs())
            .fold(0.0_f64, f64::max);
        quality = q;
        authority = au;
        if change < params.tol {
            converged = true;
            break;
        }
    }

    ProbReviewScores {
        article_quality: histories.keys().cloned().zip(quality).collect(),
        user_authority: user_keys.iter().map(|u| u.to_string()).zip(authority).collect(),
        iterations,
        converged,
    }
}

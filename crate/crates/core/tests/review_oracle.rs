//! Review features of a seeded 40-revision history against a brute-force
//! recount.

use std::collections::HashMap;

use approx::assert_abs_diff_eq;
use chrono::{DateTime, Duration, TimeZone, Utc};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use wikiqual_core::corpus::{Revision, UserKind};
use wikiqual_core::reviewfeat::{review_features, REVIEW_FEATURES};
use wikiqual_core::RevisionHistory;

fn now() -> DateTime<Utc> {
    Utc.with_ymd_and_hms(2023, 6, 1, 0, 0, 0).unwrap()
}

fn fixture(seed: u64) -> RevisionHistory {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let users = [
        ("Alice", UserKind::Registered),
        ("Bob", UserKind::Registered),
        ("Carol", UserKind::Registered),
        ("192.0.2.1", UserKind::Anonymous),
        ("192.0.2.7", UserKind::Anonymous),
        ("Dan", UserKind::Registered),
        ("198.51.100.3", UserKind::Anonymous),
    ];
    let mut revs = Vec::new();
    for i in 0..40 {
        let (u, k) = users[rng.random_range(0..users.len())];
        let minutes = rng.random_range(0..(400 * 24 * 60));
        let hash = if i > 3 && rng.random_bool(0.2) { format!("h{}", rng.random_range(0..i)) } else { format!("h{i}") };
        revs.push(Revision {
            revision_id: i.to_string(),
            timestamp: now() - Duration::minutes(minutes),
            user_key: u.into(),
            user_kind: k,
            content_hash: hash,
            size_bytes: 0,
        });
    }
    let mut h = RevisionHistory::new("fixture", revs);
    h.discussion_count = 7;
    h.snapshot_text_now = Some("a\nb\nc\nd\ne\nf\ng".into());
    h.snapshot_text_3mo = Some("a\nx\nc\ne\ny\ng\nz".into());
    h
}

fn div(a: f64, b: f64) -> f64 {
    if b == 0.0 {
        0.0
    } else {
        a / b
    }
}

fn lcs_table(a: &[&str], b: &[&str]) -> usize {
    let mut t = vec![vec![0usize; b.len() + 1]; a.len() + 1];
    for i in 1..=a.len() {
        for j in 1..=b.len() {
            t[i][j] = if a[i - 1] == b[j - 1] { t[i - 1][j - 1] + 1 } else { t[i - 1][j].max(t[i][j - 1]) };
        }
    }
    t[a.len()][b.len()]
}

fn brute(h: &RevisionHistory, now: DateTime<Utc>) -> HashMap<&'static str, f64> {
    let revs = &h.revisions;
    let n = revs.len() as f64;
    let first = revs.iter().map(|r| r.timestamp).min().unwrap();
    let age = (now - first).num_seconds() as f64 / 86_400.0;

    let mut edits: HashMap<&str, usize> = HashMap::new();
    let mut kind: HashMap<&str, UserKind> = HashMap::new();
    for r in revs {
        *edits.entry(&r.user_key).or_insert(0) += 1;
        kind.entry(&r.user_key).or_insert(r.user_kind);
    }
    let users = edits.len() as f64;
    let mean = n / users;
    let var = edits.values().map(|&e| (e as f64 - mean).powi(2)).sum::<f64>() / users;

    let mut reg_u = 0.0;
    let mut anon_u = 0.0;
    let mut occ_u = 0.0;
    for (u, &e) in &edits {
        match kind[u] {
            UserKind::Registered => reg_u += 1.0,
            UserKind::Anonymous => anon_u += 1.0,
        }
        if e < 4 {
            occ_u += 1.0;
        }
    }
    let mut reg_r = 0.0;
    let mut anon_r = 0.0;
    let mut occ_r = 0.0;
    for r in revs {
        match kind[r.user_key.as_str()] {
            UserKind::Registered => reg_r += 1.0,
            UserKind::Anonymous => anon_r += 1.0,
        }
        if edits[r.user_key.as_str()] < 4 {
            occ_r += 1.0;
        }
    }

    let mut reverts = 0.0;
    for (i, r) in revs.iter().enumerate() {
        if revs[..i].iter().any(|p| p.content_hash == r.content_hash) {
            reverts += 1.0;
        }
    }

    let now_lines: Vec<&str> = h.snapshot_text_now.as_deref().unwrap().lines().collect();
    let old_lines: Vec<&str> = h.snapshot_text_3mo.as_deref().unwrap().lines().collect();
    let modified = (now_lines.len() - lcs_table(&now_lines, &old_lines)) as f64 / now_lines.len() as f64;

    let cutoff = now - Duration::days(90);
    let recent = revs.iter().filter(|r| r.timestamp >= cutoff && r.timestamp <= now).count() as f64;

    let k = ((users * 0.05).ceil() as usize).max(1);
    let mut ranked: Vec<(&str, usize)> = edits.iter().map(|(u, e)| (*u, *e)).collect();
    ranked.sort_by(|a, b| b.1.cmp(&a.1).then(a.0.cmp(b.0)));
    let top: f64 = ranked[..k].iter().map(|x| x.1 as f64).sum();

    HashMap::from([
        ("age_days", age),
        ("age_per_review", age / n),
        ("reviews_per_day", n / age),
        ("reviews_per_user", mean),
        ("reviews_per_user_stddev", var.sqrt()),
        ("discussion_count", h.discussion_count as f64),
        ("review_count", n),
        ("user_count", users),
        ("registered_user_count", reg_u),
        ("anonymous_user_count", anon_u),
        ("occasional_user_count", occ_u),
        ("registered_user_rate", reg_u / users),
        ("anonymous_user_rate", anon_u / users),
        ("occasional_user_rate", occ_u / users),
        ("registered_anonymous_user_ratio", div(reg_u, anon_u)),
        ("registered_review_count", reg_r),
        ("anonymous_review_count", anon_r),
        ("occasional_review_count", occ_r),
        ("registered_review_rate", reg_r / n),
        ("anonymous_review_rate", anon_r / n),
        ("occasional_review_rate", occ_r / n),
        ("registered_anonymous_review_ratio", div(reg_r, anon_r)),
        ("revert_count", reverts),
        ("revert_review_ratio", reverts / n),
        ("diversity", users / n),
        ("modified_lines_rate", modified),
        ("last_3mo_review_count", recent),
        ("last_3mo_review_rate", recent / n),
        ("most_active_review_count", top),
        ("most_active_review_rate", top / n),
    ])
}

#[test]
fn forty_revisions_match_brute_force() {
    for seed in [1, 2, 3] {
        let h = fixture(seed);
        assert_eq!(h.revisions.len(), 40);
        let expected = brute(&h, now());
        let got = review_features(&h, now());
        assert_eq!(got.len(), 30);
        for name in REVIEW_FEATURES {
            assert_abs_diff_eq!(got.get(name).unwrap(), expected[name], epsilon = 1e-9);
        }
        assert!(expected["revert_count"] > 0.0);
        assert!(expected["last_3mo_review_count"] > 0.0);
    }
}

#[test]
fn missing_snapshot_gives_zero_rate() {
    let mut h = fixture(1);
    h.snapshot_text_3mo = None;
    assert_eq!(review_features(&h, now()).get("modified_lines_rate"), Some(0.0));
}

#[test]
fn empty_history_is_all_zero() {
    let h = RevisionHistory::new("e", Vec::new());
    let fv = review_features(&h, now());
    assert!(fv.values().all(|v| v == 0.0));
}

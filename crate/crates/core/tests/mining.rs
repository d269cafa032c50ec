mod common;

use std::collections::BTreeSet;
use std::fs;

use chrono::{DateTime, TimeZone, Utc};
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use depcrit_core::gitmetrics::{
    self, author_counts, bus_factor, compute_repo_metrics, count_file_lines, count_loc, project_age,
    read_commit_stream, CommitRecord, CommitSource, MetricsError,
};

fn at(ts: i64) -> DateTime<Utc> {
    Utc.timestamp_opt(ts, 0).unwrap()
}

fn history() -> impl Strategy<Value = Vec<CommitRecord>> {
    prop::collection::vec((0usize..8, 946_684_800i64..1_700_000_000), 1..80).prop_map(|v| {
        v.into_iter()
            .map(|(a, ts)| CommitRecord {
                author_name: format!("Dev {a}"),
                author_email: format!("dev{a}@example.org"),
                timestamp: at(ts),
            })
            .collect()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn bus_factor_ignores_commit_order(commits in history(), seed in any::<u64>()) {
        let mut shuffled = commits.clone();
        shuffled.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
        prop_assert_eq!(bus_factor(&commits, 0.8).unwrap(), bus_factor(&shuffled, 0.8).unwrap());
    }

    #[test]
    fn bus_factor_ignores_author_names(commits in history(), shift in 1usize..50) {
        // relabeling keeps the multiset of per-author counts
        let renamed: Vec<CommitRecord> = commits
            .iter()
            .map(|c| CommitRecord {
                author_email: c.author_email.replace("dev", &format!("maintainer{shift}-")),
                ..c.clone()
            })
            .collect();
        prop_assert_eq!(bus_factor(&commits, 0.8).unwrap(), bus_factor(&renamed, 0.8).unwrap());
    }

    #[test]
    fn threshold_extremes(commits in history()) {
        let authors = author_counts(&commits).len();
        prop_assert_eq!(bus_factor(&commits, 1.0).unwrap(), authors);
        prop_assert_eq!(bus_factor(&commits, f64::MIN_POSITIVE).unwrap(), 1);
    }

    #[test]
    fn bus_factor_bounded_by_author_count(commits in history(), t in 0.01f64..=1.0) {
        let b = bus_factor(&commits, t).unwrap();
        prop_assert!(b >= 1 && b <= author_counts(&commits).len());
    }

    #[test]
    fn age_survives_dropping_later_commits(commits in history(), drop in any::<prop::sample::Index>()) {
        let as_of = at(1_710_720_000);
        let earliest = commits.iter().map(|c| c.timestamp).min().unwrap();
        let victim = drop.index(commits.len());
        prop_assume!(commits[victim].timestamp != earliest || commits.iter().filter(|c| c.timestamp == earliest).count() > 1);
        let mut fewer = commits.clone();
        fewer.remove(victim);
        prop_assert_eq!(project_age(&commits, as_of).unwrap(), project_age(&fewer, as_of).unwrap());
    }

    #[test]
    fn loc_is_the_sum_of_file_counts(files in prop::collection::vec(("[a-z]{1,8}", "[a-z \n]{0,200}"), 1..8)) {
        let dir = tempfile::tempdir().unwrap();
        let mut expected = 0u64;
        let mut seen = BTreeSet::new();
        for (name, body) in &files {
            if !seen.insert(name.clone()) {
                continue;
            }
            fs::write(dir.path().join(name), body).unwrap();
            expected += body.lines().count() as u64;
        }
        prop_assert_eq!(count_loc(dir.path()).unwrap(), expected);

        fs::write(dir.path().join("blob.bin"), [0u8, 159, 146, 150, b'\n', 0, b'\n']).unwrap();
        prop_assert_eq!(count_loc(dir.path()).unwrap(), expected);
    }
}

#[test]
fn loc_skips_git_and_counts_unterminated_last_line() {
    let dir = tempfile::tempdir().unwrap();
    fs::create_dir_all(dir.path().join(".git/objects")).unwrap();
    fs::write(dir.path().join(".git/config"), "a\nb\nc\n").unwrap();
    fs::create_dir_all(dir.path().join("src/nested")).unwrap();
    fs::write(dir.path().join("src/main.c"), "int main() {\n  return 0;\n}").unwrap();
    fs::write(dir.path().join("src/nested/empty.h"), "").unwrap();
    fs::write(dir.path().join("README"), "one\r\ntwo\r\n").unwrap();
    assert_eq!(count_file_lines(&dir.path().join("src/main.c")).unwrap(), Some(3));
    assert_eq!(count_loc(dir.path()).unwrap(), 5);
}

fn scripted(ts: i64, email: &str, name: &str, path: &str, content: &str) -> common::ScriptedCommit {
    common::ScriptedCommit {
        timestamp: ts,
        email: email.into(),
        name: name.into(),
        path: path.into(),
        content: content.into(),
    }
}

#[test]
fn reads_history_from_a_real_clone() {
    let dir = tempfile::tempdir().unwrap();
    let repo = dir.path().join("repo");
    let base = 1_262_304_000; // 2010-01-01
    let day = 86_400;
    common::build_git_repo(
        &repo,
        &[
            scripted(base, "Ann@Example.org", "Ann", "a.c", "1\n"),
            scripted(base + 40 * day, "ann@example.org", "Ann A.", "a.c", "1\n2\n"),
            scripted(base + 41 * day, "bo@example.org", "Bo", "b.c", "x\n"),
            scripted(base + 70 * day, "ann@example.org", "Ann", "a.c", "1\n2\n3\n"),
            scripted(base + 400 * day, "cy@example.org", "Cy", "docs/c.md", "# c\n\ntext\n"),
            scripted(base + 401 * day, "ann@example.org", "Ann", "b.c", "x\ny\n"),
            scripted(base + 402 * day, "ann@example.org", "Ann", "bin.dat", "\0\0\0"),
        ],
    );

    let commits = read_commit_stream(CommitSource::GitRepo(&repo)).unwrap();
    assert_eq!(commits.len(), 7);
    assert_eq!(commits.iter().map(|c| c.timestamp).min(), Some(at(base)));
    // Ann x5 (email case folded), Bo, Cy: 5/7 < 0.8, 6/7 >= 0.8
    assert_eq!(author_counts(&commits).len(), 3);
    assert_eq!(bus_factor(&commits, 0.8).unwrap(), 2);

    let as_of = at(base + 1000 * day);
    let m = compute_repo_metrics("https://example.org/repo", &commits, Some(&repo), as_of, 0.8).unwrap();
    assert_eq!(m.age_days, 1000);
    assert_eq!((m.commit_count, m.author_count, m.bus_factor), (7, 3, 2));
    assert_eq!(m.loc, Some(3 + 2 + 3));
    assert_eq!(m.future_commits, 0);
    let total: u64 = m.activity.iter().map(|(_, n)| n).sum();
    assert_eq!(total, 7);
    assert_eq!(m.activity.first().map(|(k, _)| k.as_str()), Some("2010-01"));
    assert_eq!(m.activity.last().map(|(k, _)| k.as_str()), Some("2011-02"));
    assert_eq!(m.activity.len(), 14);
}

#[test]
fn not_a_repository_is_reported() {
    let dir = tempfile::tempdir().unwrap();
    let err = read_commit_stream(CommitSource::GitRepo(dir.path())).unwrap_err();
    assert!(matches!(err, MetricsError::GitFailed { .. }), "{err:?}");
}

#[test]
fn interchange_fixture_matches_its_clone_twin() {
    let dir = tempfile::tempdir().unwrap();
    common::stage_repos(dir.path());
    let from_git = read_commit_stream(CommitSource::GitRepo(&dir.path().join("zlib"))).unwrap();
    let log: String = from_git
        .iter()
        .map(|c| format!("{}\t{}\t{}\n", c.timestamp.timestamp(), c.author_email, c.author_name))
        .collect();
    fs::write(dir.path().join("twin.tsv"), log).unwrap();
    let from_log = read_commit_stream(CommitSource::Interchange(&dir.path().join("twin.tsv"))).unwrap();
    assert_eq!(from_git, from_log);
    assert!(gitmetrics::parse_commit_log("1700000000\tx@y\n".as_bytes()).is_err());
}

//! Maintenance metrics mined from git history: bus factor, project age,
//! lines of text, and commit activity.

use std::collections::{BTreeMap, HashSet};
use std::fs;
use std::io::{self, BufRead, BufReader};
use std::path::Path;
use std::process::Command;

use chrono::{DateTime, Datelike, Duration, TimeZone, Utc};
use serde::{Deserialize, Serialize};
use thiserror::Error;
use walkdir::WalkDir;

/// Share of commits the core contributors must jointly reach.
pub const DEFAULT_BUS_FACTOR_THRESHOLD: f64 = 0.8;

/// `git log` record format matching the interchange format.
pub const GIT_LOG_FORMAT: &str = "--format=%at%x09%ae%x09%an";

/// Bytes inspected for a NUL when classifying a file as binary.
const BINARY_SNIFF_LEN: usize = 8000;

#[derive(Debug, Error)]
pub enum MetricsError {
    #[error("commit history is empty")]
    EmptyHistory,
    #[error("threshold must be in (0, 1], got {0}")]
    InvalidThreshold(f64),
    #[error("evaluation date {as_of} is before the first commit {first}")]
    AsOfBeforeFirstCommit {
        as_of: DateTime<Utc>,
        first: DateTime<Utc>,
    },
    #[error("line {line}: {reason}")]
    Parse { line: usize, reason: String },
    #[error("git is not available: {0}")]
    GitUnavailable(String),
    #[error("git log failed in {path}: {stderr}")]
    GitFailed { path: String, stderr: String },
    #[error("I/O error at {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: io::Error,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CommitRecord {
    pub author_name: String,
    pub author_email: String,
    pub timestamp: DateTime<Utc>,
}

impl CommitRecord {
    /// Identity used to merge authors: lowercased email, or the lowercased
    /// trimmed name when the email is empty.
    pub fn author_key(&self) -> String {
        let email = self.author_email.trim();
        if email.is_empty() {
            self.author_name.trim().to_lowercase()
        } else {
            email.to_lowercase()
        }
    }
}

/// Per-author commit counts, keyed by normalized identity.
pub fn author_counts(commits: &[CommitRecord]) -> BTreeMap<String, u64> {
    let mut counts = BTreeMap::new();
    for c in commits {
        *counts.entry(c.author_key()).or_insert(0) += 1;
    }
    counts
}

/// Smallest number of top authors whose cumulative commit share reaches
/// `threshold`.
pub fn bus_factor(commits: &[CommitRecord], threshold: f64) -> Result<usize, MetricsError> {
    let counts: Vec<u64> = author_counts(commits).into_values().collect();
    bus_factor_from_counts(&counts, threshold)
}

/// [`bus_factor`] over raw per-author commit counts.
pub fn bus_factor_from_counts(counts: &[u64], threshold: f64) -> Result<usize, MetricsError> {
    if !(threshold > 0.0 && threshold <= 1.0) {
        return Err(MetricsError::InvalidThreshold(threshold));
    }
    let total: u64 = counts.iter().sum();
    if total == 0 {
        return Err(MetricsError::EmptyHistory);
    }
    let mut sorted: Vec<u64> = counts.iter().copied().filter(|&c| c > 0).collect();
    sorted.sort_unstable_by(|a, b| b.cmp(a));
    let mut cumulative = 0u64;
    for (k, c) in sorted.iter().enumerate() {
        cumulative += c;
        // exact-share ties (e.g. 80 of 100 at 0.8) must qualify
        if cumulative as f64 / total as f64 >= threshold {
            return Ok(k + 1);
        }
    }
    Ok(sorted.len())
}

fn first_commit(commits: &[CommitRecord]) -> Result<DateTime<Utc>, MetricsError> {
    commits
        .iter()
        .map(|c| c.timestamp)
        .min()
        .ok_or(MetricsError::EmptyHistory)
}

/// Time from the first commit to `as_of`.
pub fn project_age(commits: &[CommitRecord], as_of: DateTime<Utc>) -> Result<Duration, MetricsError> {
    let first = first_commit(commits)?;
    if as_of < first {
        return Err(MetricsError::AsOfBeforeFirstCommit { as_of, first });
    }
    Ok(as_of - first)
}

/// Whole days in a non-negative duration.
pub fn whole_days(d: Duration) -> u64 {
    (d.num_seconds() / 86_400) as u64
}

/// Commits dated more than a day after `as_of`.
pub fn future_commits(commits: &[CommitRecord], as_of: DateTime<Utc>) -> usize {
    let limit = as_of + Duration::days(1);
    commits.iter().filter(|c| c.timestamp > limit).count()
}

/// Newline-delimited line count of one file, or `None` for binary files.
pub fn count_file_lines(path: &Path) -> io::Result<Option<u64>> {
    let bytes = fs::read(path)?;
    let sniff = &bytes[..bytes.len().min(BINARY_SNIFF_LEN)];
    if sniff.contains(&0) {
        return Ok(None);
    }
    Ok(Some(count_lines(&bytes)))
}

fn count_lines(bytes: &[u8]) -> u64 {
    let newlines = bytes.iter().filter(|&&b| b == b'\n').count() as u64;
    match bytes.last() {
        Some(b'\n') | None => newlines,
        Some(_) => newlines + 1,
    }
}

/// Total text lines in a worktree, skipping `.git` and binary files.
pub fn count_loc(root: &Path) -> Result<u64, MetricsError> {
    let io_at = |p: &Path| {
        let path = p.display().to_string();
        move |source: io::Error| MetricsError::Io { path, source }
    };
    if !root.is_dir() {
        return Err(io_at(root)(io::Error::new(
            io::ErrorKind::NotFound,
            "worktree is not a directory",
        )));
    }
    let mut total = 0;
    let walker = WalkDir::new(root)
        .follow_links(false)
        .into_iter()
        .filter_entry(|e| !(e.file_type().is_dir() && e.file_name() == ".git"));
    for entry in walker {
        let entry = entry.map_err(|e| {
            let path = e.path().unwrap_or(root).display().to_string();
            MetricsError::Io {
                path,
                source: e.into(),
            }
        })?;
        if entry.file_type().is_file() {
            total += count_file_lines(entry.path())
                .map_err(io_at(entry.path()))?
                .unwrap_or(0);
        }
    }
    Ok(total)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Bucket {
    Month,
    Year,
}

fn bucket_index(t: DateTime<Utc>, bucket: Bucket) -> i64 {
    match bucket {
        Bucket::Month => t.year() as i64 * 12 + t.month0() as i64,
        Bucket::Year => t.year() as i64,
    }
}

fn bucket_label(index: i64, bucket: Bucket) -> String {
    match bucket {
        Bucket::Month => format!("{:04}-{:02}", index.div_euclid(12), index.rem_euclid(12) + 1),
        Bucket::Year => format!("{index:04}"),
    }
}

/// Commits per UTC calendar bucket, zero-filled between the first and last
/// bucket.
pub fn commit_activity(commits: &[CommitRecord], bucket: Bucket) -> Vec<(String, u64)> {
    let mut counts: BTreeMap<i64, u64> = BTreeMap::new();
    for c in commits {
        *counts.entry(bucket_index(c.timestamp, bucket)).or_insert(0) += 1;
    }
    let (Some(&lo), Some(&hi)) = (counts.keys().next(), counts.keys().next_back()) else {
        return Vec::new();
    };
    (lo..=hi)
        .map(|i| (bucket_label(i, bucket), counts.get(&i).copied().unwrap_or(0)))
        .collect()
}

fn parse_record(line: &str, line_no: usize) -> Result<CommitRecord, MetricsError> {
    let err = |reason: &str| MetricsError::Parse {
        line: line_no,
        reason: reason.to_string(),
    };
    let mut fields = line.splitn(3, '\t');
    let ts = fields.next().unwrap_or_default().trim();
    if ts.is_empty() {
        return Err(err("missing timestamp"));
    }
    let secs: i64 = ts
        .parse()
        .map_err(|_| err(&format!("invalid timestamp {ts:?}")))?;
    if secs < 0 {
        return Err(err("timestamp before 1970-01-01"));
    }
    let timestamp = Utc
        .timestamp_opt(secs, 0)
        .single()
        .ok_or_else(|| err("timestamp out of range"))?;
    let author_email = fields.next().ok_or_else(|| err("missing author email"))?;
    let author_name = fields.next().ok_or_else(|| err("missing author name"))?;
    Ok(CommitRecord {
        author_name: author_name.to_string(),
        author_email: author_email.to_string(),
        timestamp,
    })
}

/// Parses the tab-separated interchange format
/// (`<unix-seconds>\t<email>\t<name>`, one commit per line). Blank lines are
/// skipped.
pub fn parse_commit_log<R: BufRead>(reader: R) -> Result<Vec<CommitRecord>, MetricsError> {
    let mut out = Vec::new();
    for (i, line) in reader.lines().enumerate() {
        let line = line.map_err(|source| MetricsError::Io {
            path: "<commit stream>".into(),
            source,
        })?;
        let line = line.strip_suffix('\r').unwrap_or(&line);
        if line.trim().is_empty() {
            continue;
        }
        out.push(parse_record(line, i + 1)?);
    }
    Ok(out)
}

/// Where a repository's history comes from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CommitSource<'a> {
    /// A local clone; history is read with `git log HEAD`.
    GitRepo(&'a Path),
    /// An interchange file.
    Interchange(&'a Path),
}

pub fn read_commit_stream(source: CommitSource<'_>) -> Result<Vec<CommitRecord>, MetricsError> {
    match source {
        CommitSource::Interchange(path) => {
            let f = fs::File::open(path).map_err(|source| MetricsError::Io {
                path: path.display().to_string(),
                source,
            })?;
            parse_commit_log(BufReader::new(f))
        }
        CommitSource::GitRepo(path) => {
            let output = Command::new("git")
                .arg("-C")
                .arg(path)
                .args(["log", GIT_LOG_FORMAT, "HEAD"])
                .output()
                .map_err(|e| MetricsError::GitUnavailable(e.to_string()))?;
            if !output.status.success() {
                return Err(MetricsError::GitFailed {
                    path: path.display().to_string(),
                    stderr: String::from_utf8_lossy(&output.stderr).trim().to_string(),
                });
            }
            parse_commit_log(output.stdout.as_slice())
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RepoMetrics {
    pub repo_url: String,
    pub first_commit: DateTime<Utc>,
    pub age_days: u64,
    pub commit_count: u64,
    pub author_count: u64,
    pub bus_factor: u64,
    /// Absent when only a commit log, no worktree, was available.
    pub loc: Option<u64>,
    pub future_commits: u64,
    pub activity: Vec<(String, u64)>,
}

/// Computes all metrics for one repository. `worktree` is optional since an
/// interchange file carries no file contents.
pub fn compute_repo_metrics(
    repo_url: &str,
    commits: &[CommitRecord],
    worktree: Option<&Path>,
    as_of: DateTime<Utc>,
    threshold: f64,
) -> Result<RepoMetrics, MetricsError> {
    let first_commit = first_commit(commits)?;
    let age = project_age(commits, as_of)?;
    let authors: HashSet<String> = commits.iter().map(CommitRecord::author_key).collect();
    let loc = worktree.map(count_loc).transpose()?;
    let flagged = future_commits(commits, as_of);
    if flagged > 0 {
        log::warn!("{repo_url}: {flagged} commit(s) dated after the evaluation date");
    }
    Ok(RepoMetrics {
        repo_url: repo_url.to_string(),
        first_commit,
        age_days: whole_days(age),
        commit_count: commits.len() as u64,
        author_count: authors.len() as u64,
        bus_factor: bus_factor(commits, threshold)? as u64,
        loc,
        future_commits: flagged as u64,
        activity: commit_activity(commits, Bucket::Month),
    })
}

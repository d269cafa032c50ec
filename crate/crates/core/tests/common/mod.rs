#![allow(dead_code)]

use std::fs;
use std::path::{Path, PathBuf};
use std::process::Command;

use chrono::{DateTime, TimeZone, Utc};
use serde::Deserialize;

use depcrit_core::pipeline::{self, PipelineConfig, ReportSources};
use depcrit_core::report::{Report, ReportFormat};
use depcrit_core::vulndb::HttpTransport;

pub const MINI_ENDPOINT: &str = "https://tracker.invalid/tracker/data/json";

pub fn data_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests").join("data")
}

pub fn mini_dir() -> PathBuf {
    data_dir().join("mini")
}

/// Serves a fixed body for every request and counts calls.
pub struct FixtureTransport {
    pub body: Vec<u8>,
    pub calls: std::cell::Cell<usize>,
}

impl FixtureTransport {
    pub fn new(body: Vec<u8>) -> Self {
        Self {
            body,
            calls: std::cell::Cell::new(0),
        }
    }
}

impl HttpTransport for FixtureTransport {
    fn get(&self, _url: &str) -> Result<Vec<u8>, String> {
        self.calls.set(self.calls.get() + 1);
        Ok(self.body.clone())
    }
}

pub fn fetch_time() -> DateTime<Utc> {
    Utc.with_ymd_and_hms(2024, 3, 18, 6, 0, 0).unwrap()
}

#[derive(Deserialize)]
struct GitFixture {
    package_id: String,
    commits: Vec<ScriptedCommit>,
}

#[derive(Deserialize)]
pub struct ScriptedCommit {
    pub timestamp: i64,
    pub email: String,
    pub name: String,
    pub path: String,
    pub content: String,
}

pub fn git(dir: &Path, args: &[&str], envs: &[(&str, String)]) {
    let status = Command::new("git")
        .args(args)
        .current_dir(dir)
        .env("GIT_CONFIG_GLOBAL", "/dev/null")
        .env("GIT_CONFIG_NOSYSTEM", "1")
        .envs(envs.iter().map(|(k, v)| (*k, v.as_str())))
        .status()
        .expect("git is installed");
    assert!(status.success(), "git {args:?} failed in {}", dir.display());
}

/// Creates a real repository at `dir` with one commit per scripted entry.
pub fn build_git_repo(dir: &Path, commits: &[ScriptedCommit]) {
    fs::create_dir_all(dir).unwrap();
    git(dir, &["init", "-q"], &[]);
    for (i, c) in commits.iter().enumerate() {
        let path = dir.join(&c.path);
        fs::create_dir_all(path.parent().unwrap()).unwrap();
        fs::write(&path, &c.content).unwrap();
        git(dir, &["add", &c.path], &[]);
        let date = format!("@{} +0000", c.timestamp);
        git(
            dir,
            &["commit", "-q", "--no-verify", "-m", &format!("change {i}")],
            &[
                ("GIT_AUTHOR_NAME", c.name.clone()),
                ("GIT_AUTHOR_EMAIL", c.email.clone()),
                ("GIT_AUTHOR_DATE", date.clone()),
                ("GIT_COMMITTER_NAME", c.name.clone()),
                ("GIT_COMMITTER_EMAIL", c.email.clone()),
                ("GIT_COMMITTER_DATE", date),
            ],
        );
    }
}

fn copy_tree(from: &Path, to: &Path) {
    for entry in walkdir::WalkDir::new(from).sort_by_file_name() {
        let entry = entry.unwrap();
        let rel = entry.path().strip_prefix(from).unwrap();
        let target = to.join(rel);
        if entry.file_type().is_dir() {
            fs::create_dir_all(&target).unwrap();
        } else {
            fs::copy(entry.path(), &target).unwrap();
        }
    }
}

/// Copies the fixture logs and worktrees into `dest` and scripts the git
/// clones next to them.
pub fn stage_repos(dest: &Path) {
    copy_tree(&mini_dir().join("repos"), dest);
    let fixtures: Vec<GitFixture> =
        serde_json::from_str(&fs::read_to_string(mini_dir().join("git-fixtures.json")).unwrap()).unwrap();
    for f in fixtures {
        build_git_repo(&dest.join(pipeline::repo_key(&f.package_id)), &f.commits);
    }
}

pub fn mini_config(work: &Path) -> PipelineConfig {
    let mut cfg = PipelineConfig::new(PipelineConfig::study_as_of());
    cfg.graph_path = Some(mini_dir().join("graph.json"));
    cfg.curated_path = Some(mini_dir().join("curated.csv"));
    cfg.tracker_endpoint = MINI_ENDPOINT.to_string();
    cfg.cache_dir = work.join("cache");
    cfg
}

pub struct MiniRun {
    pub report: Report,
    pub out: PathBuf,
}

/// Runs every stage on the mini ecosystem inside `work`.
pub fn run_mini(work: &Path, format: ReportFormat) -> MiniRun {
    let cfg = mini_config(work);
    let out = work.join("out");
    let repos = work.join("repos");
    stage_repos(&repos);
    pipeline::cmd_rank(&cfg, &out, false).unwrap();
    let transport = FixtureTransport::new(fs::read(mini_dir().join("tracker.json")).unwrap());
    pipeline::cmd_vuln(&cfg, &transport, fetch_time(), &out.join("vuln.json")).unwrap();
    pipeline::cmd_metrics(&cfg, &repos, &out.join("metrics.json")).unwrap();
    let target = match format {
        ReportFormat::Json => out.join("report.json"),
        ReportFormat::CsvBundle => out.join("bundle"),
    };
    let report = pipeline::cmd_report(
        &cfg,
        &ReportSources {
            ranking: out.join("ranking.json"),
            vuln: Some(out.join("vuln.json")),
            metrics: Some(out.join("metrics.json")),
        },
        format,
        &target,
    )
    .unwrap();
    MiniRun { report, out: target }
}

/// Compares `actual` with the frozen file; `DEPCRIT_BLESS=1` rewrites it.
pub fn assert_golden(golden: &Path, actual: &[u8]) -> bool {
    if std::env::var_os("DEPCRIT_BLESS").is_some() {
        fs::create_dir_all(golden.parent().unwrap()).unwrap();
        fs::write(golden, actual).unwrap();
    }
    match fs::read(golden) {
        Ok(expected) => expected == actual,
        Err(_) => false,
    }
}

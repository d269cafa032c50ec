//! The analysis pipeline as file-to-file stages: `rank`, `vuln`, `metrics`
//! and `report`. Every stage writes a versioned JSON artifact that later
//! stages read back, so each intermediate result can be audited.

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};
use std::time::Duration;

use chrono::{DateTime, NaiveDate, Utc};
use rayon::prelude::*;
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::centrality::{self, CentralityError, CentralityParams};
use crate::dataset::{self, CuratedRecord, DatasetError, RankedPackage};
use crate::depgraph::{self, DependencyGraph, Direction, GraphError, LoadMode, LoadReport};
use crate::gitmetrics::{self, CommitSource, MetricsError, RepoMetrics};
use crate::report::{self, GraphSummary, Report, ReportError, ReportFormat, ReportInputs, SnapshotMeta};
use crate::vulndb::{self, FetchError, FetchOptions, HttpTransport, PackageVulnStats, VulnError};

pub const ARTIFACT_SCHEMA_VERSION: u32 = 1;
/// Evaluation date used by `--paper-mode`.
pub const STUDY_AS_OF: (i32, u32, u32) = (2024, 3, 18);
pub const DEFAULT_TOP_K: usize = 200;
pub const DEFAULT_RELEASE: &str = "stable";

/// Broad failure classes, each mapped to its own process exit code.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorClass {
    Validation,
    Network,
    Divergence,
    Io,
}

impl ErrorClass {
    pub fn exit_code(self) -> i32 {
        match self {
            ErrorClass::Validation => 2,
            ErrorClass::Network => 3,
            ErrorClass::Divergence => 4,
            ErrorClass::Io => 5,
        }
    }
}

#[derive(Debug, Error)]
pub enum PipelineError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Centrality(#[from] CentralityError),
    #[error(transparent)]
    Vuln(#[from] VulnError),
    #[error(transparent)]
    Fetch(#[from] FetchError),
    #[error(transparent)]
    Dataset(#[from] DatasetError),
    #[error(transparent)]
    Report(#[from] ReportError),
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("{path}: not a valid {kind} artifact: {reason}")]
    Artifact {
        path: PathBuf,
        kind: &'static str,
        reason: String,
    },
    #[error("{path}: artifact schema version {found} does not match expected {expected}")]
    SchemaMismatch {
        path: PathBuf,
        found: u32,
        expected: u32,
    },
    #[error("{} curated package(s) have no Debian mapping: {}", .0.len(), .0.join(", "))]
    Unmapped(Vec<String>),
    #[error("{0}")]
    Config(String),
}

impl PipelineError {
    pub fn class(&self) -> ErrorClass {
        match self {
            PipelineError::Centrality(CentralityError::Diverged { .. }) => ErrorClass::Divergence,
            PipelineError::Fetch(e) if e.is_network() => ErrorClass::Network,
            PipelineError::Graph(GraphError::Io(_))
            | PipelineError::Fetch(_)
            | PipelineError::Report(ReportError::Io { .. })
            | PipelineError::Io { .. } => ErrorClass::Io,
            PipelineError::Dataset(DatasetError::Csv(e)) if e.is_io_error() => ErrorClass::Io,
            _ => ErrorClass::Validation,
        }
    }

    /// Operator-facing hint, if one applies.
    pub fn remediation(&self) -> Option<&'static str> {
        match self {
            PipelineError::Centrality(CentralityError::Diverged { .. }) => {
                Some("lower --alpha below 1/spectral radius (see `graph inspect`) or raise --max-iterations")
            }
            PipelineError::Fetch(FetchError::StaleCache { .. }) => {
                Some("rerun without --strict to accept the stale cache, or use --offline")
            }
            _ => None,
        }
    }
}

fn io_error(path: &Path) -> impl FnOnce(std::io::Error) -> PipelineError + '_ {
    move |source| PipelineError::Io {
        path: path.to_path_buf(),
        source,
    }
}

fn read_text(path: &Path) -> Result<String, PipelineError> {
    fs::read_to_string(path).map_err(io_error(path))
}

fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<(), PipelineError> {
    if let Some(parent) = path.parent().filter(|p| !p.as_os_str().is_empty()) {
        fs::create_dir_all(parent).map_err(io_error(parent))?;
    }
    let mut body = serde_json::to_string_pretty(value).expect("artifact serializes");
    body.push('\n');
    fs::write(path, body).map_err(io_error(path))
}

#[derive(Deserialize)]
struct ArtifactHeader {
    schema_version: u32,
    kind: String,
}

fn read_artifact<T: DeserializeOwned>(path: &Path, kind: &'static str) -> Result<T, PipelineError> {
    let text = read_text(path)?;
    let bad = |reason: String| PipelineError::Artifact {
        path: path.to_path_buf(),
        kind,
        reason,
    };
    let header: ArtifactHeader = serde_json::from_str(&text).map_err(|e| bad(e.to_string()))?;
    if header.kind != kind {
        return Err(bad(format!("artifact kind is {:?}", header.kind)));
    }
    if header.schema_version != ARTIFACT_SCHEMA_VERSION {
        return Err(PipelineError::SchemaMismatch {
            path: path.to_path_buf(),
            found: header.schema_version,
            expected: ARTIFACT_SCHEMA_VERSION,
        });
    }
    serde_json::from_str(&text).map_err(|e| bad(e.to_string()))
}

#[derive(Debug, Clone)]
pub struct PipelineConfig {
    pub graph_path: Option<PathBuf>,
    pub curated_path: Option<PathBuf>,
    pub tracker_endpoint: String,
    pub cache_dir: PathBuf,
    pub release: String,
    pub top_k: usize,
    pub as_of: NaiveDate,
    pub centrality: CentralityParams,
    pub strict: bool,
    pub offline: bool,
    pub max_cache_age: Duration,
    pub bus_factor_threshold: f64,
}

impl PipelineConfig {
    pub fn new(as_of: NaiveDate) -> Self {
        Self {
            graph_path: None,
            curated_path: None,
            tracker_endpoint: vulndb::DEFAULT_TRACKER_URL.to_string(),
            cache_dir: PathBuf::from(".depcrit-cache"),
            release: DEFAULT_RELEASE.to_string(),
            top_k: DEFAULT_TOP_K,
            as_of,
            centrality: CentralityParams::default(),
            strict: false,
            offline: false,
            max_cache_age: Duration::from_secs(24 * 3600),
            bus_factor_threshold: gitmetrics::DEFAULT_BUS_FACTOR_THRESHOLD,
        }
    }

    pub fn study_as_of() -> NaiveDate {
        let (y, m, d) = STUDY_AS_OF;
        NaiveDate::from_ymd_opt(y, m, d).expect("valid date")
    }

    /// Midnight UTC of `as_of`.
    pub fn as_of_instant(&self) -> DateTime<Utc> {
        self.as_of.and_hms_opt(0, 0, 0).expect("midnight").and_utc()
    }

    fn load_mode(&self) -> LoadMode {
        if self.strict {
            LoadMode::Strict
        } else {
            LoadMode::Lenient
        }
    }

    fn require_graph(&self) -> Result<&Path, PipelineError> {
        self.graph_path
            .as_deref()
            .ok_or_else(|| PipelineError::Config("a graph file is required (--graph)".into()))
    }

    fn require_curated(&self) -> Result<&Path, PipelineError> {
        self.curated_path
            .as_deref()
            .ok_or_else(|| PipelineError::Config("a curated CSV is required (--curated)".into()))
    }

    fn validate(&self) -> Result<(), PipelineError> {
        if self.top_k == 0 {
            return Err(PipelineError::Config("--top-k must be at least 1".into()));
        }
        if self.release.trim().is_empty() {
            return Err(PipelineError::Config("--release must not be empty".into()));
        }
        Ok(())
    }
}

pub fn load_graph_file(path: &Path, mode: LoadMode) -> Result<(DependencyGraph, LoadReport), PipelineError> {
    let text = read_text(path)?;
    Ok(depgraph::load_graph(&text, mode)?)
}

pub fn load_curated_file(path: &Path) -> Result<Vec<CuratedRecord>, PipelineError> {
    let f = fs::File::open(path).map_err(io_error(path))?;
    let load = dataset::load_curated(f)?;
    for w in &load.warnings {
        log::warn!("{}: {w}", path.display());
    }
    Ok(load.records)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RankingArtifact {
    pub schema_version: u32,
    pub kind: String,
    pub tool_version: String,
    pub params: CentralityParams,
    pub graph_summary: GraphSummary,
    pub load_report: LoadReport,
    pub spectral_radius_bound: f64,
    pub iterations: usize,
    pub converged: bool,
    pub residual: f64,
    pub entries: Vec<RankedPackage>,
}

/// Loads the graph, scores it, and keeps the top `top_k` packages.
pub fn compute_ranking(cfg: &PipelineConfig) -> Result<RankingArtifact, PipelineError> {
    cfg.validate()?;
    let (graph, load_report) = load_graph_file(cfg.require_graph()?, cfg.load_mode())?;
    ranking_for_graph(&graph, load_report, &cfg.centrality, cfg.top_k)
}

pub fn ranking_for_graph(
    graph: &DependencyGraph,
    load_report: LoadReport,
    params: &CentralityParams,
    top_k: usize,
) -> Result<RankingArtifact, PipelineError> {
    let scores = centrality::katz_centrality(graph, params)?;
    let entries = centrality::rank(&scores, top_k)
        .into_iter()
        .map(|r| {
            let i = graph.index_of(&r.id).expect("ranked id is in graph");
            let node = &graph.nodes()[i];
            RankedPackage {
                id: r.id,
                name: node.name.clone(),
                version: node.version.clone(),
                licenses: node.licenses.clone(),
                reverse_dependencies: graph.in_degree(i) as u64,
                score: r.score,
                rank: r.rank,
            }
        })
        .collect();
    Ok(RankingArtifact {
        schema_version: ARTIFACT_SCHEMA_VERSION,
        kind: "ranking".into(),
        tool_version: report::TOOL_VERSION.into(),
        params: *params,
        graph_summary: GraphSummary {
            node_count: graph.node_count(),
            edge_count: graph.edge_count(),
        },
        load_report,
        spectral_radius_bound: centrality::spectral_radius_upper_bound(graph),
        iterations: scores.iterations,
        converged: scores.converged,
        residual: scores.residual,
        entries,
    })
}

/// `rank` stage: writes `ranking.json` (and `ranking.csv` when asked) into
/// `out_dir`.
pub fn cmd_rank(cfg: &PipelineConfig, out_dir: &Path, csv: bool) -> Result<RankingArtifact, PipelineError> {
    let artifact = compute_ranking(cfg)?;
    write_json(&out_dir.join("ranking.json"), &artifact)?;
    if csv {
        let nodes: Vec<centrality::RankedNode> = artifact
            .entries
            .iter()
            .map(|e| centrality::RankedNode {
                id: e.id.clone(),
                score: e.score,
                rank: e.rank,
            })
            .collect();
        let path = out_dir.join("ranking.csv");
        fs::write(&path, centrality::ranking_csv(&nodes)).map_err(io_error(&path))?;
    }
    Ok(artifact)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VulnRow {
    pub package_id: String,
    #[serde(flatten)]
    pub stats: PackageVulnStats,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VulnArtifact {
    pub schema_version: u32,
    pub kind: String,
    pub tool_version: String,
    pub snapshot: SnapshotMeta,
    pub stats: Vec<VulnRow>,
    pub unmapped: Vec<String>,
    pub warnings: Vec<String>,
}

/// `vuln` stage: fetches (or reuses) the tracker dump and summarizes every
/// curated package that has a Debian mapping.
pub fn cmd_vuln(
    cfg: &PipelineConfig,
    transport: &dyn HttpTransport,
    now: DateTime<Utc>,
    out: &Path,
) -> Result<VulnArtifact, PipelineError> {
    cfg.validate()?;
    let curated = load_curated_file(cfg.require_curated()?)?;
    let active: Vec<&CuratedRecord> = curated.iter().filter(|r| !r.excluded).collect();
    let unmapped: Vec<String> = active
        .iter()
        .filter(|r| r.debian_source.is_none())
        .map(|r| r.package_id.clone())
        .collect();
    if cfg.strict && !unmapped.is_empty() {
        return Err(PipelineError::Unmapped(unmapped));
    }

    let fetched = vulndb::fetch_tracker(
        &FetchOptions {
            endpoint: cfg.tracker_endpoint.clone(),
            cache_dir: cfg.cache_dir.clone(),
            max_age: cfg.max_cache_age,
            offline: cfg.offline,
            lenient: !cfg.strict,
        },
        transport,
        now,
    )?;
    let mut warnings: Vec<String> = fetched.warning.iter().cloned().collect();
    let (db, parse_report) = vulndb::parse_tracker_document(&fetched.document)?;
    warnings.extend(parse_report.warnings);
    let codename = vulndb::resolve_release(&cfg.release, cfg.as_of);

    let mut stats: Vec<VulnRow> = active
        .iter()
        .filter_map(|r| {
            let source = r.debian_source.as_ref()?;
            let records = db.get(source).map(Vec::as_slice).unwrap_or(&[]);
            Some(VulnRow {
                package_id: r.package_id.clone(),
                stats: vulndb::summarize(source, records, &codename),
            })
        })
        .collect();
    stats.sort_by(|a, b| a.package_id.cmp(&b.package_id));
    for id in &unmapped {
        log::warn!("package {id} has no Debian mapping");
    }

    let artifact = VulnArtifact {
        schema_version: ARTIFACT_SCHEMA_VERSION,
        kind: "vuln".into(),
        tool_version: report::TOOL_VERSION.into(),
        snapshot: SnapshotMeta {
            fetched_at: fetched.meta.fetched_at,
            source_url: fetched.meta.source_url.clone(),
            sha256: fetched.meta.sha256.clone(),
            release: cfg.release.clone(),
            release_codename: codename,
            stale: fetched.stale,
        },
        stats,
        unmapped,
        warnings,
    };
    write_json(out, &artifact)?;
    Ok(artifact)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PackageMetrics {
    pub package_id: String,
    #[serde(flatten)]
    pub metrics: RepoMetrics,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RowError {
    pub package_id: String,
    pub error: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MetricsArtifact {
    pub schema_version: u32,
    pub kind: String,
    pub tool_version: String,
    pub as_of: NaiveDate,
    pub bus_factor_threshold: f64,
    pub metrics: Vec<PackageMetrics>,
    pub missing: Vec<String>,
    pub errors: Vec<RowError>,
}

/// File-system-safe key for a package id; used to locate its repository.
pub fn repo_key(package_id: &str) -> String {
    package_id
        .chars()
        .map(|c| {
            if c.is_ascii_alphanumeric() || matches!(c, '.' | '_' | '-') {
                c
            } else {
                '_'
            }
        })
        .collect()
}

enum RepoLocation {
    Clone(PathBuf),
    Log { log: PathBuf, worktree: Option<PathBuf> },
}

/// `<repos>/<key>/.git` is a clone; otherwise `<repos>/<key>.tsv` is a commit
/// log, with `<repos>/<key>/` as its worktree snapshot when present.
fn locate_repo(repos_dir: &Path, package_id: &str) -> Option<RepoLocation> {
    let key = repo_key(package_id);
    let dir = repos_dir.join(&key);
    if dir.join(".git").exists() {
        return Some(RepoLocation::Clone(dir));
    }
    let log = repos_dir.join(format!("{key}.tsv"));
    log.is_file().then(|| RepoLocation::Log {
        log,
        worktree: dir.is_dir().then_some(dir),
    })
}

fn metrics_for(
    record: &CuratedRecord,
    repo_url: &str,
    location: &RepoLocation,
    cfg: &PipelineConfig,
) -> Result<RepoMetrics, MetricsError> {
    let (commits, worktree) = match location {
        RepoLocation::Clone(dir) => (
            gitmetrics::read_commit_stream(CommitSource::GitRepo(dir))?,
            Some(dir.as_path()),
        ),
        RepoLocation::Log { log, worktree } => (
            gitmetrics::read_commit_stream(CommitSource::Interchange(log))?,
            worktree.as_deref(),
        ),
    };
    log::debug!("{}: {} commits", record.package_id, commits.len());
    gitmetrics::compute_repo_metrics(
        repo_url,
        &commits,
        worktree,
        cfg.as_of_instant(),
        cfg.bus_factor_threshold,
    )
}

/// `metrics` stage: one metrics row per curated package whose repository
/// is present under `repos_dir`, computed in parallel.
pub fn cmd_metrics(cfg: &PipelineConfig, repos_dir: &Path, out: &Path) -> Result<MetricsArtifact, PipelineError> {
    cfg.validate()?;
    let curated = load_curated_file(cfg.require_curated()?)?;
    if !repos_dir.is_dir() {
        return Err(PipelineError::Io {
            path: repos_dir.to_path_buf(),
            source: std::io::Error::new(std::io::ErrorKind::NotFound, "repository directory not found"),
        });
    }
    let mut targets: Vec<(&CuratedRecord, &str)> = curated
        .iter()
        .filter(|r| !r.excluded)
        .filter_map(|r| Some((r, r.repo_url.as_deref()?)))
        .collect();
    targets.sort_by(|a, b| a.0.package_id.cmp(&b.0.package_id));

    enum Outcome {
        Ok(RepoMetrics),
        Missing,
        Failed(String),
    }
    let outcomes: Vec<Outcome> = targets
        .par_iter()
        .map(|(record, url)| match locate_repo(repos_dir, &record.package_id) {
            None => Outcome::Missing,
            Some(loc) => match metrics_for(record, url, &loc, cfg) {
                Ok(m) => Outcome::Ok(m),
                Err(e) => Outcome::Failed(e.to_string()),
            },
        })
        .collect();

    let mut artifact = MetricsArtifact {
        schema_version: ARTIFACT_SCHEMA_VERSION,
        kind: "metrics".into(),
        tool_version: report::TOOL_VERSION.into(),
        as_of: cfg.as_of,
        bus_factor_threshold: cfg.bus_factor_threshold,
        metrics: Vec::new(),
        missing: Vec::new(),
        errors: Vec::new(),
    };
    for ((record, _), outcome) in targets.iter().zip(outcomes) {
        let package_id = record.package_id.clone();
        match outcome {
            Outcome::Ok(metrics) => artifact.metrics.push(PackageMetrics { package_id, metrics }),
            Outcome::Missing => {
                log::warn!("no repository found for {package_id} under {}", repos_dir.display());
                artifact.missing.push(package_id);
            }
            Outcome::Failed(error) => {
                log::warn!("metrics failed for {package_id}: {error}");
                artifact.errors.push(RowError { package_id, error });
            }
        }
    }
    write_json(out, &artifact)?;
    Ok(artifact)
}

#[derive(Debug, Clone, Default)]
pub struct ReportSources {
    pub ranking: PathBuf,
    pub vuln: Option<PathBuf>,
    pub metrics: Option<PathBuf>,
}

/// Joins the stage artifacts and assembles the final report (not written).
pub fn build_report(cfg: &PipelineConfig, sources: &ReportSources) -> Result<Report, PipelineError> {
    let ranking: RankingArtifact = read_artifact(&sources.ranking, "ranking")?;
    let vuln: Option<VulnArtifact> = sources
        .vuln
        .as_deref()
        .map(|p| read_artifact(p, "vuln"))
        .transpose()?;
    let metrics: Option<MetricsArtifact> = sources
        .metrics
        .as_deref()
        .map(|p| read_artifact(p, "metrics"))
        .transpose()?;
    let curated = match &cfg.curated_path {
        Some(p) => load_curated_file(p)?,
        None => Vec::new(),
    };

    let vuln_map: Option<BTreeMap<String, PackageVulnStats>> = vuln.as_ref().map(|v| {
        v.stats
            .iter()
            .map(|r| (r.stats.source_package.clone(), r.stats.clone()))
            .collect()
    });
    let metrics_map: BTreeMap<String, RepoMetrics> = metrics
        .as_ref()
        .map(|m| {
            m.metrics
                .iter()
                .map(|r| (r.package_id.clone(), r.metrics.clone()))
                .collect()
        })
        .unwrap_or_default();

    let entries: Vec<RankedPackage> = ranking.entries.iter().take(cfg.top_k).cloned().collect();
    let table = dataset::build_table(&entries, &curated, vuln_map.as_ref(), &metrics_map);
    for w in &table.warnings {
        log::warn!("{w}");
    }
    Ok(Report::assemble(ReportInputs {
        generated_at: cfg.as_of_instant(),
        as_of: cfg.as_of,
        graph_summary: ranking.graph_summary,
        params: ranking.params,
        snapshot_meta: vuln.map(|v| v.snapshot),
        table: &table,
        has_vuln: vuln_map.is_some(),
        has_metrics: metrics.is_some(),
    })?)
}

/// `report` stage: builds and emits the report.
pub fn cmd_report(
    cfg: &PipelineConfig,
    sources: &ReportSources,
    format: ReportFormat,
    out: &Path,
) -> Result<Report, PipelineError> {
    cfg.validate()?;
    let report = build_report(cfg, sources)?;
    report::emit_report(&report, format, out)?;
    Ok(report)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NodeInspection {
    pub id: String,
    pub name: String,
    pub version: String,
    pub dependencies: Vec<String>,
    pub reverse_dependencies: Vec<String>,
    pub transitive_reverse_dependencies: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GraphInspection {
    pub node_count: usize,
    pub edge_count: usize,
    pub load_report: LoadReport,
    pub weak_components: usize,
    pub spectral_radius_bound: f64,
    /// Largest alpha the in-degree bound guarantees to converge below.
    pub alpha_limit: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub node: Option<NodeInspection>,
}

impl GraphInspection {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("inspection serializes")
    }
}

pub fn inspect_graph(
    graph: &DependencyGraph,
    load_report: LoadReport,
    node: Option<&str>,
) -> Result<GraphInspection, PipelineError> {
    let bound = centrality::spectral_radius_upper_bound(graph);
    let node = node
        .map(|id| -> Result<NodeInspection, PipelineError> {
            let i = graph
                .index_of(id)
                .ok_or_else(|| GraphError::NotFound(id.to_string()))?;
            let n = &graph.nodes()[i];
            let mut dependencies: Vec<String> = graph
                .successors(i)
                .iter()
                .map(|&j| graph.nodes()[j].id.clone())
                .collect();
            dependencies.sort();
            Ok(NodeInspection {
                id: n.id.clone(),
                name: n.name.clone(),
                version: n.version.clone(),
                dependencies,
                reverse_dependencies: graph
                    .reverse_dependencies(id)?
                    .into_iter()
                    .map(str::to_string)
                    .collect(),
                transitive_reverse_dependencies: graph.transitive_reverse_dependencies(id)?.len(),
            })
        })
        .transpose()?;
    Ok(GraphInspection {
        node_count: graph.node_count(),
        edge_count: graph.edge_count(),
        load_report,
        weak_components: graph.weak_component_count(),
        spectral_radius_bound: bound,
        alpha_limit: (bound > 0.0).then(|| 1.0 / bound),
        node,
    })
}

/// Subgraph around `roots`, serialized in the graph export format.
pub fn subgraph_document(
    graph: &DependencyGraph,
    roots: &[String],
    direction: Direction,
    depth: usize,
) -> Result<String, PipelineError> {
    Ok(graph.subgraph(roots, direction, depth)?.to_json())
}

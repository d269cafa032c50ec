//! Final report assembly and emission (single JSON document or a bundle of
//! CSV tables with a digest manifest).

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};

use chrono::{DateTime, NaiveDate, Utc};
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use thiserror::Error;

use crate::centrality::CentralityParams;
use crate::dataset::{AnalysisRow, AnalysisTable};
use crate::stats::{self, BoxStats, BreakdownEntry, BreakdownField, RegressionFit};

pub const REPORT_SCHEMA_VERSION: u32 = 1;
pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Debug, Error)]
pub enum ReportError {
    #[error("report has vulnerability data but no tracker snapshot metadata")]
    MissingSnapshot,
    #[error("cannot write {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphSummary {
    pub node_count: usize,
    pub edge_count: usize,
}

/// Which tracker dump the vulnerability columns came from.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SnapshotMeta {
    pub fetched_at: DateTime<Utc>,
    pub source_url: String,
    pub sha256: String,
    pub release: String,
    pub release_codename: String,
    pub stale: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RankingRow {
    pub rank: usize,
    pub package_id: String,
    pub name: String,
    pub katz_score: f64,
    pub reverse_dependencies: u64,
    pub language: Option<String>,
    pub category: Option<String>,
    pub backer: Option<String>,
    pub repo_url: Option<String>,
    pub debian_source: Option<String>,
    pub cve_total: Option<u64>,
    pub cve_open: Option<u64>,
    pub cve_resolved: Option<u64>,
    pub age_days: Option<u64>,
    pub commit_count: Option<u64>,
    pub author_count: Option<u64>,
    pub bus_factor: Option<u64>,
    pub loc: Option<u64>,
}

impl From<&AnalysisRow> for RankingRow {
    fn from(row: &AnalysisRow) -> Self {
        let m = row.metrics.as_ref();
        let v = row.vuln.as_ref();
        RankingRow {
            rank: row.rank,
            package_id: row.package_id.clone(),
            name: row.name.clone(),
            katz_score: row.katz_score,
            reverse_dependencies: row.reverse_dependencies,
            language: row.metadata.language.clone(),
            category: row.metadata.category.clone(),
            backer: row.metadata.backer.map(|b| b.as_str().to_string()),
            repo_url: row.metadata.repo_url.clone(),
            debian_source: row.metadata.debian_source.clone(),
            cve_total: v.map(|v| v.total_entries),
            cve_open: v.map(|v| v.open_count),
            cve_resolved: v.map(|v| v.resolved_count),
            age_days: m.map(|m| m.age_days),
            commit_count: m.map(|m| m.commit_count),
            author_count: m.map(|m| m.author_count),
            bus_factor: m.map(|m| m.bus_factor),
            loc: m.and_then(|m| m.loc),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OpenIssue {
    pub rank: usize,
    pub package_id: String,
    pub open_count: u64,
}

/// Packages with at least one open issue, in centrality-rank order.
pub fn open_issues_by_centrality(rows: &[AnalysisRow]) -> Vec<OpenIssue> {
    let mut out: Vec<OpenIssue> = rows
        .iter()
        .filter_map(|r| {
            let open = r.vuln.as_ref()?.open_count;
            (open > 0).then(|| OpenIssue {
                rank: r.rank,
                package_id: r.package_id.clone(),
                open_count: open,
            })
        })
        .collect();
    out.sort_by_key(|o| o.rank);
    out
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RegressionSection {
    pub x: String,
    pub y: String,
    pub fit: RegressionFit,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct Tables {
    pub ranking: Vec<RankingRow>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub open_issues: Option<Vec<OpenIssue>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub missing_in_debian: Option<Vec<String>>,
    pub box_stats: BTreeMap<String, BoxStats>,
    pub breakdowns: BTreeMap<String, Vec<BreakdownEntry>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub regression: Option<RegressionSection>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub schema_version: u32,
    pub tool_version: String,
    pub generated_at: DateTime<Utc>,
    pub as_of: NaiveDate,
    pub graph_summary: GraphSummary,
    pub params: CentralityParams,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub snapshot_meta: Option<SnapshotMeta>,
    pub notes: Vec<String>,
    pub tables: Tables,
}

pub struct ReportInputs<'a> {
    pub generated_at: DateTime<Utc>,
    pub as_of: NaiveDate,
    pub graph_summary: GraphSummary,
    pub params: CentralityParams,
    pub snapshot_meta: Option<SnapshotMeta>,
    pub table: &'a AnalysisTable,
    /// Whether a vulnerability artifact was supplied at all.
    pub has_vuln: bool,
    /// Whether a metrics artifact was supplied at all.
    pub has_metrics: bool,
}

fn box_section(values: Vec<f64>) -> Option<BoxStats> {
    stats::box_stats(&values).ok()
}

impl Report {
    pub fn assemble(inputs: ReportInputs<'_>) -> Result<Report, ReportError> {
        let rows = &inputs.table.rows;
        let any_vuln = rows.iter().any(|r| r.vuln.is_some());
        if any_vuln && inputs.snapshot_meta.is_none() {
            return Err(ReportError::MissingSnapshot);
        }
        let mut notes = Vec::new();
        let mut tables = Tables {
            ranking: rows.iter().map(RankingRow::from).collect(),
            ..Default::default()
        };

        let mut samples: Vec<(&str, Vec<f64>)> = vec![(
            "reverse_dependencies",
            rows.iter().map(|r| r.reverse_dependencies as f64).collect(),
        )];
        if inputs.has_metrics {
            let metric = |f: fn(&crate::gitmetrics::RepoMetrics) -> Option<u64>| -> Vec<f64> {
                rows.iter()
                    .filter_map(|r| r.metrics.as_ref().and_then(f))
                    .map(|v| v as f64)
                    .collect()
            };
            samples.push(("age_days", metric(|m| Some(m.age_days))));
            samples.push(("bus_factor", metric(|m| Some(m.bus_factor))));
            samples.push(("commit_count", metric(|m| Some(m.commit_count))));
            samples.push(("loc", metric(|m| m.loc)));
        } else {
            notes.push("repository metrics absent: maintenance sections omitted".to_string());
        }
        if inputs.has_vuln {
            let vuln = |f: fn(&crate::vulndb::PackageVulnStats) -> u64| -> Vec<f64> {
                rows.iter()
                    .filter_map(|r| r.vuln.as_ref().map(f))
                    .map(|v| v as f64)
                    .collect()
            };
            samples.push(("cve_total", vuln(|v| v.total_entries)));
            samples.push(("cve_open", vuln(|v| v.open_count)));
            tables.open_issues = Some(open_issues_by_centrality(rows));
            tables.missing_in_debian = Some(inputs.table.missing_in_debian.clone());
        } else {
            notes.push("vulnerability data absent: vulnerability sections omitted".to_string());
        }
        for (name, values) in samples {
            if let Some(b) = box_section(values) {
                tables.box_stats.insert(name.to_string(), b);
            }
        }
        if !rows.is_empty() {
            for field in BreakdownField::ALL {
                tables
                    .breakdowns
                    .insert(field.as_str().to_string(), stats::breakdown(rows, field));
            }
        }

        if inputs.has_vuln && inputs.has_metrics {
            let points: Vec<(f64, f64)> = rows
                .iter()
                .filter_map(|r| {
                    let loc = r.metrics.as_ref()?.loc?;
                    let cves = r.vuln.as_ref()?.total_entries;
                    Some((loc as f64, cves as f64))
                })
                .collect();
            match stats::linear_regression(&points) {
                Ok(fit) => {
                    tables.regression = Some(RegressionSection {
                        x: "loc".into(),
                        y: "cve_total".into(),
                        fit,
                    })
                }
                Err(e) => notes.push(format!("cve_total vs loc regression skipped: {e}")),
            }
        }
        if let Some(meta) = &inputs.snapshot_meta {
            if meta.stale {
                notes.push(format!(
                    "vulnerability snapshot from {} was stale when used",
                    meta.fetched_at
                ));
            }
        }

        Ok(Report {
            schema_version: REPORT_SCHEMA_VERSION,
            tool_version: TOOL_VERSION.to_string(),
            generated_at: inputs.generated_at,
            as_of: inputs.as_of,
            graph_summary: inputs.graph_summary,
            params: inputs.params,
            snapshot_meta: inputs.snapshot_meta,
            notes,
            tables,
        })
    }

    /// Pretty-printed JSON with a trailing newline.
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReportFormat {
    Json,
    CsvBundle,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ManifestEntry {
    pub file: String,
    pub rows: usize,
    pub sha256: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Manifest {
    pub schema_version: u32,
    pub tool_version: String,
    pub generated_at: DateTime<Utc>,
    pub as_of: NaiveDate,
    pub graph_summary: GraphSummary,
    pub params: CentralityParams,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub snapshot_meta: Option<SnapshotMeta>,
    pub notes: Vec<String>,
    pub files: Vec<ManifestEntry>,
}

fn write_file(path: &Path, contents: &[u8]) -> Result<(), ReportError> {
    fs::write(path, contents).map_err(|source| ReportError::Io {
        path: path.to_path_buf(),
        source,
    })
}

fn opt<T: ToString>(v: &Option<T>) -> String {
    v.as_ref().map(ToString::to_string).unwrap_or_default()
}

struct CsvTable {
    name: &'static str,
    header: Vec<&'static str>,
    rows: Vec<Vec<String>>,
}

impl CsvTable {
    fn render(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(&self.header).expect("in-memory write");
        for r in &self.rows {
            w.write_record(r).expect("in-memory write");
        }
        String::from_utf8(w.into_inner().expect("flush")).expect("utf-8")
    }
}

fn csv_tables(report: &Report) -> Vec<CsvTable> {
    let t = &report.tables;
    let mut tables = vec![CsvTable {
        name: "ranking.csv",
        header: vec![
            "rank", "package_id", "name", "katz_score", "reverse_dependencies", "language",
            "category", "backer", "repo_url", "debian_source", "cve_total", "cve_open",
            "cve_resolved", "age_days", "commit_count", "author_count", "bus_factor", "loc",
        ],
        rows: t
            .ranking
            .iter()
            .map(|r| {
                vec![
                    r.rank.to_string(),
                    r.package_id.clone(),
                    r.name.clone(),
                    r.katz_score.to_string(),
                    r.reverse_dependencies.to_string(),
                    opt(&r.language),
                    opt(&r.category),
                    opt(&r.backer),
                    opt(&r.repo_url),
                    opt(&r.debian_source),
                    opt(&r.cve_total),
                    opt(&r.cve_open),
                    opt(&r.cve_resolved),
                    opt(&r.age_days),
                    opt(&r.commit_count),
                    opt(&r.author_count),
                    opt(&r.bus_factor),
                    opt(&r.loc),
                ]
            })
            .collect(),
    }];
    if let Some(open) = &t.open_issues {
        tables.push(CsvTable {
            name: "open_issues.csv",
            header: vec!["rank", "package_id", "open_count"],
            rows: open
                .iter()
                .map(|o| vec![o.rank.to_string(), o.package_id.clone(), o.open_count.to_string()])
                .collect(),
        });
    }
    if let Some(missing) = &t.missing_in_debian {
        tables.push(CsvTable {
            name: "missing_in_debian.csv",
            header: vec!["package_id"],
            rows: missing.iter().map(|m| vec![m.clone()]).collect(),
        });
    }
    tables.push(CsvTable {
        name: "box_stats.csv",
        header: vec![
            "metric", "n", "q1", "median", "q3", "iqr", "whisker_low", "whisker_high", "fliers",
        ],
        rows: t
            .box_stats
            .iter()
            .map(|(name, b)| {
                vec![
                    name.clone(),
                    b.n.to_string(),
                    b.q1.to_string(),
                    b.median.to_string(),
                    b.q3.to_string(),
                    b.iqr.to_string(),
                    b.whisker_low.to_string(),
                    b.whisker_high.to_string(),
                    b.fliers.iter().map(f64::to_string).collect::<Vec<_>>().join(";"),
                ]
            })
            .collect(),
    });
    tables.push(CsvTable {
        name: "breakdowns.csv",
        header: vec!["field", "label", "count", "share"],
        rows: t
            .breakdowns
            .iter()
            .flat_map(|(field, entries)| {
                entries.iter().map(move |e| {
                    vec![field.clone(), e.label.clone(), e.count.to_string(), e.share.to_string()]
                })
            })
            .collect(),
    });
    if let Some(reg) = &t.regression {
        tables.push(CsvTable {
            name: "regression.csv",
            header: vec!["x", "y", "n", "slope", "intercept", "r"],
            rows: vec![vec![
                reg.x.clone(),
                reg.y.clone(),
                reg.fit.n.to_string(),
                reg.fit.slope.to_string(),
                reg.fit.intercept.to_string(),
                reg.fit.r.to_string(),
            ]],
        });
    }
    tables
}

/// Writes the report. For [`ReportFormat::Json`], `target` is the output
/// file; for [`ReportFormat::CsvBundle`] it is a directory that receives one
/// CSV per table plus `manifest.json`. Returns the paths written.
pub fn emit_report(
    report: &Report,
    format: ReportFormat,
    target: &Path,
) -> Result<Vec<PathBuf>, ReportError> {
    match format {
        ReportFormat::Json => {
            if let Some(parent) = target.parent().filter(|p| !p.as_os_str().is_empty()) {
                fs::create_dir_all(parent).map_err(|source| ReportError::Io {
                    path: parent.to_path_buf(),
                    source,
                })?;
            }
            write_file(target, report.to_json().as_bytes())?;
            Ok(vec![target.to_path_buf()])
        }
        ReportFormat::CsvBundle => {
            fs::create_dir_all(target).map_err(|source| ReportError::Io {
                path: target.to_path_buf(),
                source,
            })?;
            let mut written = Vec::new();
            let mut files = Vec::new();
            for table in csv_tables(report) {
                let body = table.render();
                let path = target.join(table.name);
                write_file(&path, body.as_bytes())?;
                files.push(ManifestEntry {
                    file: table.name.to_string(),
                    rows: table.rows.len(),
                    sha256: hex::encode(Sha256::digest(body.as_bytes())),
                });
                written.push(path);
            }
            let manifest = Manifest {
                schema_version: report.schema_version,
                tool_version: report.tool_version.clone(),
                generated_at: report.generated_at,
                as_of: report.as_of,
                graph_summary: report.graph_summary,
                params: report.params,
                snapshot_meta: report.snapshot_meta.clone(),
                notes: report.notes.clone(),
                files,
            };
            let path = target.join("manifest.json");
            let mut body = serde_json::to_string_pretty(&manifest).expect("manifest serializes");
            body.push('\n');
            write_file(&path, body.as_bytes())?;
            written.push(path);
            Ok(written)
        }
    }
}

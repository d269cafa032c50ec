//! Curated per-package metadata and the join that produces the analysis
//! table.
//!
//! The curated CSV carries everything that cannot be derived from the
//! dependency graph: repository URL, implementation language, category,
//! backer, the Debian source-package name, and exclusion decisions.

use std::collections::{BTreeMap, HashMap, HashSet};
use std::fmt;
use std::io::Read;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::gitmetrics::RepoMetrics;
use crate::vulndb::PackageVulnStats;

pub const CURATED_COLUMNS: [&str; 8] = [
    "package_id",
    "repo_url",
    "language",
    "category",
    "backer",
    "debian_source",
    "excluded",
    "exclusion_reason",
];

#[derive(Debug, Error)]
pub enum DatasetError {
    #[error("curated CSV: {0}")]
    Csv(#[from] csv::Error),
    #[error("curated CSV is missing the required package_id column")]
    MissingPackageIdColumn,
    #[error("curated CSV line {line}: {reason}")]
    Row { line: u64, reason: String },
    #[error("curated CSV line {line}: duplicate package_id {package_id:?}")]
    DuplicatePackage { line: u64, package_id: String },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Backer {
    SinglePerson,
    Npo,
    Company,
    Multi,
    Unknown,
}

impl Backer {
    pub fn as_str(self) -> &'static str {
        match self {
            Backer::SinglePerson => "single-person",
            Backer::Npo => "npo",
            Backer::Company => "company",
            Backer::Multi => "multi",
            Backer::Unknown => "unknown",
        }
    }
}

impl FromStr for Backer {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim().to_ascii_lowercase().replace(['_', ' '], "-").as_str() {
            "single-person" | "person" => Ok(Backer::SinglePerson),
            "npo" | "non-profit" => Ok(Backer::Npo),
            "company" => Ok(Backer::Company),
            "multi" => Ok(Backer::Multi),
            "unknown" => Ok(Backer::Unknown),
            other => Err(format!("unknown backer {other:?}")),
        }
    }
}

impl fmt::Display for Backer {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ExclusionReason {
    DuplicateVersion,
    DocsOnly,
    LegacyVcs,
    Other,
}

impl ExclusionReason {
    pub fn as_str(self) -> &'static str {
        match self {
            ExclusionReason::DuplicateVersion => "duplicate-version",
            ExclusionReason::DocsOnly => "docs-only",
            ExclusionReason::LegacyVcs => "legacy-vcs",
            ExclusionReason::Other => "other",
        }
    }
}

impl FromStr for ExclusionReason {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim().to_ascii_lowercase().as_str() {
            "duplicate-version" => Ok(ExclusionReason::DuplicateVersion),
            "docs-only" => Ok(ExclusionReason::DocsOnly),
            "legacy-vcs" => Ok(ExclusionReason::LegacyVcs),
            "other" => Ok(ExclusionReason::Other),
            other => Err(format!("unknown exclusion reason {other:?}")),
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct CuratedRecord {
    pub package_id: String,
    pub repo_url: Option<String>,
    pub language: Option<String>,
    pub category: Option<String>,
    pub backer: Option<Backer>,
    pub debian_source: Option<String>,
    pub excluded: bool,
    pub exclusion_reason: Option<ExclusionReason>,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct CuratedLoad {
    pub records: Vec<CuratedRecord>,
    pub warnings: Vec<String>,
}

fn parse_bool(s: &str) -> Option<bool> {
    match s.trim().to_ascii_lowercase().as_str() {
        "" | "false" | "no" | "0" => Some(false),
        "true" | "yes" | "1" => Some(true),
        _ => None,
    }
}

/// Reads the curated CSV. Only `package_id` is a required column; unknown
/// columns are reported as warnings.
pub fn load_curated<R: Read>(reader: R) -> Result<CuratedLoad, DatasetError> {
    let mut rdr = csv::ReaderBuilder::new().flexible(false).from_reader(reader);
    let headers = rdr.headers()?.clone();
    let mut out = CuratedLoad::default();
    let mut column: HashMap<&str, usize> = HashMap::new();
    for (i, h) in headers.iter().enumerate() {
        let h = h.trim();
        match CURATED_COLUMNS.iter().find(|c| **c == h) {
            Some(known) => {
                column.insert(known, i);
            }
            None => out.warnings.push(format!("unknown column {h:?} ignored")),
        }
    }
    if !column.contains_key("package_id") {
        return Err(DatasetError::MissingPackageIdColumn);
    }

    let mut seen = HashSet::new();
    for row in rdr.records() {
        let row = row?;
        let line = row.position().map(|p| p.line()).unwrap_or(0);
        let field = |name: &str| -> Option<String> {
            column
                .get(name)
                .and_then(|&i| row.get(i))
                .map(str::trim)
                .filter(|s| !s.is_empty())
                .map(str::to_string)
        };
        let row_err = |reason: String| DatasetError::Row { line, reason };

        let package_id = field("package_id").ok_or_else(|| row_err("missing package_id".into()))?;
        let backer = field("backer")
            .map(|b| b.parse::<Backer>())
            .transpose()
            .map_err(row_err)?;
        let excluded_raw = field("excluded").unwrap_or_default();
        let excluded = parse_bool(&excluded_raw)
            .ok_or_else(|| row_err(format!("invalid excluded value {excluded_raw:?}")))?;
        let exclusion_reason = field("exclusion_reason")
            .map(|r| r.parse::<ExclusionReason>())
            .transpose()
            .map_err(row_err)?;
        if excluded != exclusion_reason.is_some() {
            return Err(row_err(format!(
                "package {package_id:?}: excluded and exclusion_reason must be set together"
            )));
        }
        if !seen.insert(package_id.clone()) {
            return Err(DatasetError::DuplicatePackage { line, package_id });
        }
        out.records.push(CuratedRecord {
            package_id,
            repo_url: field("repo_url"),
            language: field("language"),
            category: field("category"),
            backer,
            debian_source: field("debian_source"),
            excluded,
            exclusion_reason,
        });
    }
    Ok(out)
}

/// Writes records back in the canonical column order.
pub fn write_curated(records: &[CuratedRecord]) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(CURATED_COLUMNS).expect("in-memory write");
    for r in records {
        let opt = |v: &Option<String>| v.clone().unwrap_or_default();
        w.write_record([
            r.package_id.clone(),
            opt(&r.repo_url),
            opt(&r.language),
            opt(&r.category),
            r.backer.map(|b| b.as_str().to_string()).unwrap_or_default(),
            opt(&r.debian_source),
            r.excluded.to_string(),
            r.exclusion_reason
                .map(|e| e.as_str().to_string())
                .unwrap_or_default(),
        ])
        .expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("flush")).expect("utf-8")
}

/// One ranked package as it enters the join.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RankedPackage {
    pub id: String,
    pub name: String,
    pub version: String,
    pub licenses: Vec<String>,
    pub reverse_dependencies: u64,
    pub score: f64,
    pub rank: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AnalysisRow {
    pub package_id: String,
    pub name: String,
    pub rank: usize,
    pub katz_score: f64,
    pub licenses: Vec<String>,
    pub reverse_dependencies: u64,
    pub metadata: CuratedRecord,
    pub vuln: Option<PackageVulnStats>,
    pub metrics: Option<RepoMetrics>,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct AnalysisTable {
    pub rows: Vec<AnalysisRow>,
    /// Ranked packages without a Debian source mapping.
    pub missing_in_debian: Vec<String>,
    /// Ranked packages that were dropped by curation.
    pub excluded: Vec<String>,
    pub warnings: Vec<String>,
}

/// Left-joins the ranking with curation, vulnerability stats (keyed by
/// Debian source package) and repository metrics (keyed by package id).
///
/// Passing `None` for `vuln_stats` means no vulnerability data exists at all;
/// rows then carry no vuln section and nothing is reported missing.
pub fn build_table(
    ranking: &[RankedPackage],
    curated: &[CuratedRecord],
    vuln_stats: Option<&BTreeMap<String, PackageVulnStats>>,
    metrics: &BTreeMap<String, RepoMetrics>,
) -> AnalysisTable {
    let by_id: HashMap<&str, &CuratedRecord> =
        curated.iter().map(|r| (r.package_id.as_str(), r)).collect();
    let ranked_ids: HashSet<&str> = ranking.iter().map(|r| r.id.as_str()).collect();

    let mut table = AnalysisTable::default();
    for r in curated {
        if !ranked_ids.contains(r.package_id.as_str()) {
            table.warnings.push(format!(
                "curated record {:?} does not match any ranked package",
                r.package_id
            ));
        }
    }

    for ranked in ranking {
        let metadata = match by_id.get(ranked.id.as_str()) {
            Some(record) if record.excluded => {
                table.excluded.push(ranked.id.clone());
                continue;
            }
            Some(record) => (*record).clone(),
            None => CuratedRecord {
                package_id: ranked.id.clone(),
                ..Default::default()
            },
        };
        let vuln = match (vuln_stats, &metadata.debian_source) {
            (None, _) => None,
            (Some(_), None) => {
                table.missing_in_debian.push(ranked.id.clone());
                None
            }
            (Some(stats), Some(source)) => Some(stats.get(source).cloned().unwrap_or_else(|| {
                PackageVulnStats {
                    source_package: source.clone(),
                    ..Default::default()
                }
            })),
        };
        let row_metrics = metadata
            .repo_url
            .as_ref()
            .and_then(|_| metrics.get(&ranked.id).cloned());
        table.rows.push(AnalysisRow {
            package_id: ranked.id.clone(),
            name: ranked.name.clone(),
            rank: ranked.rank,
            katz_score: ranked.score,
            licenses: ranked.licenses.clone(),
            reverse_dependencies: ranked.reverse_dependencies,
            metadata,
            vuln,
            metrics: row_metrics,
        });
    }
    table
}

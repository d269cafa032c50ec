//! Debian security tracker database: parsing, per-package summaries and a
//! file-backed fetch cache.
//!
//! The tracker document maps source package → vulnerability id → entry:
//!
//! ```text
//! {"zlib": {"CVE-2023-45853": {"description": "...",
//!                              "releases": {"bookworm": {"status": "open",
//!                                                        "fixed_version": "...",
//!                                                        "urgency": "low"}}}}}
//! ```

use std::collections::BTreeMap;

use chrono::NaiveDate;
use serde::{Deserialize, Serialize};
use serde_json::{Map, Value};
use thiserror::Error;

mod cache;

pub use cache::{
    fetch_tracker, CacheMeta, FetchError, FetchOptions, FetchedTracker, HttpTransport,
    ReqwestTransport, DEFAULT_TRACKER_URL,
};

#[derive(Debug, Error)]
pub enum VulnError {
    #[error("malformed tracker JSON at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("invalid tracker entry for package {package:?} at {key:?}: {reason}")]
    Validation {
        package: String,
        key: String,
        reason: String,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Open,
    Resolved,
    Undetermined,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Open => "open",
            Status::Resolved => "resolved",
            Status::Undetermined => "undetermined",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReleaseStatus {
    pub status: Status,
    pub fixed_version: Option<String>,
    pub urgency: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CveRecord {
    pub cve_id: String,
    pub description: String,
    pub release_statuses: BTreeMap<String, ReleaseStatus>,
}

impl CveRecord {
    /// True for a `CVE-<year>-<number>` id with year >= 1999. Other ids
    /// (`TEMP-...`, advisories) are kept but never counted.
    pub fn is_cve(&self) -> bool {
        is_cve_id(&self.cve_id)
    }
}

pub fn is_cve_id(id: &str) -> bool {
    let Some(rest) = id.strip_prefix("CVE-") else {
        return false;
    };
    let Some((year, number)) = rest.split_once('-') else {
        return false;
    };
    let digits = |s: &str| !s.is_empty() && s.bytes().all(|b| b.is_ascii_digit());
    if year.len() != 4 || !digits(year) || number.len() < 4 || !digits(number) {
        return false;
    }
    year.parse::<u32>().map(|y| y >= 1999).unwrap_or(false)
}

/// Parsed tracker: source package → records, both in key order.
pub type TrackerDb = BTreeMap<String, Vec<CveRecord>>;

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ParseReport {
    /// Number of entries whose id is not a CVE id.
    pub non_cve_entries: usize,
    /// Human-readable notes, e.g. unrecognised status values.
    pub warnings: Vec<String>,
}

/// Parses the tracker's JSON dump. Unknown fields are ignored.
pub fn parse_tracker_document(document: &str) -> Result<(TrackerDb, ParseReport), VulnError> {
    let root: Value = serde_json::from_str(document).map_err(|e| VulnError::Parse {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })?;
    let Value::Object(packages) = root else {
        return Err(VulnError::Validation {
            package: String::new(),
            key: String::new(),
            reason: "top level is not an object".into(),
        });
    };

    let mut db = TrackerDb::new();
    let mut report = ParseReport::default();
    for (package, entries) in packages {
        let invalid = |key: &str, reason: &str| VulnError::Validation {
            package: package.clone(),
            key: key.to_string(),
            reason: reason.to_string(),
        };
        let Value::Object(entries) = entries else {
            return Err(invalid("", "package value is not an object"));
        };
        let mut records = Vec::with_capacity(entries.len());
        for (id, entry) in entries {
            let Value::Object(entry) = entry else {
                return Err(invalid(&id, "entry is not an object"));
            };
            let description = match entry.get("description") {
                None | Some(Value::Null) => String::new(),
                Some(Value::String(s)) => s.clone(),
                Some(_) => return Err(invalid(&id, "description is not a string")),
            };
            let mut release_statuses = BTreeMap::new();
            match entry.get("releases") {
                None | Some(Value::Null) => {}
                Some(Value::Object(releases)) => {
                    for (release, value) in releases {
                        let key = format!("{id}/releases/{release}");
                        let Value::Object(fields) = value else {
                            return Err(invalid(&key, "release entry is not an object"));
                        };
                        let status = match fields.get("status") {
                            Some(Value::String(s)) => match s.as_str() {
                                "open" => Status::Open,
                                "resolved" => Status::Resolved,
                                "undetermined" => Status::Undetermined,
                                other => {
                                    report.warnings.push(format!(
                                        "{package}/{key}: unknown status {other:?} treated as undetermined"
                                    ));
                                    Status::Undetermined
                                }
                            },
                            None | Some(Value::Null) => Status::Undetermined,
                            Some(_) => return Err(invalid(&key, "status is not a string")),
                        };
                        let opt = |name: &str| -> Result<Option<String>, VulnError> {
                            match fields.get(name) {
                                None | Some(Value::Null) => Ok(None),
                                Some(Value::String(s)) => Ok(Some(s.clone())),
                                Some(_) => Err(invalid(&key, &format!("{name} is not a string"))),
                            }
                        };
                        release_statuses.insert(
                            release.clone(),
                            ReleaseStatus {
                                status,
                                fixed_version: opt("fixed_version")?,
                                urgency: opt("urgency")?,
                            },
                        );
                    }
                }
                Some(_) => return Err(invalid(&id, "releases is not an object")),
            }
            let record = CveRecord {
                cve_id: id,
                description,
                release_statuses,
            };
            if !record.is_cve() {
                report.non_cve_entries += 1;
            }
            records.push(record);
        }
        db.insert(package, records);
    }
    Ok((db, report))
}

/// Serializes the modelled fields back into the tracker shape.
pub fn serialize_tracker(db: &TrackerDb) -> String {
    let mut root = Map::new();
    for (package, records) in db {
        let mut entries = Map::new();
        for r in records {
            let mut releases = Map::new();
            for (name, rs) in &r.release_statuses {
                let mut fields = Map::new();
                fields.insert("status".into(), Value::String(rs.status.as_str().into()));
                if let Some(v) = &rs.fixed_version {
                    fields.insert("fixed_version".into(), Value::String(v.clone()));
                }
                if let Some(u) = &rs.urgency {
                    fields.insert("urgency".into(), Value::String(u.clone()));
                }
                releases.insert(name.clone(), Value::Object(fields));
            }
            let mut entry = Map::new();
            entry.insert("description".into(), Value::String(r.description.clone()));
            entry.insert("releases".into(), Value::Object(releases));
            entries.insert(r.cve_id.clone(), Value::Object(entry));
        }
        root.insert(package.clone(), Value::Object(entries));
    }
    serde_json::to_string(&Value::Object(root)).expect("tracker serializes")
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct PackageVulnStats {
    pub source_package: String,
    pub total_entries: u64,
    pub open_count: u64,
    pub resolved_count: u64,
}

/// Counts CVE statuses for one release. Records without that release count
/// toward `total_entries` only; non-CVE ids are not counted at all.
pub fn summarize(source_package: &str, records: &[CveRecord], release: &str) -> PackageVulnStats {
    let mut stats = PackageVulnStats {
        source_package: source_package.to_string(),
        ..Default::default()
    };
    for record in records.iter().filter(|r| r.is_cve()) {
        stats.total_entries += 1;
        match record.release_statuses.get(release).map(|r| r.status) {
            Some(Status::Open) => stats.open_count += 1,
            Some(Status::Resolved) => stats.resolved_count += 1,
            Some(Status::Undetermined) | None => {}
        }
    }
    stats
}

/// Debian releases with their release dates, oldest first.
pub const DEBIAN_RELEASES: &[(&str, &str)] = &[
    ("jessie", "2015-04-25"),
    ("stretch", "2017-06-17"),
    ("buster", "2019-07-06"),
    ("bullseye", "2021-08-14"),
    ("bookworm", "2023-06-10"),
    ("trixie", "2025-08-09"),
];

/// Development codename that follows the newest entry of [`DEBIAN_RELEASES`].
const NEXT_TESTING: &str = "forky";

/// Maps a suite alias (`stable`, `oldstable`, `oldoldstable`, `testing`,
/// `unstable`) to the tracker's codename as of `on`. Codenames pass through
/// unchanged.
pub fn resolve_release(name: &str, on: NaiveDate) -> String {
    let released: Vec<&str> = DEBIAN_RELEASES
        .iter()
        .filter(|(_, date)| NaiveDate::parse_from_str(date, "%Y-%m-%d").expect("valid table") <= on)
        .map(|(code, _)| *code)
        .collect();
    let back = |k: usize| -> Option<String> {
        released
            .len()
            .checked_sub(k + 1)
            .map(|i| released[i].to_string())
    };
    let resolved = match name {
        "stable" => back(0),
        "oldstable" => back(1),
        "oldoldstable" => back(2),
        "testing" => Some(
            DEBIAN_RELEASES
                .get(released.len())
                .map(|(code, _)| code.to_string())
                .unwrap_or_else(|| NEXT_TESTING.to_string()),
        ),
        "unstable" => Some("sid".to_string()),
        _ => None,
    };
    resolved.unwrap_or_else(|| name.to_string())
}

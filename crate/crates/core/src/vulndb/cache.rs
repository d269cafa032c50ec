//! On-disk cache for the tracker dump: `<dir>/tracker.json` plus a
//! `<dir>/tracker.meta.json` sidecar recording when and where it came from.

use std::fs::{self, File};
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Duration;

use chrono::{DateTime, Utc};
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use thiserror::Error;

pub const DEFAULT_TRACKER_URL: &str = "https://security-tracker.debian.org/tracker/data/json";

const DOCUMENT_FILE: &str = "tracker.json";
const META_FILE: &str = "tracker.meta.json";
const LOCK_FILE: &str = "tracker.lock";

#[derive(Debug, Error)]
pub enum FetchError {
    #[error("could not download {endpoint} and no cached copy exists: {reason}")]
    NoCache { endpoint: String, reason: String },
    #[error(
        "could not download {endpoint} ({reason}); a stale cached copy from {fetched_at} is \
         available (use lenient mode to accept it)"
    )]
    StaleCache {
        endpoint: String,
        reason: String,
        fetched_at: DateTime<Utc>,
    },
    #[error("cache I/O error at {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

impl FetchError {
    /// True when the failure was caused by the network rather than local I/O.
    pub fn is_network(&self) -> bool {
        matches!(self, FetchError::NoCache { .. } | FetchError::StaleCache { .. })
    }
}

fn io_err(path: &Path) -> impl FnOnce(std::io::Error) -> FetchError + '_ {
    move |source| FetchError::Io {
        path: path.to_path_buf(),
        source,
    }
}

/// Minimal blocking HTTP GET, so tests can substitute a fake.
pub trait HttpTransport {
    fn get(&self, url: &str) -> Result<Vec<u8>, String>;
}

pub struct ReqwestTransport {
    client: reqwest::blocking::Client,
}

impl ReqwestTransport {
    pub fn new(timeout: Duration) -> Self {
        let client = reqwest::blocking::Client::builder()
            .timeout(timeout)
            .user_agent(concat!("depcrit/", env!("CARGO_PKG_VERSION")))
            .build()
            .expect("http client builds");
        Self { client }
    }
}

impl Default for ReqwestTransport {
    fn default() -> Self {
        Self::new(Duration::from_secs(300))
    }
}

impl HttpTransport for ReqwestTransport {
    fn get(&self, url: &str) -> Result<Vec<u8>, String> {
        // archived snapshots are addressed as file:// URLs
        if let Some(path) = url.strip_prefix("file://") {
            return fs::read(path).map_err(|e| format!("{path}: {e}"));
        }
        let response = self
            .client
            .get(url)
            .send()
            .map_err(|e| e.to_string())?
            .error_for_status()
            .map_err(|e| e.to_string())?;
        response.bytes().map(|b| b.to_vec()).map_err(|e| e.to_string())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CacheMeta {
    pub fetched_at: DateTime<Utc>,
    pub source_url: String,
    pub sha256: String,
    pub bytes: u64,
}

#[derive(Debug, Clone)]
pub struct FetchOptions {
    pub endpoint: String,
    pub cache_dir: PathBuf,
    pub max_age: Duration,
    /// Never touch the network; use whatever is cached.
    pub offline: bool,
    /// Accept a stale cache when the download fails.
    pub lenient: bool,
}

#[derive(Debug, Clone)]
pub struct FetchedTracker {
    pub document: String,
    pub meta: CacheMeta,
    pub from_cache: bool,
    pub stale: bool,
    pub warning: Option<String>,
}

fn read_cache(dir: &Path) -> Result<Option<(String, CacheMeta)>, FetchError> {
    let doc_path = dir.join(DOCUMENT_FILE);
    let meta_path = dir.join(META_FILE);
    if !doc_path.is_file() || !meta_path.is_file() {
        return Ok(None);
    }
    let meta_text = fs::read_to_string(&meta_path).map_err(io_err(&meta_path))?;
    let Ok(meta) = serde_json::from_str::<CacheMeta>(&meta_text) else {
        log::warn!("ignoring unreadable cache metadata at {}", meta_path.display());
        return Ok(None);
    };
    let document = fs::read_to_string(&doc_path).map_err(io_err(&doc_path))?;
    Ok(Some((document, meta)))
}

fn write_atomic(path: &Path, bytes: &[u8]) -> Result<(), FetchError> {
    let tmp = path.with_extension("tmp");
    let mut f = File::create(&tmp).map_err(io_err(&tmp))?;
    f.write_all(bytes).map_err(io_err(&tmp))?;
    f.sync_all().map_err(io_err(&tmp))?;
    fs::rename(&tmp, path).map_err(io_err(path))
}

/// Returns the tracker document, from cache when it is younger than
/// `max_age` (and was fetched from the same endpoint), otherwise by
/// downloading and atomically replacing the cache. Holds an exclusive lock
/// on the cache directory for the duration.
pub fn fetch_tracker(
    opts: &FetchOptions,
    transport: &dyn HttpTransport,
    now: DateTime<Utc>,
) -> Result<FetchedTracker, FetchError> {
    fs::create_dir_all(&opts.cache_dir).map_err(io_err(&opts.cache_dir))?;
    let lock_path = opts.cache_dir.join(LOCK_FILE);
    let lock = File::create(&lock_path).map_err(io_err(&lock_path))?;
    lock.lock().map_err(io_err(&lock_path))?;

    let cached = read_cache(&opts.cache_dir)?;
    let is_stale = |meta: &CacheMeta| {
        let age = now.signed_duration_since(meta.fetched_at);
        age.to_std().map(|a| a >= opts.max_age).unwrap_or(false)
    };

    if opts.offline {
        return match cached {
            Some((document, meta)) => {
                let stale = is_stale(&meta);
                let warning = stale.then(|| {
                    format!("offline: using cached tracker from {} (stale)", meta.fetched_at)
                });
                Ok(FetchedTracker {
                    document,
                    meta,
                    from_cache: true,
                    stale,
                    warning,
                })
            }
            None => Err(FetchError::NoCache {
                endpoint: opts.endpoint.clone(),
                reason: "offline mode".into(),
            }),
        };
    }

    if let Some((document, meta)) = &cached {
        if meta.source_url == opts.endpoint && !is_stale(meta) {
            return Ok(FetchedTracker {
                document: document.clone(),
                meta: meta.clone(),
                from_cache: true,
                stale: false,
                warning: None,
            });
        }
    }

    let downloaded = transport.get(&opts.endpoint).and_then(|bytes| {
        serde_json::from_slice::<serde::de::IgnoredAny>(&bytes)
            .map_err(|e| format!("response is not JSON: {e}"))?;
        String::from_utf8(bytes).map_err(|e| format!("response is not UTF-8: {e}"))
    });
    match downloaded {
        Ok(document) => {
            let meta = CacheMeta {
                fetched_at: now,
                source_url: opts.endpoint.clone(),
                sha256: hex::encode(Sha256::digest(document.as_bytes())),
                bytes: document.len() as u64,
            };
            write_atomic(&opts.cache_dir.join(DOCUMENT_FILE), document.as_bytes())?;
            let meta_json = serde_json::to_string_pretty(&meta).expect("meta serializes");
            write_atomic(&opts.cache_dir.join(META_FILE), meta_json.as_bytes())?;
            Ok(FetchedTracker {
                document,
                meta,
                from_cache: false,
                stale: false,
                warning: None,
            })
        }
        Err(reason) => match cached {
            Some((document, meta)) if opts.lenient => {
                let warning = format!(
                    "download of {} failed ({reason}); using stale cache from {}",
                    opts.endpoint, meta.fetched_at
                );
                log::warn!("{warning}");
                Ok(FetchedTracker {
                    document,
                    meta,
                    from_cache: true,
                    stale: true,
                    warning: Some(warning),
                })
            }
            Some((_, meta)) => Err(FetchError::StaleCache {
                endpoint: opts.endpoint.clone(),
                reason,
                fetched_at: meta.fetched_at,
            }),
            None => Err(FetchError::NoCache {
                endpoint: opts.endpoint.clone(),
                reason,
            }),
        },
    }
}

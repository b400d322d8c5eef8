//! Disk cache for enumeration count tables: one JSON document per family,
//! keyed by model, dimension, maximum size, and a digest of the defining
//! constraints. Writes are atomic (write a temporary, then rename), so a
//! crashed run never leaves a truncated entry behind.

use crate::cluster::{Constraint, Model};
use crate::enumerate::{count, CountTable, EnumOptions};
use crate::error::Result;
use serde::Serialize;
use sha2::{Digest, Sha256};
use std::fs;
use std::path::{Path, PathBuf};

/// Environment variable overriding the default cache directory.
pub const CACHE_DIR_ENV: &str = "LATAN_CACHE_DIR";

/// The cache directory: the environment override when set, otherwise a
/// fixed location under the system temporary directory.
pub fn default_cache_dir() -> PathBuf {
    match std::env::var_os(CACHE_DIR_ENV) {
        Some(dir) if !dir.is_empty() => PathBuf::from(dir),
        _ => std::env::temp_dir().join("latan-cache"),
    }
}

/// Stable 16-hex-character digest of a constraint list.
pub fn constraint_digest(constraints: &[Constraint]) -> String {
    let joined = constraints
        .iter()
        .map(|c| c.canonical_string())
        .collect::<Vec<_>>()
        .join(";");
    let hash = Sha256::digest(joined.as_bytes());
    hash.iter().take(8).map(|b| format!("{b:02x}")).collect()
}

/// File name of the cache entry for a family.
pub fn cache_file_name(model: Model, d: usize, n_max: usize, digest: &str) -> String {
    format!("{}-d{}-N{}-{}.json", model.name(), d, n_max, digest)
}

/// Returns the cached table when a valid entry exists, otherwise counts,
/// stores the result, and returns it. Entries from other engine versions or
/// with mismatched metadata are recomputed and replaced.
pub fn cached_count(
    model: Model,
    d: usize,
    n_max: usize,
    constraints: &[Constraint],
    options: &EnumOptions,
    dir: &Path,
) -> Result<CountTable> {
    let digest = constraint_digest(constraints);
    let path = dir.join(cache_file_name(model, d, n_max, &digest));
    let wanted: Vec<String> = constraints.iter().map(|c| c.canonical_string()).collect();
    if let Some(table) = read_entry(&path) {
        if table.model == model
            && table.d == d
            && table.n_max == n_max
            && table.constraints == wanted
            && table.engine_version == crate::ENGINE_VERSION
        {
            return Ok(table);
        }
    }
    let table = count(model, d, n_max, constraints, options)?;
    write_atomic(&path, &table)?;
    Ok(table)
}

/// Parses an entry; unreadable or malformed files count as absent.
fn read_entry(path: &Path) -> Option<CountTable> {
    let text = fs::read_to_string(path).ok()?;
    serde_json::from_str(&text).ok()
}

fn write_atomic(path: &Path, table: &CountTable) -> Result<()> {
    if let Some(dir) = path.parent() {
        fs::create_dir_all(dir)?;
    }
    let mut tmp = path.as_os_str().to_owned();
    tmp.push(format!(".tmp-{}", std::process::id()));
    let tmp = PathBuf::from(tmp);
    fs::write(&tmp, serde_json::to_string_pretty(table)?)?;
    fs::rename(&tmp, path)?;
    Ok(())
}

/// One row of a cache listing.
#[derive(Clone, Debug, Serialize)]
pub struct CacheEntryInfo {
    pub file_name: String,
    pub bytes: u64,
    pub valid: bool,
    pub detail: String,
}

/// Lists the cache entries in `dir`, sorted by file name. A missing
/// directory lists as empty.
pub fn cache_ls(dir: &Path) -> Result<Vec<CacheEntryInfo>> {
    let mut out = Vec::new();
    let entries = match fs::read_dir(dir) {
        Ok(e) => e,
        Err(err) if err.kind() == std::io::ErrorKind::NotFound => return Ok(out),
        Err(err) => return Err(err.into()),
    };
    for entry in entries {
        let entry = entry?;
        let path = entry.path();
        if path.extension().and_then(|e| e.to_str()) != Some("json") {
            continue;
        }
        let file_name = entry.file_name().to_string_lossy().into_owned();
        let bytes = entry.metadata()?.len();
        let info = match read_entry(&path) {
            Some(table) if table.engine_version == crate::ENGINE_VERSION => CacheEntryInfo {
                file_name,
                bytes,
                valid: true,
                detail: format!(
                    "{} d={} N={} ({} counts)",
                    table.model,
                    table.d,
                    table.n_max,
                    table.counts.len()
                ),
            },
            Some(table) => CacheEntryInfo {
                file_name,
                bytes,
                valid: false,
                detail: format!(
                    "engine version {} != {}",
                    table.engine_version,
                    crate::ENGINE_VERSION
                ),
            },
            None => CacheEntryInfo {
                file_name,
                bytes,
                valid: false,
                detail: "unreadable or malformed".to_string(),
            },
        };
        out.push(info);
    }
    out.sort_by(|a, b| a.file_name.cmp(&b.file_name));
    Ok(out)
}

/// Result of a garbage-collection pass.
#[derive(Clone, Debug, Serialize)]
pub struct GcReport {
    pub removed: usize,
    pub kept: usize,
    pub bytes_freed: u64,
}

/// Deletes invalid entries (malformed files and entries written by other
/// engine versions); keeps everything else.
pub fn cache_gc(dir: &Path) -> Result<GcReport> {
    let mut report = GcReport {
        removed: 0,
        kept: 0,
        bytes_freed: 0,
    };
    for info in cache_ls(dir)? {
        if info.valid {
            report.kept += 1;
        } else {
            fs::remove_file(dir.join(&info.file_name))?;
            report.removed += 1;
            report.bytes_freed += info.bytes;
        }
    }
    Ok(report)
}

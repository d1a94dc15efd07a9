//! CSV + JSON-manifest persistence for zero datasets, with a checksummed
//! record stream and an on-disk cache.
//!
//! Numbers are written with Rust's shortest round-trip formatting, so a
//! save/load cycle reproduces every `f64` bit for bit.

use crate::error::{Error, Result};
use crate::special_functions::FunctionId;
use crate::zero_finder::{
    count_check, default_grid_step, first_n_zeros, missed_zero_warning, scan_zeros, LocationKind,
    ZeroDataset, ZeroRecord,
};
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

pub const SCHEMA_VERSION: u32 = 1;
pub const CSV_HEADER: &str = "function,index,kind,t_or_x,residual";
/// Overrides the cache directory.
pub const CACHE_ENV: &str = "ZETARULES_CACHE_DIR";

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DatasetManifest {
    pub function: FunctionId,
    pub count: usize,
    pub t_max: f64,
    /// Hex SHA-256 of the CSV file.
    pub checksum: String,
    pub generator_metadata: String,
    pub schema_version: u32,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub warnings: Vec<String>,
}

/// Sidecar manifest path: `zeros.csv` → `zeros.manifest.json`.
pub fn manifest_path(path: &Path) -> PathBuf {
    path.with_extension("manifest.json")
}

pub fn checksum(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

/// CSV text of the records, header included.
pub fn to_csv(ds: &ZeroDataset) -> String {
    let mut out = String::with_capacity(64 * (ds.records.len() + 1));
    out.push_str(CSV_HEADER);
    out.push('\n');
    for r in &ds.records {
        out.push_str(&format!(
            "{},{},{},{},{}\n",
            r.function.tag(),
            r.index,
            r.location_kind.as_str(),
            r.t_or_x,
            r.residual
        ));
    }
    out
}

fn write_atomic(path: &Path, bytes: &[u8]) -> Result<()> {
    let tmp = path.with_extension(format!(
        "{}.tmp",
        path.extension().and_then(|e| e.to_str()).unwrap_or("")
    ));
    {
        let mut f = fs::File::create(&tmp)?;
        f.write_all(bytes)?;
        f.sync_all()?;
    }
    fs::rename(&tmp, path)?;
    Ok(())
}

pub fn save_dataset(ds: &ZeroDataset, path: &Path) -> Result<DatasetManifest> {
    save_dataset_with_notes(ds, path, &[])
}

/// [`save_dataset`] with `# note` lines after the records; the checksum
/// covers them and [`load_dataset`] skips them.
pub fn save_dataset_with_notes(ds: &ZeroDataset, path: &Path, notes: &[String]) -> Result<DatasetManifest> {
    validate(ds)?;
    let mut csv = to_csv(ds);
    for n in notes {
        csv.push_str("# ");
        csv.push_str(&n.replace('\n', " "));
        csv.push('\n');
    }
    let manifest = DatasetManifest {
        function: ds.function,
        count: ds.records.len(),
        t_max: ds.t_max_scanned,
        checksum: checksum(csv.as_bytes()),
        generator_metadata: ds.generator_metadata.clone(),
        schema_version: SCHEMA_VERSION,
        warnings: ds.warnings.clone(),
    };
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        fs::create_dir_all(dir)?;
    }
    write_atomic(path, csv.as_bytes())?;
    let json = serde_json::to_string_pretty(&manifest)? + "\n";
    write_atomic(&manifest_path(path), json.as_bytes())?;
    Ok(manifest)
}

fn parse_kind(s: &str) -> Option<LocationKind> {
    match s {
        "critical_line" => Some(LocationKind::CriticalLine),
        "real_axis" => Some(LocationKind::RealAxis),
        _ => None,
    }
}

fn parse_row(line: &str, lineno: usize) -> Result<ZeroRecord> {
    let bad = |what: &str| Error::Schema(format!("line {lineno}: {what}: {line:?}"));
    let cols: Vec<&str> = line.split(',').collect();
    if cols.len() != 5 {
        return Err(bad("expected 5 columns"));
    }
    let function: FunctionId = cols[0].parse().map_err(|_| bad("unknown function tag"))?;
    let index: usize = cols[1].parse().map_err(|_| bad("bad index"))?;
    let location_kind = parse_kind(cols[2]).ok_or_else(|| bad("bad kind"))?;
    let t_or_x: f64 = cols[3].parse().map_err(|_| bad("bad t_or_x"))?;
    let residual: f64 = cols[4].parse().map_err(|_| bad("bad residual"))?;
    if !t_or_x.is_finite() || !residual.is_finite() {
        return Err(bad("non-finite value"));
    }
    Ok(ZeroRecord { function, index, location_kind, t_or_x, residual })
}

/// Ordering invariants: one function tag; within each location kind the
/// ordinals strictly increase; critical-line ordinates strictly increase.
pub fn validate(ds: &ZeroDataset) -> Result<()> {
    let mut last_index = [0usize; 2];
    let mut last_t = f64::NEG_INFINITY;
    for r in &ds.records {
        if r.function != ds.function {
            return Err(Error::Schema(format!(
                "record {} is tagged {} in a {} dataset",
                r.index, r.function, ds.function
            )));
        }
        let slot = match r.location_kind {
            LocationKind::CriticalLine => 0,
            LocationKind::RealAxis => 1,
        };
        if r.index == last_index[slot] {
            return Err(Error::Schema(format!(
                "duplicate {} ordinal {}",
                r.location_kind.as_str(),
                r.index
            )));
        }
        if r.index < last_index[slot] {
            return Err(Error::Schema(format!(
                "{} ordinal {} follows {}",
                r.location_kind.as_str(),
                r.index,
                last_index[slot]
            )));
        }
        last_index[slot] = r.index;
        if r.location_kind == LocationKind::CriticalLine {
            if r.t_or_x <= last_t {
                return Err(Error::Schema(format!(
                    "ordinate {} of zero {} is not above the previous {}",
                    r.t_or_x, r.index, last_t
                )));
            }
            last_t = r.t_or_x;
        }
    }
    Ok(())
}

pub fn load_dataset(path: &Path) -> Result<ZeroDataset> {
    let mpath = manifest_path(path);
    if !mpath.exists() {
        return Err(Error::Schema(format!(
            "{} has no manifest {}; regenerate it with `zetarules zeros --output {}`",
            path.display(),
            mpath.display(),
            path.display()
        )));
    }
    let manifest: DatasetManifest = serde_json::from_slice(&fs::read(&mpath)?)
        .map_err(|e| Error::Schema(format!("unreadable manifest {}: {e}", mpath.display())))?;
    if manifest.schema_version != SCHEMA_VERSION {
        return Err(Error::Schema(format!(
            "schema version {} (expected {SCHEMA_VERSION})",
            manifest.schema_version
        )));
    }
    let bytes = fs::read(path)?;
    let actual = checksum(&bytes);
    if actual != manifest.checksum {
        return Err(Error::Checksum { expected: manifest.checksum, actual });
    }
    let text = String::from_utf8(bytes).map_err(|_| Error::Schema("CSV is not UTF-8".into()))?;
    let mut lines = text.lines();
    if lines.next() != Some(CSV_HEADER) {
        return Err(Error::Schema(format!("missing header {CSV_HEADER:?}")));
    }
    let records: Vec<ZeroRecord> = lines
        .enumerate()
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
        .map(|(i, l)| parse_row(l, i + 2))
        .collect::<Result<_>>()?;
    if records.len() != manifest.count {
        return Err(Error::Schema(format!(
            "manifest count {} but {} records",
            manifest.count,
            records.len()
        )));
    }
    let ds = ZeroDataset {
        function: manifest.function,
        records,
        t_max_scanned: manifest.t_max,
        generator_metadata: manifest.generator_metadata,
        warnings: manifest.warnings,
    };
    validate(&ds)?;
    Ok(ds)
}

/// Continues the critical-line scan of `ds` from `t_max_scanned` up to
/// `t_new_max`, with the grid step a fresh scan of `[0, t_new_max]` uses.
pub fn extend_dataset(ds: &ZeroDataset, t_new_max: f64) -> Result<ZeroDataset> {
    validate(ds)?;
    if t_new_max == ds.t_max_scanned {
        return Ok(ds.clone());
    }
    if !(t_new_max > ds.t_max_scanned) {
        return Err(Error::Domain(format!(
            "cannot extend a dataset scanned to {} down to {t_new_max}",
            ds.t_max_scanned
        )));
    }
    let more = scan_zeros(ds.function, ds.t_max_scanned, t_new_max, default_grid_step(t_new_max))?;
    let mut out = ds.clone();
    let mut next = ds.critical_line().map(|r| r.index).max().unwrap_or(0) + 1;
    let last_t = ds.critical_line().last().map_or(f64::NEG_INFINITY, |r| r.t_or_x);
    // new critical-line rows go after the existing ones, before any real-axis rows
    let split = out
        .records
        .iter()
        .rposition(|r| r.location_kind == LocationKind::CriticalLine)
        .map_or(0, |i| i + 1);
    let fresh: Vec<ZeroRecord> = more
        .records
        .into_iter()
        .filter(|r| r.t_or_x > last_t)
        .map(|mut r| {
            r.index = next;
            next += 1;
            r
        })
        .collect();
    out.records.splice(split..split, fresh);
    out.t_max_scanned = t_new_max;
    out.generator_metadata = format!("{}; extended to {t_new_max}", ds.generator_metadata);
    out.warnings.retain(|w| !w.starts_with("MissedZeroWarning"));
    let (observed, predicted) = count_check(&out);
    out.warnings.extend(missed_zero_warning(observed, predicted));
    Ok(out)
}

/// Cache root: `$ZETARULES_CACHE_DIR`, else `$XDG_CACHE_HOME/zetarules`,
/// else `~/.cache/zetarules`, else `./.zetarules-cache`.
pub fn cache_dir() -> PathBuf {
    let env = |k: &str| std::env::var_os(k).filter(|v| !v.is_empty()).map(PathBuf::from);
    env(CACHE_ENV)
        .or_else(|| env("XDG_CACHE_HOME").map(|d| d.join("zetarules")))
        .or_else(|| env("HOME").map(|d| d.join(".cache").join("zetarules")))
        .unwrap_or_else(|| PathBuf::from(".zetarules-cache"))
}

/// First `n` critical-line zeros of `f`, read from the cache when a valid
/// file exists and computed and stored otherwise. A corrupt cache entry is
/// regenerated.
pub fn cached_first_n_zeros(f: FunctionId, n: usize) -> Result<ZeroDataset> {
    let path = cache_dir().join(format!("{}_first_{n}.csv", f.tag()));
    if path.exists() {
        if let Ok(ds) = load_dataset(&path) {
            if ds.function == f && ds.critical_line().count() == n {
                return Ok(ds);
            }
        }
    }
    let ds = first_n_zeros(f, n)?;
    save_dataset(&ds, &path)?;
    Ok(ds)
}

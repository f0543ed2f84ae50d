//! Resumable level caches: one JSON file per group fingerprint and level
//! kind, named `{fingerprint prefix}-{kind}.json`.
//!
//! A cache file stores the canonical representatives of every closed level
//! in their text form, plus the exhaustion cutoff when the search finished.
//! Loading validates the format version, the group fingerprint, and the
//! level shape; any mismatch is fatal rather than silently recomputed, so a
//! stale or foreign cache directory cannot corrupt a run.

use std::collections::BTreeSet;
use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use geodav::{LevelKind, LevelSets, Sequence};

use crate::error::CliError;

pub const FORMAT_VERSION: u32 = 1;

#[derive(Serialize, Deserialize)]
struct CacheFile {
    format_version: u32,
    engine: String,
    fingerprint: String,
    kind: String,
    last_closed_level: Option<usize>,
    exhausted_at: Option<usize>,
    levels: Vec<CacheLevel>,
}

#[derive(Serialize, Deserialize)]
struct CacheLevel {
    len: usize,
    reps: Vec<String>,
}

pub fn path_for(dir: &Path, fingerprint: &str, kind: LevelKind) -> PathBuf {
    let prefix = &fingerprint[..16.min(fingerprint.len())];
    dir.join(format!("{prefix}-{}.json", kind.as_str()))
}

fn io_err(path: &Path, source: std::io::Error) -> CliError {
    CliError::Io { path: path.display().to_string(), source }
}

/// Writes the levels to the cache directory, atomically per file.
pub fn save(dir: &Path, fingerprint: &str, sets: &LevelSets) -> Result<(), CliError> {
    fs::create_dir_all(dir).map_err(|e| io_err(dir, e))?;
    let path = path_for(dir, fingerprint, sets.kind());
    let file = CacheFile {
        format_version: FORMAT_VERSION,
        engine: format!("geodav {}", geodav::VERSION),
        fingerprint: fingerprint.to_string(),
        kind: sets.kind().as_str().to_string(),
        last_closed_level: sets.last_closed_level(),
        exhausted_at: sets.exhausted_at(),
        levels: sets
            .levels()
            .map(|(len, level)| CacheLevel {
                len,
                reps: level.reps().map(|s| s.to_string()).collect(),
            })
            .collect(),
    };
    let text = serde_json::to_string_pretty(&file).expect("cache model serializes");
    let tmp = path.with_extension("json.tmp");
    fs::write(&tmp, text).map_err(|e| io_err(&tmp, e))?;
    fs::rename(&tmp, &path).map_err(|e| io_err(&path, e))?;
    Ok(())
}

/// Loads the cached levels for this group and kind, if a cache file exists.
pub fn load(dir: &Path, fingerprint: &str, kind: LevelKind) -> Result<Option<LevelSets>, CliError> {
    let path = path_for(dir, fingerprint, kind);
    let text = match fs::read_to_string(&path) {
        Ok(text) => text,
        Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Ok(None),
        Err(e) => return Err(io_err(&path, e)),
    };
    let display = path.display().to_string();
    let corrupt = |detail: String| CliError::CacheCorrupt { path: display.clone(), detail };

    let file: CacheFile = serde_json::from_str(&text).map_err(|e| corrupt(e.to_string()))?;
    if file.format_version != FORMAT_VERSION {
        return Err(CliError::CacheVersion {
            path: display.clone(),
            found: file.format_version,
            expected: FORMAT_VERSION,
        });
    }
    if file.fingerprint != fingerprint {
        return Err(CliError::CacheFingerprint {
            path: display.clone(),
            found: file.fingerprint,
            expected: fingerprint.to_string(),
        });
    }
    if file.kind != kind.as_str() {
        return Err(corrupt(format!("kind `{}` does not match the file name", file.kind)));
    }

    let mut levels: Vec<(usize, BTreeSet<Sequence>)> = Vec::with_capacity(file.levels.len());
    for level in &file.levels {
        let mut reps = BTreeSet::new();
        for text in &level.reps {
            let seq: Sequence = text.parse().map_err(|e: geodav::Error| corrupt(e.to_string()))?;
            reps.insert(seq);
        }
        levels.push((level.len, reps));
    }
    levels.sort_by_key(|&(len, _)| len);

    let sets = LevelSets::from_parts(kind, levels, file.exhausted_at)
        .map_err(|e| corrupt(e.to_string()))?;
    if sets.last_closed_level() != file.last_closed_level {
        return Err(corrupt("stored last_closed_level does not match the levels".to_string()));
    }
    Ok(Some(sets))
}

//! Reading group files and checking a whole database.

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};

use rouquier::datum::GroupDatum;

use crate::check::{check_group, check_link};
use crate::convert::{decode, encode};
use crate::format::GroupFile;
use crate::StoreError;

/// Environment variable overriding [`default_dir`].
pub const DB_ENV: &str = "HECKE_DB";

/// `$HECKE_DB`, or the data directory shipped with this crate.
pub fn default_dir() -> PathBuf {
    match std::env::var_os(DB_ENV) {
        Some(d) if !d.is_empty() => PathBuf::from(d),
        _ => Path::new(env!("CARGO_MANIFEST_DIR")).join("data"),
    }
}

pub fn read_doc(path: &Path) -> Result<GroupFile, StoreError> {
    let text = fs::read_to_string(path).map_err(|source| StoreError::Io { path: path.into(), source })?;
    serde_json::from_str(&text).map_err(|source| StoreError::Parse { path: path.into(), source })
}

/// Reads, decodes and fully validates one group file.
pub fn load(path: &Path) -> Result<GroupDatum, StoreError> {
    let g = decode(&read_doc(path)?)?;
    let issues = check_group(&g);
    if !issues.is_empty() {
        return Err(StoreError::Invalid { group: g.name, issues });
    }
    Ok(g)
}

/// `dir/<name>.json`.
pub fn load_group(dir: &Path, name: &str) -> Result<GroupDatum, StoreError> {
    let path = dir.join(format!("{name}.json"));
    if !path.is_file() {
        return Err(StoreError::UnknownGroup { name: name.into(), dir: dir.into() });
    }
    load(&path)
}

pub fn serialize(g: &GroupDatum) -> String {
    let mut s = serde_json::to_string_pretty(&encode(g)).expect("documents always serialize");
    s.push('\n');
    s
}

/// One failed check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Finding {
    pub source: String,
    pub message: String,
}

/// Every group file found under `paths` (files, or directories of `*.json`).
pub fn collect_files(paths: &[PathBuf]) -> Result<Vec<PathBuf>, StoreError> {
    let mut out = Vec::new();
    for p in paths {
        if p.is_dir() {
            let entries = fs::read_dir(p).map_err(|source| StoreError::Io { path: p.clone(), source })?;
            let mut files: Vec<PathBuf> = entries
                .filter_map(|e| e.ok().map(|e| e.path()))
                .filter(|f| f.extension().is_some_and(|x| x == "json"))
                .collect();
            files.sort();
            out.extend(files);
        } else {
            out.push(p.clone());
        }
    }
    Ok(out)
}

/// Runs every validator over the given files; an empty result means success.
pub fn verify(files: &[PathBuf]) -> (usize, Vec<Finding>) {
    let mut findings = Vec::new();
    let mut groups: BTreeMap<String, GroupDatum> = BTreeMap::new();
    for f in files {
        let source = f.display().to_string();
        let g = match read_doc(f).and_then(|d| decode(&d)) {
            Ok(g) => g,
            Err(e) => {
                findings.push(Finding { source, message: e.to_string() });
                continue;
            }
        };
        for m in check_group(&g) {
            findings.push(Finding { source: g.name.clone(), message: m });
        }
        if groups.contains_key(&g.name) {
            findings.push(Finding { source, message: format!("second file for {}", g.name) });
            continue;
        }
        groups.insert(g.name.clone(), g);
    }
    for parent in groups.values() {
        for l in &parent.links {
            if let Some(child) = groups.get(&l.child) {
                for m in check_link(parent, child, l) {
                    findings.push(Finding { source: parent.name.clone(), message: m });
                }
            }
        }
    }
    (groups.len(), findings)
}

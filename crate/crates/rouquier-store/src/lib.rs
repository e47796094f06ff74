//! JSON storage, validation and the `rouquier` command line for the `rouquier`
//! crate.
//!
//! One file per group lives in `data/`; [`db::load`] decodes a file and runs
//! every single-group validator before anything is queried, and [`db::verify`]
//! adds the checks that need several groups (Clifford links).

use std::path::PathBuf;

pub mod check;
pub mod cli;
pub mod convert;
pub mod db;
pub mod format;

#[derive(Debug, thiserror::Error)]
pub enum StoreError {
    #[error("{}: {source}", path.display())]
    Io { path: PathBuf, source: std::io::Error },
    #[error("{}: {source}", path.display())]
    Parse { path: PathBuf, source: serde_json::Error },
    #[error("{group}: field {field}: {msg}")]
    Field { group: String, field: String, msg: String },
    #[error("{group} failed validation:\n  {}", issues.join("\n  "))]
    Invalid { group: String, issues: Vec<String> },
    #[error("no data for group {name} in {}", dir.display())]
    UnknownGroup { name: String, dir: PathBuf },
}

//! The commands behind the `rouquier` binary, as functions returning their output
//! and exit code so they can be tested without spawning processes.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use rouquier::datum::{GroupDatum, Hyperplane};
use rouquier::engine::{hyperplanes_containing, rouquier_from_schur, rouquier_from_tables, EngineError};
use rouquier::partition::Partition;
use rouquier::schur::{essential_hyperplanes, SchurError, NOT_DIVIDING};

use crate::db::{collect_files, load_group, verify};
use crate::StoreError;

pub const EXIT_OK: i32 = 0;
pub const EXIT_BAD_PRIME: i32 = 2;
pub const EXIT_MISSING: i32 = 3;
pub const EXIT_ARITY: i32 = 4;
pub const EXIT_INVALID: i32 = 5;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Outcome { stdout, stderr: String::new(), code: EXIT_OK }
    }

    fn fail(code: i32, msg: impl std::fmt::Display) -> Self {
        Outcome { stdout: String::new(), stderr: format!("{msg}\n"), code }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Display {
    Index,
    #[default]
    Name,
}

impl std::str::FromStr for Display {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "" | "name" => Ok(Display::Name),
            "index" => Ok(Display::Index),
            _ => Err(format!("unknown display mode {s:?} (index or name)")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum BlockPath {
    #[default]
    Tables,
    Schur,
}

impl std::str::FromStr for BlockPath {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "tables" => Ok(BlockPath::Tables),
            "schur" => Ok(BlockPath::Schur),
            _ => Err(format!("unknown path {s:?} (tables or schur)")),
        }
    }
}

fn load_failure(e: StoreError) -> Outcome {
    let code = match e {
        StoreError::UnknownGroup { .. } => EXIT_MISSING,
        _ => EXIT_INVALID,
    };
    Outcome::fail(code, e)
}

/// `[[1],[2,3,4],[5,6],[7]]`, 1-based.
pub fn render_index(p: &Partition) -> String {
    let parts: Vec<String> = p
        .parts()
        .iter()
        .map(|part| format!("[{}]", part.iter().map(|i| (i + 1).to_string()).collect::<Vec<_>>().join(",")))
        .collect();
    format!("[{}]", parts.join(","))
}

/// `[["phi{1,0}"],["phi{1,4}","phi{1,8}"]]`.
pub fn render_names(g: &GroupDatum, p: &Partition) -> String {
    let parts: Vec<String> = p
        .parts()
        .iter()
        .map(|part| {
            format!("[{}]", part.iter().map(|&i| format!("\"{}\"", g.characters[i])).collect::<Vec<_>>().join(","))
        })
        .collect();
    format!("[{}]", parts.join(","))
}

fn render(g: &GroupDatum, p: &Partition, display: Display) -> String {
    match display {
        Display::Index => render_index(p),
        Display::Name => render_names(g, p),
    }
}

fn render_cond(h: Option<&Hyperplane>) -> String {
    let v = h.map(|h| h.normal().iter().map(ToString::to_string).collect::<Vec<_>>().join(",")).unwrap_or_default();
    format!("cond:=[{v}]")
}

pub fn essential_hyperplanes_cmd(dir: &Path, group: &str, prime: u64) -> Outcome {
    let g = match load_group(dir, group) {
        Ok(g) => g,
        Err(e) => return load_failure(e),
    };
    match essential_hyperplanes(&g, prime) {
        Ok(hs) => Outcome::ok(hs.iter().map(|h| g.render_hyperplane(h) + "\n").collect()),
        Err(SchurError::NotDividing(_)) => Outcome::fail(EXIT_BAD_PRIME, format!("Error, {NOT_DIVIDING}")),
        Err(e @ SchurError::NotPrime(_)) => Outcome::fail(EXIT_BAD_PRIME, e),
        Err(e @ SchurError::Missing(_)) => Outcome::fail(EXIT_MISSING, e),
        Err(e) => Outcome::fail(EXIT_INVALID, e),
    }
}

pub fn all_blocks_cmd(dir: &Path, group: &str, display: Display) -> Outcome {
    let g = match load_group(dir, group) {
        Ok(g) => g,
        Err(e) => return load_failure(e),
    };
    if g.tables.is_empty() {
        return Outcome::fail(EXIT_MISSING, format!("no block tables stored for {group}"));
    }
    let mut out = String::new();
    let tables = g.baseline().into_iter().chain(g.hyperplane_tables());
    for t in tables {
        let head = match display {
            Display::Index => render_cond(t.hyperplane.as_ref()),
            Display::Name => t.hyperplane.as_ref().map_or("No essential hyperplane".into(), |h| g.render_hyperplane(h)),
        };
        let _ = writeln!(out, "{head}");
        let _ = writeln!(out, "{}", render(&g, &t.blocks, display));
    }
    Outcome::ok(out)
}

fn parse_exponents(s: &str) -> Result<Vec<i64>, String> {
    s.split(',').map(|x| x.trim().parse::<i64>().map_err(|_| format!("bad exponent {x:?}"))).collect()
}

pub fn rouquier_blocks_cmd(dir: &Path, group: &str, exponents: &str, path: BlockPath, display: Display) -> Outcome {
    let g = match load_group(dir, group) {
        Ok(g) => g,
        Err(e) => return load_failure(e),
    };
    let n = match parse_exponents(exponents) {
        Ok(n) => n,
        Err(e) => return Outcome::fail(EXIT_ARITY, e),
    };
    if n.len() != g.slot_count() {
        return Outcome::fail(EXIT_ARITY, format!("{group} takes {} exponents, got {}", g.slot_count(), n.len()));
    }
    let (hit, blocks, note) = match path {
        BlockPath::Tables => {
            let hit: Vec<Hyperplane> =
                hyperplanes_containing(&g.tables, &n).iter().filter_map(|t| t.hyperplane.clone()).collect();
            (hit, rouquier_from_tables(&g, &n), "")
        }
        BlockPath::Schur => {
            if !g.has_full_schur() {
                return Outcome::fail(EXIT_MISSING, format!("{group} has no complete Schur payload"));
            }
            let hit = match essential_hyperplanes(&g, 0) {
                Ok(hs) => hs.into_iter().filter(|h| h.contains(&n)).collect(),
                Err(e) => return Outcome::fail(EXIT_INVALID, e),
            };
            match rouquier_from_schur(&g, &n) {
                Ok(c) => (hit, Ok(c.blocks), if c.confirmed { " (confirmed)" } else { " (candidate)" }),
                Err(e) => (hit, Err(e), ""),
            }
        }
    };
    let blocks = match blocks {
        Ok(b) => b,
        Err(EngineError::Missing(m)) => return Outcome::fail(EXIT_MISSING, format!("missing payload: {m}")),
        Err(e) => return Outcome::fail(EXIT_INVALID, e),
    };
    let names: Vec<String> = hit.iter().map(|h| g.render_hyperplane(h)).collect();
    let head = if names.is_empty() { "none".to_string() } else { names.join(" ") };
    Outcome::ok(format!("hyperplanes: {head}{note}\n{}\n", render(&g, &blocks, display)))
}

pub fn verify_db_cmd(paths: &[PathBuf]) -> Outcome {
    let files = match collect_files(paths) {
        Ok(f) => f,
        Err(e) => return Outcome::fail(EXIT_INVALID, e),
    };
    if files.is_empty() {
        return Outcome::fail(EXIT_INVALID, "no group files found");
    }
    let (groups, findings) = verify(&files);
    let mut out = String::new();
    for f in &findings {
        let _ = writeln!(out, "FAIL\t{}\t{}", f.source, f.message);
    }
    let _ = writeln!(out, "checked {groups} groups from {} files: {} problems", files.len(), findings.len());
    Outcome { stdout: out, stderr: String::new(), code: if findings.is_empty() { EXIT_OK } else { EXIT_INVALID } }
}

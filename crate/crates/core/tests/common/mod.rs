//! Shared helpers for the dataset-backed checks.

#![allow(dead_code)]

use std::path::PathBuf;

use folty::{GraphStats, PreparedGraph, TemporalGraph, Timestamp};

pub const FOUR_WEEKS: Timestamp = 4 * 604_800;

pub const COLLEGE_MSG: &str = "CollegeMsg.txt";
pub const EMAIL_EU_CORE: &str = "email-Eu-core-temporal.txt";
pub const WIKI_TALK: &str = "wiki-talk-temporal.txt";

/// Directory holding the SNAP edge lists: `$FOLTY_DATA_DIR`, else `data/`
/// at the workspace root.
pub fn data_dir() -> PathBuf {
    std::env::var_os("FOLTY_DATA_DIR")
        .map(PathBuf::from)
        .unwrap_or_else(|| PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../data"))
}

pub fn dataset_path(name: &str) -> Option<PathBuf> {
    let p = data_dir().join(name);
    p.is_file().then_some(p)
}

pub fn load(name: &str) -> Option<PreparedGraph> {
    let path = dataset_path(name)?;
    let file = std::fs::File::open(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
    let g = TemporalGraph::parse(std::io::BufReader::new(file)).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
    Some(PreparedGraph::new(g))
}

pub fn load_or_panic(name: &str) -> PreparedGraph {
    load(name).unwrap_or_else(|| {
        panic!(
            "dataset {name} not found under {}; run scripts/fetch_datasets.sh or set FOLTY_DATA_DIR",
            data_dir().display()
        )
    })
}

pub fn describe(stats: &GraphStats) -> String {
    format!("n={} m={} alpha={} sigma_max={}", stats.n, stats.m, stats.alpha, stats.sigma_max)
}

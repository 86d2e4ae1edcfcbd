//! Reference diagrams with their expected twist data, stored one JSON file
//! per entry.

use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::diagram::{parse_pd, DiagramError, PlanarDiagram};
use crate::twist::{gate_with_regions, twist_regions};

#[derive(Debug, Error)]
pub enum CorpusError {
    #[error("cannot read corpus at {path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("{path}: {source}")]
    Json {
        path: PathBuf,
        source: serde_json::Error,
    },
    #[error("corpus directory {0} holds no .json entries")]
    Empty(PathBuf),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Expected {
    pub twist_count: usize,
    /// Crossing counts of the twist regions, ascending.
    pub region_crossings: Vec<usize>,
    pub prime: bool,
    /// `None` when the check does not run (non-prime diagrams).
    pub twist_reduced: Option<bool>,
    pub gate_threshold: usize,
    pub gate_passed: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CorpusEntry {
    pub name: String,
    pub pd: String,
    pub expected: Expected,
    /// Informational only; nothing here computes true volumes.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub published_volume: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl CorpusEntry {
    pub fn diagram(&self) -> Result<PlanarDiagram, DiagramError> {
        Ok(parse_pd(&self.pd)?.with_name(self.name.clone()))
    }

    /// Observed values for this entry's diagram.
    pub fn observe(&self) -> Result<Expected, DiagramError> {
        let d = self.diagram()?;
        let regions = twist_regions(&d);
        let gate = gate_with_regions(&d, &regions, self.expected.gate_threshold);
        let mut counts: Vec<usize> = regions.iter().map(|r| r.crossing_count).collect();
        counts.sort_unstable();
        Ok(Expected {
            twist_count: regions.len(),
            region_crossings: counts,
            prime: gate.is_prime,
            twist_reduced: gate.is_twist_reduced,
            gate_threshold: gate.threshold,
            gate_passed: gate.passed(),
        })
    }

    /// Human-readable mismatches between expected and observed values.
    pub fn check(&self) -> Vec<String> {
        let got = match self.observe() {
            Ok(g) => g,
            Err(e) => return vec![format!("diagram does not load: {e}")],
        };
        let want = &self.expected;
        let mut out = Vec::new();
        let mut cmp = |field: &str, w: String, g: String| {
            if w != g {
                out.push(format!("{field}: expected {w}, got {g}"));
            }
        };
        cmp(
            "twist_count",
            want.twist_count.to_string(),
            got.twist_count.to_string(),
        );
        cmp(
            "region_crossings",
            format!("{:?}", want.region_crossings),
            format!("{:?}", got.region_crossings),
        );
        cmp("prime", want.prime.to_string(), got.prime.to_string());
        cmp(
            "twist_reduced",
            format!("{:?}", want.twist_reduced),
            format!("{:?}", got.twist_reduced),
        );
        cmp(
            "gate_passed",
            want.gate_passed.to_string(),
            got.gate_passed.to_string(),
        );
        out
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct EntryOutcome {
    pub file: PathBuf,
    pub name: String,
    pub mismatches: Vec<String>,
}

impl EntryOutcome {
    pub fn passed(&self) -> bool {
        self.mismatches.is_empty()
    }
}

/// Corpus shipped with the source tree.
pub fn bundled_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../corpus")
}

/// Entries of a corpus directory, ordered by file name.
pub fn load_dir(dir: &Path) -> Result<Vec<(PathBuf, CorpusEntry)>, CorpusError> {
    let io = |source| CorpusError::Io {
        path: dir.to_path_buf(),
        source,
    };
    let mut files: Vec<PathBuf> = fs::read_dir(dir)
        .map_err(io)?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|x| x == "json"))
        .collect();
    if files.is_empty() {
        return Err(CorpusError::Empty(dir.to_path_buf()));
    }
    files.sort();
    files
        .into_iter()
        .map(|path| {
            let text = fs::read_to_string(&path).map_err(|source| CorpusError::Io {
                path: path.clone(),
                source,
            })?;
            let entry = serde_json::from_str(&text).map_err(|source| CorpusError::Json {
                path: path.clone(),
                source,
            })?;
            Ok((path, entry))
        })
        .collect()
}

/// Checks every entry, one thread per entry; results keep file order.
pub fn run_dir(dir: &Path) -> Result<Vec<EntryOutcome>, CorpusError> {
    let entries = load_dir(dir)?;
    Ok(std::thread::scope(|s| {
        let handles: Vec<_> = entries
            .iter()
            .map(|(path, e)| {
                s.spawn(move || EntryOutcome {
                    file: path.clone(),
                    name: e.name.clone(),
                    mismatches: e.check(),
                })
            })
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("corpus worker panicked"))
            .collect()
    }))
}

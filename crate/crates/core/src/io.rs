//! JSON file formats.
//!
//! Metric file: `{"points": ["a", ...], "dist": [["0", "1", ...], ...]}` with
//! every distance a rational string `"p"` or `"p/q"`. The matrix must be
//! square, symmetric, and satisfy the metric axioms.
//!
//! Graph file: `{"n": 6, "edges": [[0, 1], ...]}`.
//! Hypergraph file: `{"n": 7, "triples": [[0, 1, 2], ...]}`.
//!
//! Verdict file: `{"verdict": "metric" | "nonmetric", "witness": <metric>,
//! "stats": {...}}`, with `witness` present only for metric verdicts.
//!
//! Unknown fields are rejected everywhere.

use std::fs;
use std::path::Path;

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hypergraph::Hypergraph3;
use crate::metric::{validate_metric, MetricSpace};
use crate::rational::Rational;
use crate::recognizer::{canonical_form, Enumeration, SearchStats, Verdict};

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub(crate) struct MetricFile {
    points: Vec<String>,
    dist: Vec<Vec<Rational>>,
}

impl TryFrom<MetricFile> for MetricSpace {
    type Error = Error;

    fn try_from(f: MetricFile) -> Result<Self> {
        validate_metric(f.points, f.dist)
    }
}

impl From<MetricSpace> for MetricFile {
    fn from(m: MetricSpace) -> Self {
        MetricFile { points: m.points().to_vec(), dist: m.matrix().to_vec() }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
enum VerdictKind {
    Metric,
    Nonmetric,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub(crate) struct VerdictFile {
    verdict: VerdictKind,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    witness: Option<MetricSpace>,
    stats: SearchStats,
}

impl TryFrom<VerdictFile> for Verdict {
    type Error = Error;

    fn try_from(f: VerdictFile) -> Result<Self> {
        match (f.verdict, f.witness) {
            (VerdictKind::Metric, Some(witness)) => Ok(Verdict::Metric { witness, stats: f.stats }),
            (VerdictKind::Nonmetric, None) => Ok(Verdict::NonMetric { stats: f.stats }),
            (VerdictKind::Metric, None) => Err(Error::Parse("metric verdict without a witness".into())),
            (VerdictKind::Nonmetric, Some(_)) => Err(Error::Parse("nonmetric verdict with a witness".into())),
        }
    }
}

impl From<Verdict> for VerdictFile {
    fn from(v: Verdict) -> Self {
        match v {
            Verdict::Metric { witness, stats } => VerdictFile { verdict: VerdictKind::Metric, witness: Some(witness), stats },
            Verdict::NonMetric { stats } => VerdictFile { verdict: VerdictKind::Nonmetric, witness: None, stats },
        }
    }
}

/// Parses JSON, reporting the line and column of the first problem.
pub fn from_json<T: DeserializeOwned>(text: &str) -> Result<T> {
    serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
}

pub fn to_json<T: Serialize>(value: &T, pretty: bool) -> Result<String> {
    let s = if pretty { serde_json::to_string_pretty(value) } else { serde_json::to_string(value) };
    s.map_err(|e| Error::Parse(e.to_string()))
}

pub fn read_json<T: DeserializeOwned>(path: &Path) -> Result<T> {
    let text = fs::read_to_string(path).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
    from_json(&text).map_err(|e| match e {
        Error::Parse(msg) => Error::Parse(format!("{}: {msg}", path.display())),
        other => other,
    })
}

pub fn write_json<T: Serialize>(path: &Path, value: &T, pretty: bool) -> Result<()> {
    let mut text = to_json(value, pretty)?;
    text.push('\n');
    fs::write(path, text).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))
}

/// One entry of a catalog index.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CatalogEntry {
    pub file: String,
    pub triples: usize,
    /// Hex of the canonical form.
    pub canonical: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CatalogIndex {
    pub n: usize,
    pub classes: usize,
    pub examined: usize,
    pub truncated: bool,
    pub entries: Vec<CatalogEntry>,
}

pub const CATALOG_INDEX: &str = "index.json";

fn hex(bytes: &[u8]) -> String {
    bytes.iter().map(|b| format!("{b:02x}")).collect()
}

/// Writes one hypergraph file per result plus `index.json` into `dir`,
/// creating it if needed.
pub fn write_catalog(dir: &Path, e: &Enumeration) -> Result<CatalogIndex> {
    fs::create_dir_all(dir).map_err(|err| Error::Parse(format!("{}: {err}", dir.display())))?;
    let mut entries = Vec::with_capacity(e.found.len());
    for (i, h) in e.found.iter().enumerate() {
        let file = format!("n{}-{:04}.json", e.n, i);
        write_json(&dir.join(&file), h, false)?;
        entries.push(CatalogEntry { file, triples: h.len(), canonical: hex(&canonical_form(h)?) });
    }
    let index = CatalogIndex { n: e.n, classes: e.classes, examined: e.examined, truncated: e.truncated, entries };
    write_json(&dir.join(CATALOG_INDEX), &index, true)?;
    Ok(index)
}

/// Reads a catalog written by [`write_catalog`] back into its hypergraphs.
pub fn read_catalog(dir: &Path) -> Result<(CatalogIndex, Vec<Hypergraph3>)> {
    let index: CatalogIndex = read_json(&dir.join(CATALOG_INDEX))?;
    let hs = index.entries.iter().map(|en| read_json(&dir.join(&en.file))).collect::<Result<Vec<Hypergraph3>>>()?;
    Ok((index, hs))
}

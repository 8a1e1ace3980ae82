//! Minimal non-metric hypergraphs on few vertices, up to isomorphism.

use std::collections::{BTreeSet, HashMap, HashSet};
use std::time::{Duration, Instant};

use serde::{Deserialize, Serialize};

use super::search::{decide_metric, DecideOptions};
use crate::error::{Error, Result};
use crate::hypergraph::{all_triples, for_each_permutation, sorted_triple, Hypergraph3, Triple};

/// `decide_metric(h)` is non-metric and every single-vertex deletion is
/// metric.
pub fn is_minimal_nonmetric(h: &Hypergraph3) -> Result<bool> {
    is_minimal_nonmetric_with(h, &DecideOptions::default())
}

pub fn is_minimal_nonmetric_with(h: &Hypergraph3, opts: &DecideOptions) -> Result<bool> {
    if h.n() < 3 {
        return Err(Error::OutOfRange(format!("minimality needs at least 3 vertices, got {}", h.n())));
    }
    if decide_metric(h, opts)?.is_metric() {
        return Ok(false);
    }
    for v in 0..h.n() {
        if !decide_metric(&h.delete_vertex(v), opts)?.is_metric() {
            return Ok(false);
        }
    }
    Ok(true)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Enumeration {
    pub n: usize,
    /// Isomorphism classes of hypergraphs on `n` vertices.
    pub classes: usize,
    /// Classes examined before the budget ran out (all of them unless truncated).
    pub examined: usize,
    /// Calls to the decider, including those on deletions.
    pub decided: usize,
    pub truncated: bool,
    /// Canonical representatives, ordered by triple count then encoding.
    pub found: Vec<Hypergraph3>,
}

pub const ENUMERATE_MIN_N: usize = 3;
pub const ENUMERATE_MAX_N: usize = 6;

/// Triples of `0..n` as bits of a `u32`, with every vertex permutation
/// precomputed as a map on bit positions.
struct MaskSpace {
    n: usize,
    triples: Vec<Triple>,
    perms: Vec<Vec<u8>>,
}

impl MaskSpace {
    fn new(n: usize) -> Self {
        let triples: Vec<Triple> = all_triples(n).collect();
        let index: HashMap<Triple, u8> = triples.iter().enumerate().map(|(i, &t)| (t, i as u8)).collect();
        let mut perms = Vec::new();
        for_each_permutation(n, |p| {
            perms.push(triples.iter().map(|&[a, b, c]| index[&sorted_triple(p[a], p[b], p[c])]).collect());
        });
        MaskSpace { n, triples, perms }
    }

    fn canon(&self, mask: u32) -> u32 {
        let mut best = u32::MAX;
        for map in &self.perms {
            let mut img = 0u32;
            let mut rest = mask;
            while rest != 0 {
                let b = rest.trailing_zeros();
                rest &= rest - 1;
                img |= 1 << map[b as usize];
            }
            best = best.min(img);
        }
        best
    }

    fn to_hypergraph(&self, mask: u32) -> Hypergraph3 {
        let ts = (0..self.triples.len()).filter(|&i| mask >> i & 1 == 1).map(|i| self.triples[i]);
        Hypergraph3::new(self.n, ts).expect("mask triples are valid")
    }

    fn to_mask(&self, h: &Hypergraph3) -> u32 {
        self.triples.iter().enumerate().filter(|&(_, t)| h.triples().contains(t)).fold(0, |m, (i, _)| m | 1 << i)
    }

    /// Canonical masks of all isomorphism classes, by triple count.
    fn classes(&self) -> Vec<u32> {
        let mut all: BTreeSet<(u32, u32)> = BTreeSet::new();
        let mut level: HashSet<u32> = [0].into();
        all.insert((0, 0));
        for _ in 0..self.triples.len() {
            let mut next = HashSet::new();
            for &m in &level {
                for t in 0..self.triples.len() {
                    if m >> t & 1 == 0 {
                        next.insert(self.canon(m | 1 << t));
                    }
                }
            }
            all.extend(next.iter().map(|&m| (m.count_ones(), m)));
            level = next;
        }
        all.into_iter().map(|(_, m)| m).collect()
    }
}

/// All minimal non-metric hypergraphs on `n` vertices up to isomorphism.
///
/// Metricity of deletions is looked up per isomorphism class and memoized, so
/// the decider runs on a class itself only when all of its deletions are
/// metric. Stops early with `truncated` set once `budget` is spent.
pub fn enumerate_minimal_nonmetric(n: usize, budget: Duration, opts: &DecideOptions) -> Result<Enumeration> {
    if !(ENUMERATE_MIN_N..=ENUMERATE_MAX_N).contains(&n) {
        return Err(Error::OutOfRange(format!(
            "enumeration supports {ENUMERATE_MIN_N} <= n <= {ENUMERATE_MAX_N}, got {n}"
        )));
    }
    let start = Instant::now();
    let space = MaskSpace::new(n);
    let smaller = MaskSpace::new(n - 1);
    let classes = space.classes();
    let mut metric_below: HashMap<u32, bool> = HashMap::new();
    let mut out = Enumeration { n, classes: classes.len(), examined: 0, decided: 0, truncated: false, found: Vec::new() };

    'classes: for &mask in &classes {
        if start.elapsed() > budget {
            out.truncated = true;
            break;
        }
        let h = space.to_hypergraph(mask);
        for v in 0..n {
            let key = smaller.canon(smaller.to_mask(&h.delete_vertex(v)));
            let metric = match metric_below.get(&key) {
                Some(&m) => m,
                None => {
                    out.decided += 1;
                    let m = decide_metric(&smaller.to_hypergraph(key), opts)?.is_metric();
                    metric_below.insert(key, m);
                    m
                }
            };
            if !metric {
                out.examined += 1;
                continue 'classes;
            }
        }
        out.decided += 1;
        if !decide_metric(&h, opts)?.is_metric() {
            out.found.push(h);
        }
        out.examined += 1;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn class_counts() {
        assert_eq!(MaskSpace::new(3).classes().len(), 2);
        assert_eq!(MaskSpace::new(4).classes().len(), 5);
        assert_eq!(MaskSpace::new(5).classes().len(), 34);
    }

    #[test]
    fn nothing_on_three_vertices() {
        let e = enumerate_minimal_nonmetric(3, Duration::from_secs(60), &DecideOptions::default()).unwrap();
        assert!(e.found.is_empty());
        assert_eq!(e.classes, 2);
        assert!(!e.truncated);
    }

    #[test]
    fn range_is_checked() {
        for n in [2, 7, 9] {
            assert!(enumerate_minimal_nonmetric(n, Duration::from_secs(1), &DecideOptions::default()).is_err());
        }
    }
}

//! Graphs, 3-uniform hypergraphs, and equivalences on vertex pairs.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type Pair = [usize; 2];
pub type Triple = [usize; 3];

pub(crate) fn sorted_pair(a: usize, b: usize) -> Pair {
    if a < b {
        [a, b]
    } else {
        [b, a]
    }
}

pub(crate) fn sorted_triple(a: usize, b: usize, c: usize) -> Triple {
    let mut t = [a, b, c];
    t.sort_unstable();
    t
}

/// All 2-subsets of `0..n` in lexicographic order.
pub fn all_pairs(n: usize) -> impl Iterator<Item = Pair> {
    (0..n).flat_map(move |a| (a + 1..n).map(move |b| [a, b]))
}

/// All 3-subsets of `0..n` in lexicographic order.
pub fn all_triples(n: usize) -> impl Iterator<Item = Triple> {
    (0..n).flat_map(move |a| (a + 1..n).flat_map(move |b| (b + 1..n).map(move |c| [a, b, c])))
}

/// Simple undirected graph on `0..n`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "GraphFile", into = "GraphFile")]
pub struct Graph {
    n: usize,
    edges: BTreeSet<Pair>,
}

impl Graph {
    pub fn new(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let mut set = BTreeSet::new();
        for (a, b) in edges {
            if a >= n || b >= n {
                return Err(Error::InvalidGraph(format!("edge ({a},{b}) out of range for n={n}")));
            }
            if a == b {
                return Err(Error::InvalidGraph(format!("loop at vertex {a}")));
            }
            if !set.insert(sorted_pair(a, b)) {
                return Err(Error::InvalidGraph(format!("duplicate edge ({a},{b})")));
            }
        }
        Ok(Graph { n, edges: set })
    }

    pub fn empty(n: usize) -> Self {
        Graph { n, edges: BTreeSet::new() }
    }

    pub fn complete(n: usize) -> Self {
        Graph { n, edges: all_pairs(n).collect() }
    }

    /// The cycle 0-1-...-(n-1)-0. Requires `n >= 3`.
    pub fn cycle(n: usize) -> Result<Self> {
        if n < 3 {
            return Err(Error::OutOfRange(format!("cycle needs n >= 3, got {n}")));
        }
        Graph::new(n, (0..n).map(|i| (i, (i + 1) % n)))
    }

    /// The path 0-1-...-(n-1).
    pub fn path(n: usize) -> Self {
        Graph { n, edges: (1..n).map(|i| [i - 1, i]).collect() }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &BTreeSet<Pair> {
        &self.edges
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        a != b && self.edges.contains(&sorted_pair(a, b))
    }

    pub fn complement(&self) -> Graph {
        Graph { n: self.n, edges: all_pairs(self.n).filter(|p| !self.edges.contains(p)).collect() }
    }

    /// Subgraph induced on `vertices`, relabeled `0..k` in the given order.
    pub fn induced(&self, vertices: &[usize]) -> Graph {
        let mut edges = BTreeSet::new();
        for (i, &a) in vertices.iter().enumerate() {
            for (j, &b) in vertices.iter().enumerate().skip(i + 1) {
                if self.has_edge(a, b) {
                    edges.insert([i, j]);
                }
            }
        }
        Graph { n: vertices.len(), edges }
    }

    pub fn has_triangle(&self) -> bool {
        all_triples(self.n).any(|[a, b, c]| self.has_edge(a, b) && self.has_edge(b, c) && self.has_edge(a, c))
    }

    /// Brute-force isomorphism test; intended for small graphs.
    pub fn is_isomorphic(&self, other: &Graph) -> bool {
        if self.n != other.n || self.edges.len() != other.edges.len() {
            return false;
        }
        let mut found = false;
        for_each_permutation(self.n, |perm| {
            if !found && self.edges.iter().all(|&[a, b]| other.has_edge(perm[a], perm[b])) {
                found = true;
            }
        });
        found
    }
}

/// Calls `f` on every permutation of `0..n` (Heap's algorithm).
pub(crate) fn for_each_permutation(n: usize, mut f: impl FnMut(&[usize])) {
    let mut perm: Vec<usize> = (0..n).collect();
    let mut c = vec![0usize; n];
    f(&perm);
    let mut i = 0;
    while i < n {
        if c[i] < i {
            if i % 2 == 0 {
                perm.swap(0, i);
            } else {
                perm.swap(c[i], i);
            }
            f(&perm);
            c[i] += 1;
            i = 0;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
}

/// A 3-uniform hypergraph on `0..n`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "HypergraphFile", into = "HypergraphFile")]
pub struct Hypergraph3 {
    n: usize,
    triples: BTreeSet<Triple>,
}

impl Hypergraph3 {
    pub fn new(n: usize, triples: impl IntoIterator<Item = Triple>) -> Result<Self> {
        let mut set = BTreeSet::new();
        for t in triples {
            if t.iter().any(|&v| v >= n) {
                return Err(Error::InvalidHypergraph(format!("triple {t:?} out of range for n={n}")));
            }
            let s = sorted_triple(t[0], t[1], t[2]);
            if s[0] == s[1] || s[1] == s[2] {
                return Err(Error::InvalidHypergraph(format!("triple {t:?} has a repeated vertex")));
            }
            if !set.insert(s) {
                return Err(Error::InvalidHypergraph(format!("duplicate triple {t:?}")));
            }
        }
        Ok(Hypergraph3 { n, triples: set })
    }

    pub fn empty(n: usize) -> Self {
        Hypergraph3 { n, triples: BTreeSet::new() }
    }

    pub fn complete(n: usize) -> Self {
        Hypergraph3 { n, triples: all_triples(n).collect() }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn triples(&self) -> &BTreeSet<Triple> {
        &self.triples
    }

    pub fn len(&self) -> usize {
        self.triples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.triples.is_empty()
    }

    pub fn contains(&self, a: usize, b: usize, c: usize) -> bool {
        self.triples.contains(&sorted_triple(a, b, c))
    }

    /// Induced subhypergraph on `vertices`, relabeled `0..k` in the given order.
    pub fn induced(&self, vertices: &[usize]) -> Hypergraph3 {
        let k = vertices.len();
        let triples = all_triples(k)
            .filter(|&[a, b, c]| self.contains(vertices[a], vertices[b], vertices[c]))
            .collect();
        Hypergraph3 { n: k, triples }
    }

    /// Deletes vertex `v`; remaining vertices keep their relative order.
    pub fn delete_vertex(&self, v: usize) -> Hypergraph3 {
        let keep: Vec<usize> = (0..self.n).filter(|&u| u != v).collect();
        self.induced(&keep)
    }

    /// Applies a relabeling: vertex `v` becomes `perm[v]`.
    pub fn relabel(&self, perm: &[usize]) -> Hypergraph3 {
        Hypergraph3 {
            n: self.n,
            triples: self.triples.iter().map(|&[a, b, c]| sorted_triple(perm[a], perm[b], perm[c])).collect(),
        }
    }
}

/// Wire form of [`Graph`]: `{"n": 6, "edges": [[0, 1], ...]}`.
#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct GraphFile {
    n: usize,
    edges: Vec<[usize; 2]>,
}

impl TryFrom<GraphFile> for Graph {
    type Error = Error;
    fn try_from(f: GraphFile) -> Result<Self> {
        Graph::new(f.n, f.edges.into_iter().map(|[a, b]| (a, b)))
    }
}

impl From<Graph> for GraphFile {
    fn from(g: Graph) -> Self {
        GraphFile { n: g.n, edges: g.edges.into_iter().collect() }
    }
}

/// Wire form of [`Hypergraph3`]: `{"n": 7, "triples": [[0, 1, 2], ...]}`.
#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct HypergraphFile {
    n: usize,
    triples: Vec<[usize; 3]>,
}

impl TryFrom<HypergraphFile> for Hypergraph3 {
    type Error = Error;
    fn try_from(f: HypergraphFile) -> Result<Self> {
        Hypergraph3::new(f.n, f.triples)
    }
}

impl From<Hypergraph3> for HypergraphFile {
    fn from(h: Hypergraph3) -> Self {
        HypergraphFile { n: h.n, triples: h.triples.into_iter().collect() }
    }
}

/// The hypergraph based on a graph: every 3-subset of the graph's vertices,
/// plus `{apex, u, v}` for each edge, where the apex is the new vertex `n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BasedHypergraph {
    pub graph: Graph,
}

impl BasedHypergraph {
    pub fn new(graph: Graph) -> Self {
        BasedHypergraph { graph }
    }

    pub fn apex(&self) -> usize {
        self.graph.n()
    }

    pub fn expand(&self) -> Hypergraph3 {
        based_hypergraph(&self.graph)
    }
}

pub fn based_hypergraph(g: &Graph) -> Hypergraph3 {
    let n = g.n();
    let mut triples: BTreeSet<Triple> = all_triples(n).collect();
    triples.extend(g.edges().iter().map(|&[a, b]| [a, b, n]));
    Hypergraph3 { n: n + 1, triples }
}

pub fn complement(g: &Graph) -> Graph {
    g.complement()
}

/// A partition of the 2-subsets of `0..n`.
///
/// Blocks are kept sorted internally and ordered by their smallest pair, so
/// structural equality is equality of partitions.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PairEquivalence {
    n: usize,
    classes: Vec<Vec<Pair>>,
}

impl PairEquivalence {
    pub fn new(n: usize, classes: Vec<Vec<Pair>>) -> Result<Self> {
        let mut seen = BTreeSet::new();
        let mut blocks = Vec::with_capacity(classes.len());
        for block in classes {
            if block.is_empty() {
                return Err(Error::InvalidEquivalence("empty block".into()));
            }
            let mut b = Vec::with_capacity(block.len());
            for [x, y] in block {
                if x == y || x >= n || y >= n {
                    return Err(Error::InvalidEquivalence(format!("bad pair ({x},{y}) for n={n}")));
                }
                let p = sorted_pair(x, y);
                if !seen.insert(p) {
                    return Err(Error::InvalidEquivalence(format!("pair {p:?} appears twice")));
                }
                b.push(p);
            }
            b.sort_unstable();
            blocks.push(b);
        }
        let total = n * n.saturating_sub(1) / 2;
        if seen.len() != total {
            return Err(Error::InvalidEquivalence(format!("blocks cover {} of {} pairs", seen.len(), total)));
        }
        blocks.sort();
        Ok(PairEquivalence { n, classes: blocks })
    }

    /// Groups the pairs of `0..n` by a key.
    pub fn from_key<K: Ord>(n: usize, mut key: impl FnMut(Pair) -> K) -> Self {
        let mut groups: BTreeMap<K, Vec<Pair>> = BTreeMap::new();
        for p in all_pairs(n) {
            groups.entry(key(p)).or_default().push(p);
        }
        let mut classes: Vec<Vec<Pair>> = groups.into_values().collect();
        classes.sort();
        PairEquivalence { n, classes }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn classes(&self) -> &[Vec<Pair>] {
        &self.classes
    }

    pub fn class_of(&self, a: usize, b: usize) -> Option<usize> {
        let p = sorted_pair(a, b);
        self.classes.iter().position(|c| c.binary_search(&p).is_ok())
    }

    pub fn equivalent(&self, p: Pair, q: Pair) -> bool {
        match (self.class_of(p[0], p[1]), self.class_of(q[0], q[1])) {
            (Some(x), Some(y)) => x == y,
            _ => false,
        }
    }
}

/// The two-class equivalence of a graph: edges with edges, non-edges with
/// non-edges.
pub fn graph_equivalence(g: &Graph) -> PairEquivalence {
    PairEquivalence::from_key(g.n(), |[a, b]| !g.has_edge(a, b))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn based_hypergraph_counts() {
        let c4 = based_hypergraph(&Graph::cycle(4).unwrap());
        assert_eq!((c4.n(), c4.len()), (5, 8));
        let c6 = based_hypergraph(&Graph::cycle(6).unwrap());
        assert_eq!((c6.n(), c6.len()), (7, 26));
        let e3 = based_hypergraph(&Graph::empty(3));
        assert_eq!(e3.triples().iter().copied().collect::<Vec<_>>(), vec![[0, 1, 2]]);
        assert_eq!(e3.n(), 4);
    }

    #[test]
    fn graph_equivalence_blocks() {
        let c4 = graph_equivalence(&Graph::cycle(4).unwrap());
        let mut sizes: Vec<usize> = c4.classes().iter().map(Vec::len).collect();
        sizes.sort();
        assert_eq!(sizes, vec![2, 4]);
        assert!(c4.equivalent([0, 2], [1, 3]));
        assert_eq!(graph_equivalence(&Graph::complete(4)).classes().len(), 1);
        let c6 = graph_equivalence(&Graph::cycle(6).unwrap());
        let mut sizes: Vec<usize> = c6.classes().iter().map(Vec::len).collect();
        sizes.sort();
        assert_eq!(sizes, vec![6, 9]);
    }

    #[test]
    fn complements() {
        let c5 = Graph::cycle(5).unwrap();
        assert!(c5.complement().is_isomorphic(&c5));
        let c6c = Graph::cycle(6).unwrap().complement();
        assert!(c6c.has_edge(0, 2) && c6c.has_edge(2, 4) && c6c.has_edge(0, 4));
        assert_eq!(Graph::path(5).complement().edges().len(), 10 - 4);
        assert!(!Graph::cycle(6).unwrap().is_isomorphic(&c6c));
    }

    #[test]
    fn rejects_malformed_inputs() {
        assert!(Graph::new(3, [(0, 3)]).is_err());
        assert!(Graph::new(3, [(1, 1)]).is_err());
        assert!(Graph::new(3, [(0, 1), (1, 0)]).is_err());
        assert!(Hypergraph3::new(3, [[0, 0, 1]]).is_err());
        assert!(Hypergraph3::new(3, [[0, 1, 2], [2, 1, 0]]).is_err());
        assert!(PairEquivalence::new(3, vec![vec![[0, 1]], vec![[1, 2]]]).is_err());
        assert!(PairEquivalence::new(3, vec![vec![[0, 1], [1, 2]], vec![[0, 2]]]).is_ok());
    }

    #[test]
    fn permutations_are_exhaustive() {
        let mut seen = BTreeSet::new();
        for_each_permutation(4, |p| {
            seen.insert(p.to_vec());
        });
        assert_eq!(seen.len(), 24);
    }
}

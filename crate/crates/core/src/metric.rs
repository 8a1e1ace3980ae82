//! Finite metric spaces with exact distances, betweenness, and lines.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hypergraph::{all_pairs, all_triples, sorted_pair, Hypergraph3, PairEquivalence, Triple};
use crate::rational::Rational;

/// A way in which a candidate distance matrix fails to be a metric.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Violation {
    Asymmetric { p: String, q: String },
    NonzeroDiagonal { p: String },
    NonPositive { p: String, q: String },
    /// `d(p,q) + d(q,r) < d(p,r)`.
    Triangle { p: String, q: String, r: String },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::Asymmetric { p, q } => write!(f, "d({p},{q}) != d({q},{p})"),
            Violation::NonzeroDiagonal { p } => write!(f, "d({p},{p}) != 0"),
            Violation::NonPositive { p, q } => write!(f, "d({p},{q}) <= 0"),
            Violation::Triangle { p, q, r } => write!(f, "d({p},{q}) + d({q},{r}) < d({p},{r})"),
        }
    }
}

/// A finite metric space on labeled points.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "crate::io::MetricFile", into = "crate::io::MetricFile")]
pub struct MetricSpace {
    points: Vec<String>,
    dist: Vec<Vec<Rational>>,
    index: HashMap<String, usize>,
}

/// Checks the metric axioms and builds a [`MetricSpace`].
///
/// Structural problems (non-square matrix, duplicate labels) are reported
/// before axiom violations; all axiom violations are collected.
pub fn validate_metric(points: Vec<String>, dist: Vec<Vec<Rational>>) -> Result<MetricSpace> {
    let n = points.len();
    if dist.len() != n {
        return Err(Error::MalformedMatrix(format!("{} labels but {} rows", n, dist.len())));
    }
    if let Some((i, row)) = dist.iter().enumerate().find(|(_, r)| r.len() != n) {
        return Err(Error::MalformedMatrix(format!("row {i} has {} entries, expected {n}", row.len())));
    }
    let mut index = HashMap::with_capacity(n);
    for (i, p) in points.iter().enumerate() {
        if index.insert(p.clone(), i).is_some() {
            return Err(Error::DuplicateLabel(p.clone()));
        }
    }

    let mut violations = Vec::new();
    for i in 0..n {
        if !dist[i][i].is_zero() {
            violations.push(Violation::NonzeroDiagonal { p: points[i].clone() });
        }
    }
    for [i, j] in all_pairs(n) {
        if dist[i][j] != dist[j][i] {
            violations.push(Violation::Asymmetric { p: points[i].clone(), q: points[j].clone() });
        }
        if !dist[i][j].is_positive() || !dist[j][i].is_positive() {
            violations.push(Violation::NonPositive { p: points[i].clone(), q: points[j].clone() });
        }
    }
    if violations.is_empty() {
        for p in 0..n {
            for q in 0..n {
                for r in 0..n {
                    if p == q || q == r || p == r || p > r {
                        continue;
                    }
                    if &dist[p][q] + &dist[q][r] < dist[p][r] {
                        violations.push(Violation::Triangle {
                            p: points[p].clone(),
                            q: points[q].clone(),
                            r: points[r].clone(),
                        });
                    }
                }
            }
        }
    }
    if !violations.is_empty() {
        return Err(Error::NotMetric(violations));
    }
    Ok(MetricSpace { points, dist, index })
}

/// `[u v w]`: `v` lies between `u` and `w`. Stored with `u < w` in label order.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct BetweennessTriple {
    pub u: String,
    pub v: String,
    pub w: String,
}

impl BetweennessTriple {
    pub fn new(u: impl Into<String>, v: impl Into<String>, w: impl Into<String>) -> Self {
        let (u, v, w) = (u.into(), v.into(), w.into());
        if u <= w {
            BetweennessTriple { u, v, w }
        } else {
            BetweennessTriple { u: w, v, w: u }
        }
    }
}

impl fmt::Display for BetweennessTriple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{} {} {}]", self.u, self.v, self.w)
    }
}

/// Index-level betweenness fact: `middle` between `ends[0] < ends[1]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Between {
    pub ends: [usize; 2],
    pub middle: usize,
}

impl Between {
    pub fn new(a: usize, middle: usize, c: usize) -> Self {
        Between { ends: sorted_pair(a, c), middle }
    }

    pub fn support(&self) -> Triple {
        crate::hypergraph::sorted_triple(self.ends[0], self.middle, self.ends[1])
    }
}

impl MetricSpace {
    pub fn points(&self) -> &[String] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn matrix(&self) -> &[Vec<Rational>] {
        &self.dist
    }

    pub fn index_of(&self, label: &str) -> Result<usize> {
        self.index.get(label).copied().ok_or_else(|| Error::UnknownLabel(label.to_string()))
    }

    pub fn d(&self, i: usize, j: usize) -> &Rational {
        &self.dist[i][j]
    }

    pub fn dist(&self, p: &str, q: &str) -> Result<&Rational> {
        Ok(&self.dist[self.index_of(p)?][self.index_of(q)?])
    }

    /// `d(a,b) + d(b,c) == d(a,c)` for distinct indices.
    pub fn is_between(&self, a: usize, b: usize, c: usize) -> bool {
        a != b && b != c && a != c && &self.dist[a][b] + &self.dist[b][c] == self.dist[a][c]
    }

    /// The middle of `{a,b,c}`, if any. At most one exists in a metric space.
    pub fn middle_of(&self, [a, b, c]: Triple) -> Option<usize> {
        if self.is_between(b, a, c) {
            Some(a)
        } else if self.is_between(a, b, c) {
            Some(b)
        } else if self.is_between(a, c, b) {
            Some(c)
        } else {
            None
        }
    }

    /// All betweenness facts by index, one per collinear triple.
    pub fn betweenness(&self) -> BTreeSet<Between> {
        all_triples(self.len())
            .filter_map(|t| {
                self.middle_of(t).map(|m| {
                    let ends: Vec<usize> = t.iter().copied().filter(|&v| v != m).collect();
                    Between { ends: [ends[0], ends[1]], middle: m }
                })
            })
            .collect()
    }

    pub fn rename(&self, labels: Vec<String>) -> Result<MetricSpace> {
        if labels.len() != self.len() {
            return Err(Error::MalformedMatrix(format!("{} labels for {} points", labels.len(), self.len())));
        }
        validate_metric(labels, self.dist.clone())
    }

    fn indices(&self, labels: &[String]) -> Result<Vec<usize>> {
        labels.iter().map(|l| self.index_of(l)).collect()
    }

    fn line_indices(&self, p: usize, q: usize) -> BTreeSet<usize> {
        let mut line: BTreeSet<usize> = [p, q].into();
        line.extend((0..self.len()).filter(|&z| z != p && z != q && self.middle_of(sort3(p, q, z)).is_some()));
        line
    }
}

fn sort3(a: usize, b: usize, c: usize) -> Triple {
    crate::hypergraph::sorted_triple(a, b, c)
}

pub fn betweenness_triples(m: &MetricSpace) -> BTreeSet<BetweennessTriple> {
    m.betweenness()
        .into_iter()
        .map(|b| BetweennessTriple::new(m.points[b.ends[0]].clone(), m.points[b.middle].clone(), m.points[b.ends[1]].clone()))
        .collect()
}

/// The collinearity hypergraph: triples with some point between the other two.
/// Vertex `i` is the `i`-th point of the space.
pub fn hypergraph_of(m: &MetricSpace) -> Hypergraph3 {
    Hypergraph3::new(m.len(), m.betweenness().iter().map(Between::support))
        .expect("supports of distinct facts are distinct triples")
}

/// The line through `p` and `q`: both points plus everything collinear with them.
pub fn line(m: &MetricSpace, p: &str, q: &str) -> Result<BTreeSet<String>> {
    if p == q {
        return Err(Error::SamePoint(p.to_string()));
    }
    let (i, j) = (m.index_of(p)?, m.index_of(q)?);
    Ok(m.line_indices(i, j).into_iter().map(|k| m.points[k].clone()).collect())
}

/// Partition of the pairs of `subset` by equality of their lines in `m`.
/// Vertex `i` of the result is `subset[i]`.
pub fn line_partition(m: &MetricSpace, subset: &[String]) -> Result<PairEquivalence> {
    if subset.len() < 2 {
        return Err(Error::SubsetTooSmall { need: 2, got: subset.len() });
    }
    let idx = m.indices(subset)?;
    let mut lines: BTreeMap<[usize; 2], BTreeSet<usize>> = BTreeMap::new();
    for [a, b] in all_pairs(idx.len()) {
        lines.insert([a, b], m.line_indices(idx[a], idx[b]));
    }
    Ok(PairEquivalence::from_key(idx.len(), |p| lines[&p].clone()))
}

/// Restriction of `m` to `subset`, in the given order.
pub fn induced_subspace(m: &MetricSpace, subset: &[String]) -> Result<MetricSpace> {
    if subset.len() < 2 {
        return Err(Error::SubsetTooSmall { need: 2, got: subset.len() });
    }
    let idx = m.indices(subset)?;
    let dist = idx.iter().map(|&i| idx.iter().map(|&j| m.dist[i][j].clone()).collect()).collect();
    validate_metric(subset.to_vec(), dist)
}

/// Whether the line equivalence of `m` on `subset` is exactly `eq`.
pub fn check_meq(m: &MetricSpace, subset: &[String], eq: &PairEquivalence) -> Result<bool> {
    if eq.n() != subset.len() {
        return Err(Error::InvalidEquivalence(format!(
            "equivalence on {} vertices, subset has {} points",
            eq.n(),
            subset.len()
        )));
    }
    Ok(&line_partition(m, subset)? == eq)
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn space(labels: &[&str], rows: &[&[i64]]) -> Result<MetricSpace> {
        validate_metric(
            labels.iter().map(|s| s.to_string()).collect(),
            rows.iter().map(|r| r.iter().map(|&x| Rational::from_integer(x)).collect()).collect(),
        )
    }

    fn c4_chart() -> MetricSpace {
        space(
            &["a", "b", "c", "d", "x"],
            &[&[0, 1, 2, 1, 2], &[1, 0, 1, 2, 3], &[2, 1, 0, 1, 2], &[1, 2, 1, 0, 3], &[2, 3, 2, 3, 0]],
        )
        .unwrap()
    }

    fn labels(s: &[&str]) -> Vec<String> {
        s.iter().map(|x| x.to_string()).collect()
    }

    fn set(s: &[&str]) -> BTreeSet<String> {
        s.iter().map(|x| x.to_string()).collect()
    }

    #[test]
    fn validation() {
        assert!(space(&["p", "q"], &[&[0, 1], &[1, 0]]).is_ok());
        assert!(space(&["a", "b", "c", "d", "x"], &[&[0, 1, 2, 1, 2], &[1, 0, 1, 2, 3], &[2, 1, 0, 1, 2], &[1, 2, 1, 0, 3], &[2, 3, 2, 3, 0]]).is_ok());
        match space(&["a", "b", "c"], &[&[0, 1, 3], &[1, 0, 1], &[3, 1, 0]]) {
            Err(Error::NotMetric(v)) => assert_eq!(
                v,
                vec![Violation::Triangle { p: "a".into(), q: "b".into(), r: "c".into() }]
            ),
            other => panic!("{other:?}"),
        }
        assert!(matches!(space(&["a", "a"], &[&[0, 1], &[1, 0]]), Err(Error::DuplicateLabel(_))));
        assert!(matches!(space(&["a", "b"], &[&[0, 1]]), Err(Error::MalformedMatrix(_))));
        assert!(matches!(space(&["a", "b"], &[&[0, 1], &[2, 0]]), Err(Error::NotMetric(_))));
        assert!(matches!(space(&["a", "b"], &[&[1, 1], &[1, 0]]), Err(Error::NotMetric(_))));
        assert!(matches!(space(&["a", "b"], &[&[0, 0], &[0, 0]]), Err(Error::NotMetric(_))));
    }

    #[test]
    fn c4_chart_betweenness() {
        let m = c4_chart();
        let got = betweenness_triples(&m);
        let want: BTreeSet<_> = [
            ("a", "b", "c"),
            ("b", "c", "d"),
            ("c", "d", "a"),
            ("d", "a", "b"),
            ("x", "a", "b"),
            ("x", "a", "d"),
            ("x", "c", "b"),
            ("x", "c", "d"),
        ]
        .into_iter()
        .map(|(u, v, w)| BetweennessTriple::new(u, v, w))
        .collect();
        assert_eq!(got, want);
    }

    #[test]
    fn small_betweenness() {
        let line3 = space(&["0", "1", "2"], &[&[0, 1, 2], &[1, 0, 1], &[2, 1, 0]]).unwrap();
        assert_eq!(betweenness_triples(&line3), [BetweennessTriple::new("0", "1", "2")].into());
        let eq3 = space(&["a", "b", "c"], &[&[0, 1, 1], &[1, 0, 1], &[1, 1, 0]]).unwrap();
        assert!(betweenness_triples(&eq3).is_empty());
        assert!(hypergraph_of(&eq3).is_empty());
    }

    #[test]
    fn lines_in_c4_chart() {
        let m = c4_chart();
        assert_eq!(line(&m, "a", "b").unwrap(), set(&["a", "b", "c", "d", "x"]));
        assert_eq!(line(&m, "a", "c").unwrap(), set(&["a", "b", "c", "d"]));
        assert!(matches!(line(&m, "a", "a"), Err(Error::SamePoint(_))));
        let two = space(&["p", "q"], &[&[0, 1], &[1, 0]]).unwrap();
        assert_eq!(line(&two, "p", "q").unwrap(), set(&["p", "q"]));
    }

    #[test]
    fn partitions() {
        let m = c4_chart();
        let part = line_partition(&m, &labels(&["a", "b", "c", "d"])).unwrap();
        assert_eq!(part.classes().len(), 2);
        assert!(part.equivalent([0, 1], [2, 3]));
        assert!(part.equivalent([0, 2], [1, 3]));
        assert!(!part.equivalent([0, 1], [0, 2]));
        let line3 = space(&["0", "1", "2"], &[&[0, 1, 2], &[1, 0, 1], &[2, 1, 0]]).unwrap();
        assert_eq!(line_partition(&line3, &labels(&["0", "1", "2"])).unwrap().classes().len(), 1);
        let eq3 = space(&["a", "b", "c"], &[&[0, 1, 1], &[1, 0, 1], &[1, 1, 0]]).unwrap();
        assert_eq!(line_partition(&eq3, &labels(&["a", "b", "c"])).unwrap().classes().len(), 3);
        let singletons = PairEquivalence::new(3, vec![vec![[0, 1]], vec![[0, 2]], vec![[1, 2]]]).unwrap();
        assert!(!check_meq(&line3, &labels(&["0", "1", "2"]), &singletons).unwrap());
        assert!(check_meq(&eq3, &labels(&["a", "b", "c"]), &singletons).unwrap());
        assert!(check_meq(&eq3, &labels(&["a", "b"]), &singletons).is_err());
    }

    #[test]
    fn restriction() {
        let m = c4_chart();
        let sub = induced_subspace(&m, &labels(&["a", "b", "c", "d"])).unwrap();
        assert_eq!(betweenness_triples(&sub).len(), 4);
        assert_eq!(hypergraph_of(&sub), hypergraph_of(&m).induced(&[0, 1, 2, 3]));
        let two = induced_subspace(&m, &labels(&["a", "x"])).unwrap();
        assert_eq!(two.len(), 2);
        assert!(matches!(induced_subspace(&m, &labels(&["a"])), Err(Error::SubsetTooSmall { .. })));
    }
}

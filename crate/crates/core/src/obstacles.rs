//! Obstacles among pair equivalences.
//!
//! If a metric space on `W ⊇ V` has lines realizing `≡_G` on `V`, where both
//! classes are nonempty, then every triple of `V` is collinear and the
//! hypergraph based on `G` or on its complement is induced on `V ∪ {w}` for
//! a suitable `w`. So when neither based hypergraph is metric, `≡_G` is an
//! obstacle. That condition is only known to be sufficient: failing it
//! leaves the question open.
//!
//! Minimality of a cycle obstacle is checked on one-vertex deletions only. A
//! space realizing the line equivalence on `U` realizes it on every subset of
//! `U` too, so the maximal proper subsets cover all of them.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::constructions::{path_based_metric, APEX};
use crate::error::{Error, Result};
use crate::hypergraph::{all_pairs, all_triples, based_hypergraph, graph_equivalence, Graph};
use crate::metric::{check_meq, induced_subspace, line, MetricSpace};
use crate::recognizer::{decide_metric, DecideOptions, Verdict};

/// Proof that `≡_G` is an obstacle: neither based hypergraph is metric.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ObstacleCertificate {
    pub graph: Graph,
    pub graph_verdict: Verdict,
    pub complement_verdict: Verdict,
}

impl ObstacleCertificate {
    /// Reruns the decider on both based hypergraphs and checks that the
    /// stored verdicts are non-metric and agree with it.
    pub fn verify(&self, opts: &DecideOptions) -> Result<bool> {
        if self.graph_verdict.is_metric() || self.complement_verdict.is_metric() {
            return Ok(false);
        }
        let g = decide_metric(&based_hypergraph(&self.graph), opts)?;
        if g.is_metric() {
            return Ok(false);
        }
        Ok(!decide_metric(&based_hypergraph(&self.graph.complement()), opts)?.is_metric())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Side {
    Graph,
    Complement,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "outcome", rename_all = "snake_case")]
pub enum ObstacleOutcome {
    Certified { certificate: ObstacleCertificate },
    /// One based hypergraph is metric, so the certificate route gives no
    /// answer. `witness` realizes it.
    Undetermined { metric_side: Side, witness: MetricSpace },
}

/// Decides both based hypergraphs, stopping at the first metric one.
///
/// Fails with [`Error::RouteInapplicable`] when `G` or its complement has no
/// edges, since `≡_G` then has a single class.
pub fn assess_obstacle(g: &Graph, opts: &DecideOptions) -> Result<ObstacleOutcome> {
    let co = g.complement();
    if g.edges().is_empty() {
        return Err(Error::RouteInapplicable("the graph is edgeless".into()));
    }
    if co.edges().is_empty() {
        return Err(Error::RouteInapplicable("the complement is edgeless".into()));
    }
    let graph_verdict = decide_metric(&based_hypergraph(g), opts)?;
    if let Verdict::Metric { witness, .. } = graph_verdict {
        return Ok(ObstacleOutcome::Undetermined { metric_side: Side::Graph, witness });
    }
    let complement_verdict = decide_metric(&based_hypergraph(&co), opts)?;
    if let Verdict::Metric { witness, .. } = complement_verdict {
        return Ok(ObstacleOutcome::Undetermined { metric_side: Side::Complement, witness });
    }
    Ok(ObstacleOutcome::Certified {
        certificate: ObstacleCertificate { graph: g.clone(), graph_verdict, complement_verdict },
    })
}

/// The certificate, if the route succeeds. `None` proves nothing.
pub fn certify_obstacle(g: &Graph, opts: &DecideOptions) -> Result<Option<ObstacleCertificate>> {
    Ok(match assess_obstacle(g, opts)? {
        ObstacleOutcome::Certified { certificate } => Some(certificate),
        ObstacleOutcome::Undetermined { .. } => None,
    })
}

/// What one vertex deletion of a cycle looks like under the path realization.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DeletionCheck {
    pub removed: usize,
    /// Remaining cycle vertices in path order.
    pub path: Vec<usize>,
    /// The line equivalence of the space on `U` is `≡_F`.
    pub meq: bool,
    /// Every edge of `F` has line `U ∪ {x}` and every non-edge has line `U`.
    pub lines_as_expected: bool,
    /// Distinct lines over pairs of `U`.
    pub distinct_lines: Vec<BTreeSet<String>>,
}

/// Realizes `≡_F` for each induced subgraph `F` of `C_n` on `n - 1` vertices
/// with the based path metric on `n - 1` points.
pub fn cycle_deletion_checks(n: usize) -> Result<Vec<DeletionCheck>> {
    if n % 2 == 1 || n <= 4 {
        return Err(Error::OutOfRange(format!("cycle obstacles need an even n > 4, got {n}")));
    }
    let cycle = Graph::cycle(n)?;
    let base = path_based_metric(n - 1)?;
    let mut out = Vec::with_capacity(n);
    for removed in 0..n {
        let path: Vec<usize> = (1..n).map(|i| (removed + i) % n).collect();
        let f = cycle.induced(&path);
        if f != Graph::path(n - 1) {
            return Err(Error::ConstructionMismatch(format!("C{n} minus {removed} is not a path in cyclic order")));
        }
        let u: Vec<String> = path.iter().map(|v| v.to_string()).collect();
        let mut labels = u.clone();
        labels.push(APEX.to_string());
        let m = induced_subspace(&base.rename(labels.clone())?, &labels)?;

        let meq = check_meq(&m, &u, &graph_equivalence(&f))?;
        let all: BTreeSet<String> = labels.iter().cloned().collect();
        let core: BTreeSet<String> = u.iter().cloned().collect();
        let mut distinct = BTreeSet::new();
        let mut lines_as_expected = true;
        for [a, b] in all_pairs(u.len()) {
            let l = line(&m, &u[a], &u[b])?;
            let want = if f.has_edge(a, b) { &all } else { &core };
            lines_as_expected &= &l == want;
            distinct.insert(l);
        }
        out.push(DeletionCheck { removed, path, meq, lines_as_expected, distinct_lines: distinct.into_iter().collect() });
    }
    Ok(out)
}

/// Whether every one-vertex deletion of `≡_{C_n}` is realized, with exactly
/// the two lines `U ∪ {x}` and `U`.
pub fn verify_cycle_obstacle_minimality(n: usize) -> Result<bool> {
    Ok(cycle_deletion_checks(n)?.iter().all(|c| c.meq && c.lines_as_expected && c.distinct_lines.len() == 2))
}

/// Whether every three points of `subset` are collinear in `m`.
pub fn all_triples_collinear(m: &MetricSpace, subset: &[String]) -> Result<bool> {
    let idx: Vec<usize> = subset.iter().map(|l| m.index_of(l)).collect::<Result<_>>()?;
    Ok(all_triples(idx.len()).all(|[a, b, c]| {
        let t = crate::hypergraph::sorted_triple(idx[a], idx[b], idx[c]);
        m.middle_of(t).is_some()
    }))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn route_inapplicable_for_complete_and_edgeless() {
        let opts = DecideOptions::default();
        assert!(matches!(assess_obstacle(&Graph::complete(3), &opts), Err(Error::RouteInapplicable(_))));
        assert!(matches!(assess_obstacle(&Graph::empty(4), &opts), Err(Error::RouteInapplicable(_))));
    }

    #[test]
    fn c4_is_undetermined() {
        match assess_obstacle(&Graph::cycle(4).unwrap(), &DecideOptions::default()).unwrap() {
            ObstacleOutcome::Undetermined { metric_side, .. } => assert_eq!(metric_side, Side::Graph),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn c6_deletions() {
        let checks = cycle_deletion_checks(6).unwrap();
        assert_eq!(checks.len(), 6);
        assert_eq!(checks[2].path, vec![3, 4, 5, 0, 1]);
        assert!(checks.iter().all(|c| c.meq && c.lines_as_expected && c.distinct_lines.len() == 2));
    }

    #[test]
    fn minimality_range() {
        assert!(verify_cycle_obstacle_minimality(4).is_err());
        assert!(verify_cycle_obstacle_minimality(7).is_err());
    }
}

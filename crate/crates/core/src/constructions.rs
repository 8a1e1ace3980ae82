//! Explicit metric spaces realizing hypergraphs based on small graphs.
//!
//! Every constructor checks its output against the based hypergraph it is
//! meant to realize and returns [`Error::ConstructionMismatch`] otherwise.

use crate::error::{Error, Result};
use crate::hypergraph::{based_hypergraph, Graph};
use crate::metric::{hypergraph_of, induced_subspace, validate_metric, MetricSpace};
use crate::rational::Rational;

pub const APEX: &str = "x";

fn verify(m: MetricSpace, g: &Graph, name: &str) -> Result<MetricSpace> {
    let got = hypergraph_of(&m);
    let want = based_hypergraph(g);
    if got != want {
        let extra: Vec<_> = got.triples().difference(want.triples()).collect();
        let missing: Vec<_> = want.triples().difference(got.triples()).collect();
        return Err(Error::ConstructionMismatch(format!("{name}: extra triples {extra:?}, missing {missing:?}")));
    }
    Ok(m)
}

fn chart(labels: &[&str], rows: &[[i64; 5]; 5]) -> Result<MetricSpace> {
    validate_metric(
        labels.iter().map(|s| s.to_string()).collect(),
        rows.iter().map(|r| r.iter().map(|&v| Rational::from_integer(v)).collect()).collect(),
    )
}

/// Points `0..=2s` on a line at unit spacing plus an apex `x` at distance `s`
/// from even points and `s + 1` from odd ones. Realizes the hypergraph based
/// on the cycle `0-1-...-2s-0`.
pub fn odd_cycle_metric(s: usize) -> Result<MetricSpace> {
    if s < 1 {
        return Err(Error::OutOfRange(format!("odd_cycle_metric needs s >= 1, got {s}")));
    }
    let n = 2 * s + 1;
    let mut labels: Vec<String> = (0..n).map(|i| i.to_string()).collect();
    labels.push(APEX.to_string());
    let apex_dist = |k: usize| Rational::from_integer(if k % 2 == 0 { s } else { s + 1 } as i64);
    let dist = (0..=n)
        .map(|i| {
            (0..=n)
                .map(|j| match (i == n, j == n) {
                    (true, true) => Rational::zero(),
                    (true, false) => apex_dist(j),
                    (false, true) => apex_dist(i),
                    (false, false) => Rational::from_integer(i.abs_diff(j) as i64),
                })
                .collect()
        })
        .collect();
    verify(validate_metric(labels, dist)?, &Graph::cycle(n)?, "odd_cycle_metric")
}

/// Realizes the hypergraph based on the path `0-1-...-(k-1)` by restricting
/// `odd_cycle_metric(k)` to its first `k` points and the apex.
pub fn path_based_metric(k: usize) -> Result<MetricSpace> {
    if k < 2 {
        return Err(Error::OutOfRange(format!("path_based_metric needs k >= 2, got {k}")));
    }
    let full = odd_cycle_metric(k)?;
    let mut keep: Vec<String> = (0..k).map(|i| i.to_string()).collect();
    keep.push(APEX.to_string());
    verify(induced_subspace(&full, &keep)?, &Graph::path(k), "path_based_metric")
}

/// Five points `a, b, c, d, x` realizing the hypergraph based on the 4-cycle
/// `a-b-c-d-a`.
pub fn c4_based_metric() -> Result<MetricSpace> {
    let m = chart(&["a", "b", "c", "d", APEX], &C4_CHART)?;
    verify(m, &Graph::cycle(4)?, "c4_based_metric")
}

pub const C4_CHART: [[i64; 5]; 5] = [
    [0, 1, 2, 1, 2],
    [1, 0, 1, 2, 3],
    [2, 1, 0, 1, 2],
    [1, 2, 1, 0, 3],
    [2, 3, 2, 3, 0],
];

/// Five points `e, b, c, d, x` realizing the hypergraph based on the graph
/// with edges `eb, ec, bc, cd` (the house graph minus a roof corner).
pub fn p5bar_minus_a_metric() -> Result<MetricSpace> {
    let m = chart(&["e", "b", "c", "d", APEX], &P5BAR_MINUS_A_CHART)?;
    let g = Graph::new(4, [(0, 1), (0, 2), (1, 2), (2, 3)])?;
    verify(m, &g, "p5bar_minus_a_metric")
}

pub const P5BAR_MINUS_A_CHART: [[i64; 5]; 5] = [
    [0, 1, 2, 3, 2],
    [1, 0, 1, 2, 3],
    [2, 1, 0, 1, 4],
    [3, 2, 1, 0, 3],
    [2, 3, 4, 3, 0],
];

#[cfg(test)]
mod tests {
    use super::*;
    use crate::metric::{betweenness_triples, line, BetweennessTriple};
    use std::collections::BTreeSet;

    fn r(n: i64) -> Rational {
        Rational::from_integer(n)
    }

    #[test]
    fn odd_cycle_apex_distances() {
        let m = odd_cycle_metric(2).unwrap();
        let row: Vec<Rational> = (0..5).map(|k| m.dist("x", &k.to_string()).unwrap().clone()).collect();
        assert_eq!(row, vec![r(2), r(3), r(2), r(3), r(2)]);
        // {x,0,2}: 2+2 != 2 in every orientation
        assert!(m.middle_of([0, 2, 5]).is_none());
    }

    #[test]
    fn odd_cycle_s1_is_complete_on_four_points() {
        let m = odd_cycle_metric(1).unwrap();
        assert_eq!(hypergraph_of(&m).len(), 4);
    }

    #[test]
    fn rejects_bad_parameters() {
        assert!(matches!(odd_cycle_metric(0), Err(Error::OutOfRange(_))));
        assert!(matches!(path_based_metric(1), Err(Error::OutOfRange(_))));
    }

    #[test]
    fn path_metrics() {
        for k in 2..=7 {
            let m = path_based_metric(k).unwrap();
            assert_eq!(m.len(), k + 1);
            // {x, 0, k-1} is collinear only when the path is a single edge
            assert_eq!(m.middle_of([0, k - 1, k]).is_some(), k == 2);
        }
    }

    #[test]
    fn c4_chart_entries() {
        let m = c4_based_metric().unwrap();
        assert_eq!(m.dist("b", "x").unwrap(), &r(3));
        assert_eq!(m.dist("a", "c").unwrap(), &r(2));
        let b = betweenness_triples(&m);
        assert!(b.contains(&BetweennessTriple::new("x", "a", "b")));
        assert!(!b.iter().any(|t| t.v == "x" && ((t.u == "b" && t.w == "d") || (t.u == "d" && t.w == "b"))));
        let all: BTreeSet<String> = m.points().iter().cloned().collect();
        assert_eq!(line(&m, "a", "b").unwrap(), all);
    }

    #[test]
    fn p5bar_minus_a_chart_entries() {
        let m = p5bar_minus_a_metric().unwrap();
        assert_eq!(m.dist("c", "x").unwrap(), &r(4));
        assert_eq!(m.dist("e", "d").unwrap(), &r(3));
        let b = betweenness_triples(&m);
        for (u, v, w) in [("x", "e", "b"), ("x", "e", "c"), ("x", "d", "c"), ("x", "b", "c"), ("e", "b", "c"), ("e", "b", "d"), ("e", "c", "d"), ("b", "c", "d")] {
            assert!(b.contains(&BetweennessTriple::new(u, v, w)), "[{u}{v}{w}]");
        }
        assert_eq!(b.len(), 8);
    }
}

//! Linear systems over pair distances and their exact solution.
//!
//! A total middle assignment `H` is realizable iff there are distances with
//! `d(u,v) + d(v,w) = d(u,w)` for every hyperedge with middle `v` and all
//! three triangle inequalities strict on every other triple. That system is
//! positively homogeneous, so strict feasibility is the same as feasibility
//! with unit slacks and every distance at least one: scale any strict
//! solution until the smallest slack and the smallest distance reach one.

use serde::{Deserialize, Serialize};

use super::closure::{Layout, OrientationAssignment};
use super::simplex::{Simplex, Status};
use crate::error::{Error, Result};
use crate::hypergraph::{Hypergraph3, Pair};
use crate::metric::{validate_metric, MetricSpace};
use crate::rational::Rational;

/// `d[plus[0]] + d[plus[1]] - d[minus]`, indices into the variable list.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct TriangleForm {
    pub plus: [usize; 2],
    pub minus: usize,
}

/// One variable per vertex pair (each at least 1), triangle forms pinned to
/// zero, and triangle forms bounded below by one.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FeasibilitySystem {
    pub n: usize,
    pub variables: Vec<Pair>,
    pub equalities: Vec<TriangleForm>,
    pub inequalities: Vec<TriangleForm>,
}

pub(crate) fn form(layout: &Layout, a: usize, m: usize, b: usize) -> TriangleForm {
    TriangleForm { plus: [layout.pid(a, m), layout.pid(m, b)], minus: layout.pid(a, b) }
}

pub fn build_feasibility_system(h: &Hypergraph3, a: &OrientationAssignment) -> Result<FeasibilitySystem> {
    let layout = Layout::new(h.n());
    let mut equalities = Vec::new();
    let mut inequalities = Vec::new();
    for (&t, &m) in a.iter() {
        if !h.triples().contains(&t) || !t.contains(&m) {
            return Err(Error::InvalidHypergraph(format!("middle {m} of {t:?} is not a hyperedge orientation")));
        }
    }
    for &t in &layout.triples {
        let [x, y, z] = t;
        if h.triples().contains(&t) {
            let m = a.middle(t).ok_or(Error::NotTotal(t))?;
            let [p, q] = if m == x { [y, z] } else if m == y { [x, z] } else { [x, y] };
            equalities.push(form(&layout, p, m, q));
        } else {
            inequalities.push(form(&layout, y, x, z));
            inequalities.push(form(&layout, x, y, z));
            inequalities.push(form(&layout, x, z, y));
        }
    }
    Ok(FeasibilitySystem { n: h.n(), variables: layout.pairs, equalities, inequalities })
}

fn row(f: &TriangleForm) -> Vec<(usize, Rational)> {
    vec![(f.plus[0], Rational::one()), (f.plus[1], Rational::one()), (f.minus, -Rational::one())]
}

/// Exact feasibility with a witness. Deterministic: the same system always
/// yields the same values.
pub fn solve_exact_feasibility(sys: &FeasibilitySystem) -> Option<Vec<Rational>> {
    let nv = sys.variables.len();
    let rows: Vec<_> = sys.equalities.iter().chain(&sys.inequalities).map(row).collect();
    let mut s = Simplex::new(nv, &rows);
    for v in 0..nv {
        s.assert_lower(v, Rational::one());
    }
    for r in 0..sys.equalities.len() {
        let v = s.slack(nv, r);
        s.assert_lower(v, Rational::zero());
        s.assert_upper(v, Rational::zero());
    }
    for r in sys.equalities.len()..rows.len() {
        let v = s.slack(nv, r);
        s.assert_lower(v, Rational::one());
    }
    match s.check() {
        Status::Feasible => Some((0..nv).map(|v| s.value(v).clone()).collect()),
        Status::Infeasible => None,
    }
}

impl FeasibilitySystem {
    /// Whether `values` satisfies every constraint exactly.
    pub fn satisfied_by(&self, values: &[Rational]) -> bool {
        let eval = |f: &TriangleForm| &(&values[f.plus[0]] + &values[f.plus[1]]) - &values[f.minus];
        values.len() == self.variables.len()
            && values.iter().all(|v| *v >= Rational::one())
            && self.equalities.iter().all(|f| eval(f).is_zero())
            && self.inequalities.iter().all(|f| eval(f) >= Rational::one())
    }

    /// The metric space on points `"0".."n-1"` with the given pair distances.
    pub fn realize(&self, values: &[Rational]) -> Result<MetricSpace> {
        let mut dist = vec![vec![Rational::zero(); self.n]; self.n];
        for (&[a, b], v) in self.variables.iter().zip(values) {
            dist[a][b] = v.clone();
            dist[b][a] = v.clone();
        }
        validate_metric((0..self.n).map(|i| i.to_string()).collect(), dist)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::c4_based_metric;
    use crate::hypergraph::{based_hypergraph, Graph};
    use crate::metric::hypergraph_of;

    #[test]
    fn single_triple() {
        let h = Hypergraph3::new(3, [[0, 1, 2]]).unwrap();
        let mut a = OrientationAssignment::new();
        a.set(0, 1, 2);
        let sys = build_feasibility_system(&h, &a).unwrap();
        assert_eq!(sys.equalities, vec![TriangleForm { plus: [0, 2], minus: 1 }]);
        assert!(sys.inequalities.is_empty());
        let v = solve_exact_feasibility(&sys).unwrap();
        // variables: d01, d02, d12
        assert_eq!(v, vec![Rational::one(), Rational::from_integer(2), Rational::one()]);
    }

    #[test]
    fn empty_hypergraph_gets_strict_inequalities() {
        let h = Hypergraph3::empty(3);
        let sys = build_feasibility_system(&h, &OrientationAssignment::new()).unwrap();
        assert_eq!(sys.inequalities.len(), 3);
        let v = solve_exact_feasibility(&sys).unwrap();
        assert!(sys.satisfied_by(&v));
        assert!(hypergraph_of(&sys.realize(&v).unwrap()).is_empty());
    }

    #[test]
    fn contradictory_equalities_are_infeasible() {
        // d01 + d12 = d02 and d02 + d12 = d01 force d12 = 0
        let sys = FeasibilitySystem {
            n: 3,
            variables: vec![[0, 1], [0, 2], [1, 2]],
            equalities: vec![TriangleForm { plus: [0, 2], minus: 1 }, TriangleForm { plus: [1, 2], minus: 0 }],
            inequalities: vec![],
        };
        assert_eq!(solve_exact_feasibility(&sys), None);
    }

    #[test]
    fn partial_assignment_is_rejected() {
        let h = Hypergraph3::complete(3);
        assert!(matches!(build_feasibility_system(&h, &OrientationAssignment::new()), Err(Error::NotTotal(_))));
    }

    #[test]
    fn c4_chart_satisfies_its_system() {
        let m = c4_based_metric().unwrap();
        let h = based_hypergraph(&Graph::cycle(4).unwrap());
        let mut a = OrientationAssignment::new();
        for b in m.betweenness() {
            a.set(b.ends[0], b.middle, b.ends[1]);
        }
        let sys = build_feasibility_system(&h, &a).unwrap();
        let values: Vec<Rational> = sys.variables.iter().map(|&[p, q]| m.d(p, q).clone()).collect();
        assert!(sys.satisfied_by(&values));
        assert!(solve_exact_feasibility(&sys).is_some_and(|v| sys.satisfied_by(&v)));
    }
}

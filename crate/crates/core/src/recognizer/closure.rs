//! Middle assignments on hyperedges and their closure under the four-point
//! rule `[abd], [bcd] => [abc], [acd]`.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hypergraph::{all_pairs, all_triples, sorted_triple, Hypergraph3, Pair, Triple};

pub(crate) const NONE: u8 = u8::MAX;

/// Dense indices for the pairs and triples of `0..n`.
#[derive(Debug, Clone)]
pub(crate) struct Layout {
    pub n: usize,
    pub triples: Vec<Triple>,
    pub pairs: Vec<Pair>,
    tid: Vec<u32>,
    pid: Vec<u32>,
}

impl Layout {
    pub fn new(n: usize) -> Self {
        let triples: Vec<Triple> = all_triples(n).collect();
        let pairs: Vec<Pair> = all_pairs(n).collect();
        let mut tid = vec![u32::MAX; n * n * n];
        for (i, &[a, b, c]) in triples.iter().enumerate() {
            for [x, y, z] in [[a, b, c], [a, c, b], [b, a, c], [b, c, a], [c, a, b], [c, b, a]] {
                tid[(x * n + y) * n + z] = i as u32;
            }
        }
        let mut pid = vec![u32::MAX; n * n];
        for (i, &[a, b]) in pairs.iter().enumerate() {
            pid[a * n + b] = i as u32;
            pid[b * n + a] = i as u32;
        }
        Layout { n, triples, pairs, tid, pid }
    }

    #[inline]
    pub fn tid(&self, a: usize, b: usize, c: usize) -> usize {
        self.tid[(a * self.n + b) * self.n + c] as usize
    }

    #[inline]
    pub fn pid(&self, a: usize, b: usize) -> usize {
        self.pid[a * self.n + b] as usize
    }
}

/// A partial choice of middle vertex for hyperedges.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrientationAssignment {
    middles: BTreeMap<Triple, usize>,
}

impl OrientationAssignment {
    pub fn new() -> Self {
        Self::default()
    }

    /// Sets `middle` as the middle of `{a, b, middle}`; returns the previous
    /// middle if there was one.
    pub fn set(&mut self, a: usize, middle: usize, b: usize) -> Option<usize> {
        self.middles.insert(sorted_triple(a, middle, b), middle)
    }

    pub fn middle(&self, t: Triple) -> Option<usize> {
        self.middles.get(&sorted_triple(t[0], t[1], t[2])).copied()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Triple, &usize)> {
        self.middles.iter()
    }

    pub fn len(&self) -> usize {
        self.middles.len()
    }

    pub fn is_empty(&self) -> bool {
        self.middles.is_empty()
    }

    /// Whether `[a middle b]` is asserted.
    pub fn holds(&self, a: usize, middle: usize, b: usize) -> bool {
        a != b && a != middle && b != middle && self.middle([a, middle, b]) == Some(middle)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ConflictKind {
    /// A forced betweenness fact lands on a triple that is not a hyperedge.
    NonHyperedge { triple: Triple },
    /// A forced fact gives a hyperedge a second middle.
    Clash { triple: Triple, existing: usize, forced: usize },
}

/// A closure failure with the 4-point set `[a, b, c, d]` of the rule
/// application that produced it.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Conflict {
    pub kind: ConflictKind,
    pub quad: [usize; 4],
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Closure {
    Closed(OrientationAssignment),
    Conflict(Conflict),
}

/// Dense assignment state shared by the closure and the search.
#[derive(Clone)]
pub(crate) struct Orientation {
    pub in_h: Vec<bool>,
    pub middle: Vec<u8>,
    pub trail: Vec<usize>,
}

impl Orientation {
    pub fn new(layout: &Layout, h: &Hypergraph3) -> Self {
        let in_h = layout.triples.iter().map(|t| h.triples().contains(t)).collect();
        Orientation { in_h, middle: vec![NONE; layout.triples.len()], trail: Vec::new() }
    }

    #[inline]
    pub fn holds(&self, layout: &Layout, a: usize, m: usize, b: usize) -> bool {
        self.middle[layout.tid(a, m, b)] == m as u8
    }

    /// Assigns `m` as middle of `{a, m, b}` unless already so; appends to the
    /// trail.
    #[inline]
    pub fn force(&mut self, layout: &Layout, a: usize, m: usize, b: usize, quad: [usize; 4]) -> std::result::Result<(), Conflict> {
        let t = layout.tid(a, m, b);
        if !self.in_h[t] {
            return Err(Conflict { kind: ConflictKind::NonHyperedge { triple: layout.triples[t] }, quad });
        }
        match self.middle[t] {
            NONE => {
                self.middle[t] = m as u8;
                self.trail.push(t);
                Ok(())
            }
            x if x as usize == m => Ok(()),
            x => Err(Conflict { kind: ConflictKind::Clash { triple: layout.triples[t], existing: x as usize, forced: m }, quad }),
        }
    }

    /// Closes the trail from position `from` onward. New facts are appended
    /// to the trail and processed in order.
    pub fn propagate(&mut self, layout: &Layout, mut from: usize) -> std::result::Result<(), Conflict> {
        let n = layout.n;
        while from < self.trail.len() {
            let t = self.trail[from];
            from += 1;
            let m = self.middle[t] as usize;
            let [p, q] = ends(layout.triples[t], m);
            for (x, y) in [(p, q), (q, p)] {
                // the fact as [a b d] with (a, b, d) = (x, m, y)
                for c in 0..n {
                    if c != x && c != m && c != y && self.holds(layout, m, c, y) {
                        let quad = [x, m, c, y];
                        self.force(layout, x, m, c, quad)?;
                        self.force(layout, x, c, y, quad)?;
                    }
                }
                // the fact as [b c d] with (b, c, d) = (x, m, y)
                for a in 0..n {
                    if a != x && a != m && a != y && self.holds(layout, a, x, y) {
                        let quad = [a, x, m, y];
                        self.force(layout, a, x, m, quad)?;
                        self.force(layout, a, m, y, quad)?;
                    }
                }
            }
        }
        Ok(())
    }
}

fn ends(t: Triple, m: usize) -> [usize; 2] {
    match t.iter().position(|&v| v == m) {
        Some(0) => [t[1], t[2]],
        Some(1) => [t[0], t[2]],
        _ => [t[0], t[1]],
    }
}

/// Least fixpoint of `a` under `[abd], [bcd] => [abc], [acd]`, or the first
/// conflict met. Facts are processed in the assignment's triple order.
pub fn orientation_closure(h: &Hypergraph3, a: &OrientationAssignment) -> Result<Closure> {
    let layout = Layout::new(h.n());
    let mut state = Orientation::new(&layout, h);
    for (&t, &m) in a.iter() {
        if !t.contains(&m) {
            return Err(Error::InvalidHypergraph(format!("middle {m} is not in triple {t:?}")));
        }
        if !h.triples().contains(&t) {
            return Err(Error::InvalidHypergraph(format!("{t:?} is not a hyperedge")));
        }
        let [p, q] = ends(t, m);
        state.force(&layout, p, m, q, [p, m, q, m]).expect("input facts are on distinct hyperedges");
    }
    Ok(match state.propagate(&layout, 0) {
        Ok(()) => Closure::Closed(state.to_assignment(&layout)),
        Err(c) => Closure::Conflict(c),
    })
}

impl Orientation {
    pub fn to_assignment(&self, layout: &Layout) -> OrientationAssignment {
        let mut out = OrientationAssignment::new();
        for (t, &m) in self.middle.iter().enumerate() {
            if m != NONE {
                out.middles.insert(layout.triples[t], m as usize);
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hypergraph::{based_hypergraph, Graph};

    fn assignment(facts: &[(usize, usize, usize)]) -> OrientationAssignment {
        let mut a = OrientationAssignment::new();
        for &(x, m, y) in facts {
            a.set(x, m, y);
        }
        a
    }

    #[test]
    fn four_point_rule_fires() {
        let h = based_hypergraph(&Graph::cycle(5).unwrap());
        let closed = orientation_closure(&h, &assignment(&[(0, 1, 3), (1, 2, 3)])).unwrap();
        let Closure::Closed(c) = closed else { panic!("{closed:?}") };
        assert!(c.holds(0, 1, 2) && c.holds(0, 2, 3));
        assert_eq!(c.len(), 4);
    }

    #[test]
    fn consecutive_facts_force_nothing() {
        // [012] and [123] alone do not determine the middle of {0,1,3}: the
        // 4-cycle metric has [abc], [bcd] and [dab].
        let h = based_hypergraph(&Graph::cycle(5).unwrap());
        let Closure::Closed(c) = orientation_closure(&h, &assignment(&[(0, 1, 2), (1, 2, 3)])).unwrap() else {
            panic!()
        };
        assert_eq!(c.len(), 2);
    }

    #[test]
    fn forced_fact_off_the_hypergraph_conflicts() {
        let h = Hypergraph3::new(4, [[0, 1, 3], [1, 2, 3], [0, 2, 3]]).unwrap();
        match orientation_closure(&h, &assignment(&[(0, 1, 3), (1, 2, 3)])).unwrap() {
            Closure::Conflict(c) => {
                assert_eq!(c.kind, ConflictKind::NonHyperedge { triple: [0, 1, 2] });
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn clash_is_reported() {
        let h = Hypergraph3::complete(4);
        match orientation_closure(&h, &assignment(&[(0, 1, 3), (1, 2, 3), (1, 0, 2)])).unwrap() {
            Closure::Conflict(c) => assert!(matches!(c.kind, ConflictKind::Clash { .. })),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn empty_closes_to_empty() {
        let h = Hypergraph3::complete(5);
        assert_eq!(
            orientation_closure(&h, &OrientationAssignment::new()).unwrap(),
            Closure::Closed(OrientationAssignment::new())
        );
    }

    #[test]
    fn rejects_facts_off_the_hypergraph() {
        let h = Hypergraph3::new(4, [[0, 1, 2]]).unwrap();
        assert!(orientation_closure(&h, &assignment(&[(0, 1, 3)])).is_err());
    }
}

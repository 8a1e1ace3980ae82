//! Structural facts every metric space obeys, exposed as checkers.
//!
//! These are used as property oracles for the betweenness extractor and
//! the recognizer: linear orders on collinear point sets, the classification
//! of pairs by how an extra point sits relative to them, and the four-point
//! betweenness rule `[abd], [bcd] => [abc], [acd]`.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hypergraph::all_triples;
use crate::metric::{Between, MetricSpace};

/// Orders `subset` so that `[v_a v_b v_c]` holds for every `a < b < c`.
///
/// Picks a diametral pair as endpoints, sorts by distance from one of them,
/// then verifies every triple. Returns `None` when verification fails, which
/// cannot happen for five or more points all of whose triples are collinear;
/// for three or four points the answer is best-effort (a cyclic 4-point
/// configuration has no such order).
pub fn recover_linear_order(m: &MetricSpace, subset: &[String]) -> Result<Option<Vec<String>>> {
    let idx: Vec<usize> = subset.iter().map(|l| m.index_of(l)).collect::<Result<_>>()?;
    for [a, b, c] in all_triples(idx.len()) {
        if m.middle_of(crate::hypergraph::sorted_triple(idx[a], idx[b], idx[c])).is_none() {
            return Err(Error::NotCollinear([subset[a].clone(), subset[b].clone(), subset[c].clone()]));
        }
    }
    if idx.len() < 2 {
        return Ok(Some(subset.to_vec()));
    }
    let mut best = (0, 1);
    for i in 0..idx.len() {
        for j in i + 1..idx.len() {
            if m.d(idx[i], idx[j]) > m.d(idx[best.0], idx[best.1]) {
                best = (i, j);
            }
        }
    }
    let origin = idx[best.0];
    let mut order = idx.clone();
    order.sort_by(|&p, &q| m.d(origin, p).cmp(m.d(origin, q)));
    let linear = all_triples(order.len()).all(|[a, b, c]| m.is_between(order[a], order[b], order[c]));
    Ok(linear.then(|| order.iter().map(|&i| m.points()[i].clone()).collect()))
}

/// Pairs `(j, l)` with `j < l` of a linearly ordered core, grouped by which of
/// the three points `apex, j, l` lies in the middle.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ApexClassification {
    /// Size of the ordered core.
    pub n: usize,
    /// `[apex j l]`
    pub d1: BTreeSet<(usize, usize)>,
    /// `[j apex l]`
    pub d2: BTreeSet<(usize, usize)>,
    /// `[j l apex]`
    pub d3: BTreeSet<(usize, usize)>,
}

pub fn apex_classification(m: &MetricSpace, order: &[String], apex: &str) -> Result<ApexClassification> {
    let x = m.index_of(apex)?;
    let idx: Vec<usize> = order.iter().map(|l| m.index_of(l)).collect::<Result<_>>()?;
    if idx.contains(&x) {
        return Err(Error::NotLinear(format!("apex {apex:?} is part of the order")));
    }
    if let Some([a, b, c]) = all_triples(idx.len()).find(|&[a, b, c]| !m.is_between(idx[a], idx[b], idx[c])) {
        return Err(Error::NotLinear(format!("[{} {} {}] does not hold", order[a], order[b], order[c])));
    }
    let mut c = ApexClassification { n: idx.len(), ..Default::default() };
    for j in 0..idx.len() {
        for l in j + 1..idx.len() {
            let (pj, pl) = (idx[j], idx[l]);
            if m.is_between(x, pj, pl) {
                c.d1.insert((j, l));
            } else if m.is_between(pj, x, pl) {
                c.d2.insert((j, l));
            } else if m.is_between(pj, pl, x) {
                c.d3.insert((j, l));
            }
        }
    }
    Ok(c)
}

/// The implications relating the three classes of apex-collinear pairs.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum ApexRule {
    /// `(j,l) in D1, j<k<l => (j,k), (k,l) in D1`
    Xjkl,
    /// `(j,l) in D3, j<k<l => (j,k), (k,l) in D3`
    Jklx,
    /// `(j,l) in D2, i<j => (i,j) in D3, (i,l) in D2`
    Ijxl,
    /// `(j,l) in D2, l<m => (j,m) in D2, (l,m) in D1`
    Jxlm,
    /// `(i,j), (j,k) in D1 => (i,k) in D1`
    D1Chain,
    /// `(i,j), (j,k) in D3 => (i,k) in D3`
    D3Chain,
    /// `(i,k) in D2, (j,k) in D1 => {i,j} in D2`
    D2FromD1,
    /// `(i,k) in D2, (i,j) in D3 => {j,k} in D2`
    D2FromD3,
    /// Ordered form of [`ApexRule::D2FromD1`]: `(i,j) in D2` with `i < j`.
    D2FromD1Ordered,
    /// Ordered form of [`ApexRule::D2FromD3`]: `(j,k) in D2` with `j < k`.
    D2FromD3Ordered,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ApexViolation {
    pub rule: ApexRule,
    pub premises: Vec<(usize, usize)>,
    pub missing: (usize, usize),
}

impl fmt::Display for ApexViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}: premises {:?} but {:?} missing", self.rule, self.premises, self.missing)
    }
}

/// Lists every failed implication; empty iff all hold.
pub fn check_apex_implications(c: &ApexClassification) -> Vec<ApexViolation> {
    let mut out = Vec::new();
    let mut need = |ok: bool, rule: ApexRule, premises: Vec<(usize, usize)>, missing: (usize, usize)| {
        if !ok {
            out.push(ApexViolation { rule, premises, missing });
        }
    };
    let d2_any = |a: usize, b: usize| c.d2.contains(&(a, b)) || c.d2.contains(&(b, a));

    for &(j, l) in &c.d1 {
        for k in j + 1..l {
            need(c.d1.contains(&(j, k)), ApexRule::Xjkl, vec![(j, l)], (j, k));
            need(c.d1.contains(&(k, l)), ApexRule::Xjkl, vec![(j, l)], (k, l));
        }
    }
    for &(j, l) in &c.d3 {
        for k in j + 1..l {
            need(c.d3.contains(&(j, k)), ApexRule::Jklx, vec![(j, l)], (j, k));
            need(c.d3.contains(&(k, l)), ApexRule::Jklx, vec![(j, l)], (k, l));
        }
    }
    for &(j, l) in &c.d2 {
        for i in 0..j {
            need(c.d3.contains(&(i, j)), ApexRule::Ijxl, vec![(j, l)], (i, j));
            need(c.d2.contains(&(i, l)), ApexRule::Ijxl, vec![(j, l)], (i, l));
        }
        for m in l + 1..c.n {
            need(c.d2.contains(&(j, m)), ApexRule::Jxlm, vec![(j, l)], (j, m));
            need(c.d1.contains(&(l, m)), ApexRule::Jxlm, vec![(j, l)], (l, m));
        }
    }
    for &(i, j) in &c.d1 {
        for &(_, k) in c.d1.range((j, 0)..(j + 1, 0)) {
            need(c.d1.contains(&(i, k)), ApexRule::D1Chain, vec![(i, j), (j, k)], (i, k));
        }
    }
    for &(i, j) in &c.d3 {
        for &(_, k) in c.d3.range((j, 0)..(j + 1, 0)) {
            need(c.d3.contains(&(i, k)), ApexRule::D3Chain, vec![(i, j), (j, k)], (i, k));
        }
    }
    for &(i, k) in &c.d2 {
        for &(j, k2) in &c.d1 {
            if k2 == k && j != i {
                need(d2_any(i, j), ApexRule::D2FromD1, vec![(i, k), (j, k)], (i.min(j), i.max(j)));
                need(c.d2.contains(&(i, j)), ApexRule::D2FromD1Ordered, vec![(i, k), (j, k)], (i, j));
            }
        }
        for &(i2, j) in &c.d3 {
            if i2 == i && j != k {
                need(d2_any(j, k), ApexRule::D2FromD3, vec![(i, k), (i, j)], (j.min(k), j.max(k)));
                need(c.d2.contains(&(j, k)), ApexRule::D2FromD3Ordered, vec![(i, k), (i, j)], (j, k));
            }
        }
    }
    out
}

/// A failure of `[abd], [bcd] => [abc], [acd]` (indices into the space).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct MengerViolation {
    pub a: usize,
    pub b: usize,
    pub c: usize,
    pub d: usize,
}

/// Checks the four-point rule on an arbitrary set of betweenness facts over
/// `0..n`.
pub fn check_menger_facts(n: usize, facts: &BTreeSet<Between>) -> Vec<MengerViolation> {
    let holds = |a: usize, b: usize, c: usize| facts.contains(&Between::new(a, b, c));
    let mut out = Vec::new();
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                for d in 0..n {
                    let distinct = a != b && a != c && a != d && b != c && b != d && c != d;
                    if distinct && holds(a, b, d) && holds(b, c, d) && !(holds(a, b, c) && holds(a, c, d)) {
                        out.push(MengerViolation { a, b, c, d });
                    }
                }
            }
        }
    }
    out
}

pub fn check_menger(m: &MetricSpace) -> Vec<MengerViolation> {
    check_menger_facts(m.len(), &m.betweenness())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::metric::validate_metric;
    use crate::rational::Rational;

    fn on_line(positions: &[i64]) -> MetricSpace {
        let labels = (0..positions.len()).map(|i| format!("p{i}")).collect();
        let dist = positions
            .iter()
            .map(|a| positions.iter().map(|b| Rational::from_integer((a - b).abs())).collect())
            .collect();
        validate_metric(labels, dist).unwrap()
    }

    #[test]
    fn linear_order_of_collinear_points() {
        let m = on_line(&[5, 0, 3, 9, 1, 7]);
        let order = recover_linear_order(&m, m.points()).unwrap().unwrap();
        let want: Vec<String> = ["p1", "p4", "p2", "p0", "p5", "p3"].iter().map(|s| s.to_string()).collect();
        let rev: Vec<String> = want.iter().rev().cloned().collect();
        assert!(order == want || order == rev, "{order:?}");
    }

    #[test]
    fn cyclic_four_points_have_no_order() {
        // d = shortest-path distance on the 4-cycle a-b-c-d-a
        let labels = ["a", "b", "c", "d"].iter().map(|s| s.to_string()).collect();
        let rows = [[0, 1, 2, 1], [1, 0, 1, 2], [2, 1, 0, 1], [1, 2, 1, 0]];
        let m = validate_metric(labels, rows.iter().map(|r| r.iter().map(|&x| Rational::from_integer(x)).collect()).collect()).unwrap();
        assert_eq!(recover_linear_order(&m, m.points()).unwrap(), None);
        assert!(apex_classification(&m, &m.points()[..3], "d").is_ok());
        assert!(matches!(apex_classification(&m, m.points(), "d"), Err(Error::NotLinear(_))));
    }

    #[test]
    fn non_collinear_subset_is_an_error() {
        let labels = ["a", "b", "c"].iter().map(|s| s.to_string()).collect();
        let one = Rational::one();
        let m = validate_metric(labels, vec![vec![Rational::zero(), one.clone(), one.clone()], vec![one.clone(), Rational::zero(), one.clone()], vec![one.clone(), one, Rational::zero()]]).unwrap();
        assert!(matches!(recover_linear_order(&m, m.points()), Err(Error::NotCollinear(_))));
    }

    #[test]
    fn apex_rules_on_artificial_classifications() {
        let empty = ApexClassification { n: 5, ..Default::default() };
        assert!(check_apex_implications(&empty).is_empty());
        let bad = ApexClassification { n: 3, d1: [(0, 2), (1, 2)].into(), ..Default::default() };
        let v = check_apex_implications(&bad);
        assert_eq!(v.len(), 1);
        assert_eq!(v[0].rule, ApexRule::Xjkl);
        assert_eq!(v[0].missing, (0, 1));
    }

    #[test]
    fn menger_negative_control() {
        let facts: BTreeSet<Between> = [Between::new(0, 1, 3), Between::new(1, 2, 3), Between::new(0, 2, 3)].into();
        assert_eq!(check_menger_facts(4, &facts), vec![MengerViolation { a: 0, b: 1, c: 2, d: 3 }]);
        assert!(check_menger(&on_line(&[0, 2, 3, 7, 11])).is_empty());
    }
}

//! Depth-first search over middle assignments.
//!
//! Each node closes its assignment under the four-point rule, optionally
//! checks an incremental LP relaxation (triangle inequalities on every
//! triple, strict off the hypergraph, plus the equalities assigned so far),
//! and branches on one unassigned hyperedge. Constraints only accumulate
//! along a branch, so relaxation infeasibility is a sound prune.
//!
//! When some set of at least five vertices has all its triples in the
//! hypergraph, every realization orders that set linearly with all triples
//! tight along the order. The search then branches over such orders (one of
//! each reversed pair) with the core middles fixed, instead of orienting
//! core triples one at a time.

use std::sync::atomic::{AtomicUsize, Ordering};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::closure::{Conflict, ConflictKind, Layout, Orientation, NONE};
use super::simplex::{Simplex, Status};
use super::system::{build_feasibility_system, form, solve_exact_feasibility};
use crate::error::{Error, Result};
use crate::hypergraph::Hypergraph3;
use crate::metric::{hypergraph_of, MetricSpace};
use crate::rational::Rational;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DecideOptions {
    /// Check the LP relaxation every `k` decisions; `None` disables pruning.
    pub prune_every: Option<usize>,
    /// Branch over linear orders of a complete core of at least this size.
    /// `None` disables it. Sizes below five make the search incomplete:
    /// it then only looks for realizations where the core is linear.
    pub core_order_min: Option<usize>,
    /// Worker threads; 1 runs sequentially. Results do not depend on it.
    pub threads: usize,
}

impl Default for DecideOptions {
    fn default() -> Self {
        DecideOptions { prune_every: Some(1), core_order_min: Some(5), threads: 1 }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConflictTally {
    pub non_hyperedge: u64,
    pub middle_clash: u64,
    pub relaxation: u64,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchStats {
    pub nodes: u64,
    pub conflicts: ConflictTally,
    pub leaves: u64,
    pub leaves_infeasible: u64,
    pub core_size: usize,
    pub core_orders: u64,
    pub pivots: u64,
}

impl SearchStats {
    fn merge(&mut self, o: &SearchStats) {
        self.nodes += o.nodes;
        self.conflicts.non_hyperedge += o.conflicts.non_hyperedge;
        self.conflicts.middle_clash += o.conflicts.middle_clash;
        self.conflicts.relaxation += o.conflicts.relaxation;
        self.leaves += o.leaves;
        self.leaves_infeasible += o.leaves_infeasible;
        self.core_orders += o.core_orders;
        self.pivots += o.pivots;
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "crate::io::VerdictFile", into = "crate::io::VerdictFile")]
pub enum Verdict {
    Metric { witness: MetricSpace, stats: SearchStats },
    NonMetric { stats: SearchStats },
}

impl Verdict {
    pub fn is_metric(&self) -> bool {
        matches!(self, Verdict::Metric { .. })
    }

    pub fn witness(&self) -> Option<&MetricSpace> {
        match self {
            Verdict::Metric { witness, .. } => Some(witness),
            Verdict::NonMetric { .. } => None,
        }
    }

    pub fn stats(&self) -> &SearchStats {
        match self {
            Verdict::Metric { stats, .. } | Verdict::NonMetric { stats } => stats,
        }
    }
}

/// Largest vertex set all of whose triples are hyperedges; ties go to the
/// lexicographically smallest set.
pub fn complete_core(h: &Hypergraph3) -> Vec<usize> {
    let n = h.n();
    let mut best: Vec<usize> = Vec::new();
    let mut current = Vec::new();
    extend_core(h, 0, n, &mut current, &mut best);
    best
}

fn extend_core(h: &Hypergraph3, next: usize, n: usize, current: &mut Vec<usize>, best: &mut Vec<usize>) {
    if current.len() > best.len() {
        *best = current.clone();
    }
    if current.len() + (n - next) <= best.len() {
        return;
    }
    for v in next..n {
        let ok = (0..current.len()).all(|i| (i + 1..current.len()).all(|j| h.contains(current[i], current[j], v)));
        if ok {
            current.push(v);
            extend_core(h, v + 1, n, current, best);
            current.pop();
        }
    }
}

struct Search<'a> {
    h: &'a Hypergraph3,
    layout: &'a Layout,
    opts: &'a DecideOptions,
    state: Orientation,
    /// Assigned hyperedges containing each pair.
    pair_load: Vec<u32>,
    lp: Option<Simplex>,
    decisions: usize,
    stats: SearchStats,
}

impl Clone for Search<'_> {
    fn clone(&self) -> Self {
        Search {
            h: self.h,
            layout: self.layout,
            opts: self.opts,
            state: self.state.clone(),
            pair_load: self.pair_load.clone(),
            lp: self.lp.clone(),
            decisions: self.decisions,
            stats: SearchStats::default(),
        }
    }
}

impl<'a> Search<'a> {
    fn new(h: &'a Hypergraph3, layout: &'a Layout, opts: &'a DecideOptions) -> Self {
        let state = Orientation::new(layout, h);
        let lp = opts.prune_every.map(|_| {
            let np = layout.pairs.len();
            let mut rows = Vec::with_capacity(3 * layout.triples.len());
            for &[x, y, z] in &layout.triples {
                for (a, m, b) in [(y, x, z), (x, y, z), (x, z, y)] {
                    let f = form(layout, a, m, b);
                    rows.push(vec![(f.plus[0], Rational::one()), (f.plus[1], Rational::one()), (f.minus, -Rational::one())]);
                }
            }
            let mut s = Simplex::new(np, &rows);
            for v in 0..np {
                s.assert_lower(v, Rational::one());
            }
            for (t, &in_h) in state.in_h.iter().enumerate() {
                let bound = if in_h { Rational::zero() } else { Rational::one() };
                for k in 0..3 {
                    s.assert_lower(s.slack(np, 3 * t + k), bound.clone());
                }
            }
            s
        });
        Search {
            h,
            layout,
            opts,
            state,
            pair_load: vec![0; layout.pairs.len()],
            lp,
            decisions: 0,
            stats: SearchStats::default(),
        }
    }

    fn push(&mut self) -> usize {
        if let Some(lp) = &mut self.lp {
            lp.push();
        }
        self.state.trail.len()
    }

    fn pop(&mut self, mark: usize) {
        while self.state.trail.len() > mark {
            let t = self.state.trail.pop().unwrap();
            self.state.middle[t] = NONE;
            let [a, b, c] = self.layout.triples[t];
            for (p, q) in [(a, b), (a, c), (b, c)] {
                self.pair_load[self.layout.pid(p, q)] -= 1;
            }
        }
        if let Some(lp) = &mut self.lp {
            lp.pop();
        }
    }

    /// Propagates from `from`, then mirrors every new fact into the LP.
    fn close(&mut self, from: usize) -> std::result::Result<(), Conflict> {
        let res = self.state.propagate(self.layout, from);
        self.mirror(from);
        res
    }

    /// Records trail facts from `from` onward in the pair loads and the LP.
    fn mirror(&mut self, from: usize) {
        let np = self.layout.pairs.len();
        for &t in &self.state.trail[from..] {
            let [a, b, c] = self.layout.triples[t];
            for (p, q) in [(a, b), (a, c), (b, c)] {
                self.pair_load[self.layout.pid(p, q)] += 1;
            }
            if let Some(lp) = &mut self.lp {
                let m = self.state.middle[t] as usize;
                let k = self.layout.triples[t].iter().position(|&v| v == m).unwrap();
                let v = lp.slack(np, 3 * t + k);
                lp.assert_upper(v, Rational::zero());
            }
        }
    }

    fn tally(&mut self, c: &Conflict) {
        match c.kind {
            ConflictKind::NonHyperedge { .. } => self.stats.conflicts.non_hyperedge += 1,
            ConflictKind::Clash { .. } => self.stats.conflicts.middle_clash += 1,
        }
    }

    fn assign(&mut self, a: usize, m: usize, b: usize) -> std::result::Result<(), Conflict> {
        let from = self.state.trail.len();
        self.state.force(self.layout, a, m, b, [a, m, b, m])?;
        self.close(from)
    }

    fn branch_triple(&self) -> Option<usize> {
        let mut best: Option<(u32, usize)> = None;
        for (t, &in_h) in self.state.in_h.iter().enumerate() {
            if !in_h || self.state.middle[t] != NONE {
                continue;
            }
            let [a, b, c] = self.layout.triples[t];
            let l = self.layout;
            let score = self.pair_load[l.pid(a, b)] + self.pair_load[l.pid(a, c)] + self.pair_load[l.pid(b, c)];
            if best.map_or(true, |(s, _)| score > s) {
                best = Some((score, t));
            }
        }
        best.map(|(_, t)| t)
    }

    fn relaxation_ok(&mut self) -> bool {
        let Some(k) = self.opts.prune_every else { return true };
        if self.decisions % k.max(1) != 0 {
            return true;
        }
        let lp = self.lp.as_mut().expect("lp exists when pruning");
        let before = lp.pivots();
        let ok = lp.check() == Status::Feasible;
        self.stats.pivots += lp.pivots() - before;
        if !ok {
            self.stats.conflicts.relaxation += 1;
        }
        ok
    }

    fn dfs(&mut self) -> Option<MetricSpace> {
        self.stats.nodes += 1;
        if !self.relaxation_ok() {
            return None;
        }
        let Some(t) = self.branch_triple() else {
            return self.leaf();
        };
        for m in self.layout.triples[t] {
            let [x, y, z] = self.layout.triples[t];
            let ends: Vec<usize> = [x, y, z].into_iter().filter(|&v| v != m).collect();
            let mark = self.push();
            self.decisions += 1;
            match self.assign(ends[0], m, ends[1]) {
                Ok(()) => {
                    if let Some(w) = self.dfs() {
                        return Some(w);
                    }
                }
                Err(c) => self.tally(&c),
            }
            self.decisions -= 1;
            self.pop(mark);
        }
        None
    }

    fn leaf(&mut self) -> Option<MetricSpace> {
        self.stats.leaves += 1;
        let a = self.state.to_assignment(self.layout);
        let sys = build_feasibility_system(self.h, &a).expect("leaf assignment is total");
        match solve_exact_feasibility(&sys) {
            Some(values) => {
                let m = sys.realize(&values).expect("feasible system yields a metric");
                assert_eq!(&hypergraph_of(&m), self.h, "witness does not realize the input hypergraph");
                Some(m)
            }
            None => {
                self.stats.leaves_infeasible += 1;
                None
            }
        }
    }

    /// Applies a task prefix and explores below it; leaves the state as found.
    fn run_task(&mut self, task: &Task) -> Option<MetricSpace> {
        let mark = self.push();
        let mut result = None;
        let applied = match task {
            Task::Root => Ok(()),
            Task::Order(order) => {
                self.stats.core_orders += 1;
                self.apply_order(order)
            }
        };
        match applied {
            Ok(()) => result = self.dfs(),
            Err(c) => {
                self.stats.nodes += 1;
                self.tally(&c);
            }
        }
        self.pop(mark);
        result
    }

    fn apply_order(&mut self, order: &[usize]) -> std::result::Result<(), Conflict> {
        let from = self.state.trail.len();
        for i in 0..order.len() {
            for j in i + 1..order.len() {
                for k in j + 1..order.len() {
                    if let Err(c) = self.state.force(self.layout, order[i], order[j], order[k], [order[i], order[j], order[k], order[j]]) {
                        self.mirror(from);
                        return Err(c);
                    }
                }
            }
        }
        self.close(from)
    }
}

enum Task {
    Root,
    Order(Vec<usize>),
}

/// Linear orders of `core` in lexicographic order, one of each reversed pair.
fn core_orders(core: &[usize]) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut current = Vec::with_capacity(core.len());
    let mut used = vec![false; core.len()];
    fn rec(core: &[usize], current: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
        if current.len() == core.len() {
            if current.first() < current.last() {
                out.push(current.clone());
            }
            return;
        }
        for i in 0..core.len() {
            if !used[i] {
                used[i] = true;
                current.push(core[i]);
                rec(core, current, used, out);
                current.pop();
                used[i] = false;
            }
        }
    }
    rec(core, &mut current, &mut used, &mut out);
    out
}

/// Decides whether `h` is the collinearity hypergraph of some metric space.
pub fn decide_metric(h: &Hypergraph3, opts: &DecideOptions) -> Result<Verdict> {
    if h.n() < 2 {
        return Err(Error::OutOfRange(format!("decide_metric needs at least 2 vertices, got {}", h.n())));
    }
    let layout = Layout::new(h.n());
    let mut root = Search::new(h, &layout, opts);
    let core = match opts.core_order_min {
        Some(min) => {
            let c = complete_core(h);
            if c.len() >= min.max(3) {
                c
            } else {
                Vec::new()
            }
        }
        None => Vec::new(),
    };
    let tasks: Vec<Task> = if core.is_empty() {
        vec![Task::Root]
    } else {
        core_orders(&core).into_iter().map(Task::Order).collect()
    };

    let mut stats = SearchStats { core_size: core.len(), ..Default::default() };
    let mut found: Option<MetricSpace> = None;
    if opts.threads <= 1 || tasks.len() == 1 {
        for task in &tasks {
            if let Some(w) = root.run_task(task) {
                found = Some(w);
                break;
            }
        }
        stats.merge(&root.stats);
    } else {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(opts.threads)
            .build()
            .map_err(|e| Error::OutOfRange(format!("thread pool: {e}")))?;
        let first_hit = AtomicUsize::new(usize::MAX);
        let results: Vec<(Option<MetricSpace>, SearchStats)> = pool.install(|| {
            tasks
                .par_iter()
                .enumerate()
                .map_init(
                    || root.clone(),
                    |search, (i, task)| {
                        if i > first_hit.load(Ordering::Relaxed) {
                            return (None, SearchStats::default());
                        }
                        search.stats = SearchStats::default();
                        let w = search.run_task(task);
                        if w.is_some() {
                            first_hit.fetch_min(i, Ordering::Relaxed);
                        }
                        (w, std::mem::take(&mut search.stats))
                    },
                )
                .collect()
        });
        for (w, s) in results {
            stats.merge(&s);
            if found.is_none() {
                found = w;
            }
        }
    }
    Ok(match found {
        Some(witness) => Verdict::Metric { witness, stats },
        None => Verdict::NonMetric { stats },
    })
}

/// Tries every total middle assignment in lexicographic order with no
/// closure and no pruning; each leaf is solved exactly.
pub fn decide_metric_naive(h: &Hypergraph3) -> Result<Verdict> {
    if h.n() < 2 {
        return Err(Error::OutOfRange(format!("decide_metric needs at least 2 vertices, got {}", h.n())));
    }
    let edges: Vec<[usize; 3]> = h.triples().iter().copied().collect();
    let mut choice = vec![0usize; edges.len()];
    let mut stats = SearchStats::default();
    loop {
        stats.nodes += 1;
        stats.leaves += 1;
        let mut a = super::closure::OrientationAssignment::new();
        for (t, &k) in edges.iter().zip(&choice) {
            let m = t[k];
            let ends: Vec<usize> = t.iter().copied().filter(|&v| v != m).collect();
            a.set(ends[0], m, ends[1]);
        }
        let sys = build_feasibility_system(h, &a)?;
        if let Some(values) = solve_exact_feasibility(&sys) {
            let witness = sys.realize(&values)?;
            assert_eq!(&hypergraph_of(&witness), h, "witness does not realize the input hypergraph");
            return Ok(Verdict::Metric { witness, stats });
        }
        stats.leaves_infeasible += 1;
        // odometer, last hyperedge fastest
        let mut i = edges.len();
        loop {
            if i == 0 {
                return Ok(Verdict::NonMetric { stats });
            }
            i -= 1;
            choice[i] += 1;
            if choice[i] < 3 {
                break;
            }
            choice[i] = 0;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hypergraph::{based_hypergraph, Graph};

    #[test]
    fn core_orders_skip_reversals() {
        assert_eq!(core_orders(&[0, 1, 2]).len(), 3);
        assert_eq!(core_orders(&[0, 1, 2, 3, 4]).len(), 60);
    }

    #[test]
    fn complete_core_of_based_cycle() {
        let h = based_hypergraph(&Graph::cycle(6).unwrap());
        assert_eq!(complete_core(&h), vec![0, 1, 2, 3, 4, 5]);
        let h = based_hypergraph(&Graph::complete(3));
        assert_eq!(complete_core(&h), vec![0, 1, 2, 3]);
    }

    #[test]
    fn tiny_cases() {
        let opts = DecideOptions::default();
        assert!(decide_metric(&Hypergraph3::complete(3), &opts).unwrap().is_metric());
        assert!(decide_metric(&Hypergraph3::empty(2), &opts).unwrap().is_metric());
        assert!(decide_metric(&Hypergraph3::empty(1), &opts).is_err());
        // every triple of K4 collinear is fine (points on a line)
        assert!(decide_metric(&Hypergraph3::complete(4), &opts).unwrap().is_metric());
    }

    #[test]
    fn three_of_four_triples_is_not_metric() {
        let h = Hypergraph3::new(4, [[0, 1, 2], [0, 1, 3], [0, 2, 3]]).unwrap();
        let fast = decide_metric(&h, &DecideOptions::default()).unwrap();
        let naive = decide_metric_naive(&h).unwrap();
        assert_eq!(fast.is_metric(), naive.is_metric());
    }
}

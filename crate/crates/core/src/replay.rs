//! A fixed manifest of claims about metric hypergraphs, each replayed by
//! running the library on the instances involved.
//!
//! Claims are grouped into numbered acceptance criteria. Every case count,
//! seed and time budget a claim depends on is a constant below.

use std::collections::{BTreeMap, BTreeSet};
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::constructions::{c4_based_metric, odd_cycle_metric, p5bar_minus_a_metric, path_based_metric, APEX};
use crate::error::{Error, Result};
use crate::hypergraph::{all_triples, based_hypergraph, graph_equivalence, Graph, Hypergraph3};
use crate::metric::{betweenness_triples, check_meq, hypergraph_of, line_partition, BetweennessTriple, MetricSpace};
use crate::obstacles::{all_triples_collinear, certify_obstacle, verify_cycle_obstacle_minimality};
use crate::recognizer::{
    canonical_form, decide_metric, decide_metric_naive, enumerate_minimal_nonmetric, DecideOptions, Verdict,
};
use crate::rules::{apex_classification, check_apex_implications, check_menger, recover_linear_order};
use crate::sample::{random_hypergraph, random_line, random_line_with_apex, random_metric};

/// Random cases per property suite.
pub const PROPERTY_CASES: usize = 1000;
/// Random 5-vertex hypergraphs compared against the naive decider.
pub const ORACLE_SAMPLE: usize = 200;
pub const DEFAULT_SEED: u64 = 20_240_917;

pub const ODD_CYCLES_BUDGET: Duration = Duration::from_secs(60);
pub const C6_BUDGET: Duration = Duration::from_secs(120);
pub const C8_BUDGET: Duration = Duration::from_secs(900);
pub const ENUMERATION_BUDGET: Duration = Duration::from_secs(600);

/// Inputs shared by all claims.
#[derive(Debug, Clone)]
pub struct ReplayContext {
    pub opts: DecideOptions,
    pub seed: u64,
    pub cases: usize,
    pub oracle_sample: usize,
    c4_chart: Option<MetricSpace>,
}

impl Default for ReplayContext {
    fn default() -> Self {
        ReplayContext {
            opts: DecideOptions::default(),
            seed: DEFAULT_SEED,
            cases: PROPERTY_CASES,
            oracle_sample: ORACLE_SAMPLE,
            c4_chart: None,
        }
    }
}

impl ReplayContext {
    /// Replaces the 4-cycle chart used by the chart claims. Negative control
    /// for the harness; nothing else reads it.
    #[doc(hidden)]
    pub fn with_c4_chart(mut self, m: MetricSpace) -> Self {
        self.c4_chart = Some(m);
        self
    }

    fn c4_chart(&self) -> Result<MetricSpace> {
        match &self.c4_chart {
            Some(m) => Ok(m.clone()),
            None => c4_based_metric(),
        }
    }

    fn rng(&self, salt: u64) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(self.seed ^ salt.wrapping_mul(0x9e37_79b9_7f4a_7c15))
    }
}

pub struct Claim {
    pub id: &'static str,
    pub criterion: u8,
    pub statement: &'static str,
    pub budget: Option<Duration>,
    check: fn(&ReplayContext) -> Result<Outcome>,
}

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Result<Outcome> {
    Ok(Outcome { pass, detail: detail.into() })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClaimResult {
    pub id: String,
    pub criterion: u8,
    pub statement: String,
    pub pass: bool,
    pub detail: String,
    pub elapsed_ms: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReplayReport {
    pub results: Vec<ClaimResult>,
}

impl ReplayReport {
    pub fn passed(&self) -> bool {
        self.results.iter().all(|r| r.pass)
    }

    /// Per criterion: whether all its claims passed, and the claims.
    pub fn by_criterion(&self) -> BTreeMap<u8, (bool, Vec<&ClaimResult>)> {
        let mut out: BTreeMap<u8, (bool, Vec<&ClaimResult>)> = BTreeMap::new();
        for r in &self.results {
            let e = out.entry(r.criterion).or_insert((true, Vec::new()));
            e.0 &= r.pass;
            e.1.push(r);
        }
        out
    }
}

pub fn manifest() -> &'static [Claim] {
    MANIFEST
}

/// Runs every claim, or only the one with id `only`. A claim whose check
/// errors or overruns its budget fails.
pub fn run_replay(ctx: &ReplayContext, only: Option<&str>) -> Result<ReplayReport> {
    let claims: Vec<&Claim> = MANIFEST.iter().filter(|c| only.map_or(true, |id| c.id == id)).collect();
    if claims.is_empty() {
        return Err(Error::OutOfRange(format!("no claim with id {:?}", only.unwrap_or(""))));
    }
    let results = claims.into_iter().map(|c| run_claim(c, ctx)).collect();
    Ok(ReplayReport { results })
}

fn run_claim(c: &Claim, ctx: &ReplayContext) -> ClaimResult {
    let start = Instant::now();
    let res = (c.check)(ctx);
    let elapsed = start.elapsed();
    let (mut pass, mut detail) = match res {
        Ok(o) => (o.pass, o.detail),
        Err(e) => (false, format!("error: {e}")),
    };
    if let Some(b) = c.budget {
        if elapsed > b {
            pass = false;
            detail = format!("{detail}; over the {}s budget", b.as_secs());
        }
    }
    ClaimResult {
        id: c.id.to_string(),
        criterion: c.criterion,
        statement: c.statement.to_string(),
        pass,
        detail,
        elapsed_ms: elapsed.as_millis() as u64,
    }
}

static MANIFEST: &[Claim] = &[
    Claim {
        id: "odd-cycle-construction",
        criterion: 1,
        statement: "the explicit odd-cycle space realizes the hypergraph based on C_{2s+1}, s = 1..5",
        budget: None,
        check: odd_cycle_construction,
    },
    Claim {
        id: "odd-cycles-metric",
        criterion: 1,
        statement: "hypergraphs based on C3, C5, C7 are metric",
        budget: Some(ODD_CYCLES_BUDGET),
        check: odd_cycles_metric,
    },
    Claim {
        id: "c4-chart",
        criterion: 2,
        statement: "the 4-cycle chart realizes based(C4) with exactly the listed betweenness facts",
        budget: None,
        check: c4_chart,
    },
    Claim { id: "c4-decide", criterion: 2, statement: "based(C4) is metric", budget: None, check: c4_decide },
    Claim { id: "even-cycle-c6", criterion: 3, statement: "based(C6) is not metric", budget: Some(C6_BUDGET), check: even_cycle_c6 },
    Claim { id: "even-cycle-c8", criterion: 3, statement: "based(C8) is not metric", budget: Some(C8_BUDGET), check: even_cycle_c8 },
    Claim {
        id: "even-cycle-c6-minimal",
        criterion: 3,
        statement: "based(C6) is minimal non-metric: all 7 vertex deletions are metric",
        budget: None,
        check: even_cycle_c6_minimal,
    },
    Claim { id: "p5bar-nonmetric", criterion: 4, statement: "based(complement of P5) is not metric", budget: None, check: p5bar_nonmetric },
    Claim {
        id: "p5bar-minimal",
        criterion: 4,
        statement: "every vertex deletion of based(complement of P5) is metric",
        budget: None,
        check: p5bar_minimal,
    },
    Claim {
        id: "p5bar-minus-a-chart",
        criterion: 4,
        statement: "the chart on e,b,c,d,x realizes the deletion of a with exactly the listed betweenness facts",
        budget: None,
        check: p5bar_minus_a_chart,
    },
    Claim { id: "obstacle-c6", criterion: 5, statement: "the C6 equivalence is certified as an obstacle", budget: None, check: obstacle_c6 },
    Claim { id: "obstacle-c8", criterion: 5, statement: "the C8 equivalence is certified as an obstacle", budget: None, check: obstacle_c8 },
    Claim {
        id: "obstacle-minimal",
        criterion: 5,
        statement: "every one-vertex deletion of the C6 and C8 equivalences is realized with lines U+x and U",
        budget: None,
        check: obstacle_minimal,
    },
    Claim {
        id: "two-class-collinear",
        criterion: 5,
        statement: "spaces realizing a two-class equivalence on V have every triple of V collinear",
        budget: None,
        check: two_class_collinear,
    },
    Claim {
        id: "obstacle-c4-control",
        criterion: 5,
        statement: "the C4 equivalence gets no certificate and the chart realizes it",
        budget: None,
        check: obstacle_c4_control,
    },
    Claim {
        id: "oracle-n4",
        criterion: 6,
        statement: "the decider agrees with naive enumeration on every hypergraph on 4 vertices",
        budget: None,
        check: oracle_n4,
    },
    Claim {
        id: "oracle-n5-sample",
        criterion: 6,
        statement: "the decider agrees with naive enumeration on random hypergraphs on 5 vertices",
        budget: None,
        check: oracle_n5_sample,
    },
    Claim {
        id: "menger-random",
        criterion: 7,
        statement: "[abd], [bcd] => [abc], [acd] and unique middles in random metric spaces",
        budget: None,
        check: menger_random,
    },
    Claim {
        id: "apex-rules-random",
        criterion: 7,
        statement: "the apex-pair implications and their ordered forms hold for random linear cores with an apex",
        budget: None,
        check: apex_rules_random,
    },
    Claim {
        id: "linear-order-random",
        criterion: 7,
        statement: "linear order recovery succeeds on random collinear sets of 5 or more points",
        budget: None,
        check: linear_order_random,
    },
    Claim {
        id: "witness-reverify",
        criterion: 7,
        statement: "collinearity hypergraphs of random spaces are decided metric with a re-verified witness",
        budget: None,
        check: witness_reverify,
    },
    Claim {
        id: "triangle-free-apex-pairs",
        criterion: 8,
        statement: "for triangle-free G in P4, P5, C5, C7 apex pairs are consecutive or the extreme pair",
        budget: None,
        check: triangle_free_apex_pairs,
    },
    Claim { id: "enumerate-n3", criterion: 9, statement: "no minimal non-metric hypergraph on 3 vertices", budget: None, check: enumerate_n3 },
    Claim {
        id: "enumerate-n6-p5bar",
        criterion: 9,
        statement: "enumeration on 6 vertices finds based(complement of P5)",
        budget: Some(ENUMERATION_BUDGET),
        check: enumerate_n6_p5bar,
    },
];

fn reverified(h: &Hypergraph3, v: &Verdict) -> bool {
    v.witness().map_or(true, |w| &hypergraph_of(w) == h)
}

fn decide(h: &Hypergraph3, ctx: &ReplayContext) -> Result<Verdict> {
    decide_metric(h, &ctx.opts)
}

fn p5bar() -> Graph {
    Graph::path(5).complement()
}

fn facts(list: &[&str]) -> BTreeSet<BetweennessTriple> {
    list.iter()
        .map(|s| {
            let c: Vec<String> = s.chars().map(String::from).collect();
            BetweennessTriple::new(c[0].clone(), c[1].clone(), c[2].clone())
        })
        .collect()
}

fn has_support(m: &MetricSpace, labels: [&str; 3]) -> Result<bool> {
    let t = [m.index_of(labels[0])?, m.index_of(labels[1])?, m.index_of(labels[2])?];
    Ok(m.middle_of(crate::hypergraph::sorted_triple(t[0], t[1], t[2])).is_some())
}

fn odd_cycle_construction(_: &ReplayContext) -> Result<Outcome> {
    for s in 1..=5 {
        let m = odd_cycle_metric(s)?;
        if hypergraph_of(&m) != based_hypergraph(&Graph::cycle(2 * s + 1)?) {
            return outcome(false, format!("s={s}: hypergraph differs"));
        }
    }
    let m = odd_cycle_metric(2)?;
    let apex: Vec<String> = (0..5).map(|k| m.dist("x", &k.to_string()).map(|d| d.to_string())).collect::<Result<_>>()?;
    outcome(apex == ["2", "3", "2", "3", "2"], format!("s=1..5 match; apex row at s=2 is {apex:?}"))
}

fn odd_cycles_metric(ctx: &ReplayContext) -> Result<Outcome> {
    let mut notes = Vec::new();
    for n in [3, 5, 7] {
        let h = based_hypergraph(&Graph::cycle(n)?);
        let v = decide(&h, ctx)?;
        if !v.is_metric() || !reverified(&h, &v) {
            return outcome(false, format!("C{n}: not realized"));
        }
        notes.push(format!("C{n} metric ({} nodes)", v.stats().nodes));
    }
    outcome(true, notes.join(", "))
}

const C4_PRESENT: [&str; 8] = ["abc", "bcd", "cda", "dab", "xab", "xad", "xcb", "xcd"];
const P5BAR_MINUS_A_PRESENT: [&str; 8] = ["ebc", "ebd", "ecd", "bcd", "xeb", "xec", "xdc", "xbc"];

fn c4_chart(ctx: &ReplayContext) -> Result<Outcome> {
    let m = ctx.c4_chart()?;
    let hyper = hypergraph_of(&m) == based_hypergraph(&Graph::cycle(4)?);
    let got = betweenness_triples(&m);
    let exact = got == facts(&C4_PRESENT);
    let absent = !has_support(&m, ["x", "a", "c"])? && !has_support(&m, ["x", "b", "d"])?;
    outcome(
        hyper && exact && absent,
        format!("hypergraph match: {hyper}; listed facts exact: {exact} ({} found); xac/xbd absent: {absent}", got.len()),
    )
}

fn c4_decide(ctx: &ReplayContext) -> Result<Outcome> {
    let h = based_hypergraph(&Graph::cycle(4)?);
    let v = decide(&h, ctx)?;
    outcome(v.is_metric() && reverified(&h, &v), format!("metric: {}", v.is_metric()))
}

fn nonmetric(g: &Graph, ctx: &ReplayContext) -> Result<Outcome> {
    let v = decide(&based_hypergraph(g), ctx)?;
    let s = v.stats();
    outcome(
        !v.is_metric(),
        format!("nonmetric: {}; {} nodes, {} core orders, {} leaves", !v.is_metric(), s.nodes, s.core_orders, s.leaves),
    )
}

fn even_cycle_c6(ctx: &ReplayContext) -> Result<Outcome> {
    nonmetric(&Graph::cycle(6)?, ctx)
}

fn even_cycle_c8(ctx: &ReplayContext) -> Result<Outcome> {
    nonmetric(&Graph::cycle(8)?, ctx)
}

/// Metric verdicts (re-verified) for every one-vertex deletion.
fn deletions_metric(h: &Hypergraph3, ctx: &ReplayContext) -> Result<(usize, usize)> {
    let mut ok = 0;
    for v in 0..h.n() {
        let d = h.delete_vertex(v);
        let verdict = decide(&d, ctx)?;
        if verdict.is_metric() && reverified(&d, &verdict) {
            ok += 1;
        }
    }
    Ok((ok, h.n()))
}

fn even_cycle_c6_minimal(ctx: &ReplayContext) -> Result<Outcome> {
    let h = based_hypergraph(&Graph::cycle(6)?);
    let whole = !decide(&h, ctx)?.is_metric();
    let (ok, total) = deletions_metric(&h, ctx)?;
    outcome(whole && ok == total && total == 7, format!("nonmetric: {whole}; metric deletions {ok}/{total}"))
}

fn p5bar_nonmetric(ctx: &ReplayContext) -> Result<Outcome> {
    nonmetric(&p5bar(), ctx)
}

fn p5bar_minimal(ctx: &ReplayContext) -> Result<Outcome> {
    let h = based_hypergraph(&p5bar());
    let (ok, total) = deletions_metric(&h, ctx)?;
    outcome(ok == total, format!("metric deletions {ok}/{total} (five graph vertices and the apex)"))
}

fn p5bar_minus_a_chart(_: &ReplayContext) -> Result<Outcome> {
    // a..e as 0..4 with edges ab, bc, cd, da, eb, ec
    let labeled = Graph::new(5, [(0, 1), (1, 2), (2, 3), (3, 0), (4, 1), (4, 2)])?;
    let iso = labeled.is_isomorphic(&p5bar());
    let minus_a = labeled.induced(&[4, 1, 2, 3]);
    let m = p5bar_minus_a_metric()?;
    let hyper = hypergraph_of(&m) == based_hypergraph(&minus_a);
    let exact = betweenness_triples(&m) == facts(&P5BAR_MINUS_A_PRESENT);
    let absent = !has_support(&m, ["x", "e", "d"])? && !has_support(&m, ["x", "b", "d"])?;
    outcome(
        iso && hyper && exact && absent,
        format!("labeling is the complement of P5: {iso}; hypergraph match: {hyper}; listed facts exact: {exact}; xed/xbd absent: {absent}"),
    )
}

fn obstacle(n: usize, ctx: &ReplayContext, reverify: bool) -> Result<Outcome> {
    let g = Graph::cycle(n)?;
    match certify_obstacle(&g, &ctx.opts)? {
        Some(cert) => {
            let sound = !cert.graph_verdict.is_metric() && !cert.complement_verdict.is_metric();
            let rerun = if reverify { Some(cert.verify(&ctx.opts)?) } else { None };
            let note = rerun.map_or("not rerun".to_string(), |r| format!("rerun agrees: {r}"));
            outcome(sound && rerun != Some(false), format!("certificate issued; both verdicts nonmetric: {sound}; {note}"))
        }
        None => outcome(false, "no certificate"),
    }
}

fn obstacle_c6(ctx: &ReplayContext) -> Result<Outcome> {
    obstacle(6, ctx, true)
}

fn obstacle_c8(ctx: &ReplayContext) -> Result<Outcome> {
    obstacle(8, ctx, false)
}

fn obstacle_minimal(_: &ReplayContext) -> Result<Outcome> {
    let six = verify_cycle_obstacle_minimality(6)?;
    let eight = verify_cycle_obstacle_minimality(8)?;
    outcome(six && eight, format!("C6: {six}; C8: {eight}"))
}

fn two_class_collinear(ctx: &ReplayContext) -> Result<Outcome> {
    let mut cases: Vec<(String, MetricSpace, Vec<String>)> =
        vec![("C4 chart".into(), ctx.c4_chart()?, ["a", "b", "c", "d"].map(String::from).to_vec())];
    for k in [3, 5, 7] {
        cases.push((format!("path {k}"), path_based_metric(k)?, (0..k).map(|i| i.to_string()).collect()));
    }
    for (name, m, v) in &cases {
        let classes = line_partition(m, v)?.classes().len();
        if classes != 2 || !all_triples_collinear(m, v)? {
            return outcome(false, format!("{name}: {classes} line classes, collinear: {}", all_triples_collinear(m, v)?));
        }
    }
    outcome(true, format!("{} two-class witnesses, all triples collinear", cases.len()))
}

fn obstacle_c4_control(ctx: &ReplayContext) -> Result<Outcome> {
    let g = Graph::cycle(4)?;
    let none = certify_obstacle(&g, &ctx.opts)?.is_none();
    let v: Vec<String> = ["a", "b", "c", "d"].map(String::from).to_vec();
    let realized = check_meq(&ctx.c4_chart()?, &v, &graph_equivalence(&g))?;
    outcome(none && realized, format!("no certificate: {none}; chart realizes the equivalence: {realized}"))
}

fn agree(h: &Hypergraph3, ctx: &ReplayContext) -> Result<bool> {
    let fast = decide(h, ctx)?;
    let naive = decide_metric_naive(h)?;
    Ok(fast.is_metric() == naive.is_metric() && reverified(h, &fast) && reverified(h, &naive))
}

fn oracle_n4(ctx: &ReplayContext) -> Result<Outcome> {
    let triples: Vec<_> = all_triples(4).collect();
    let mut metric = 0;
    for mask in 0u32..1 << triples.len() {
        let h = Hypergraph3::new(4, triples.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, t)| *t))?;
        if !agree(&h, ctx)? {
            return outcome(false, format!("disagreement on {:?}", h.triples()));
        }
        metric += decide(&h, ctx)?.is_metric() as usize;
    }
    outcome(true, format!("16 hypergraphs agree, {metric} metric"))
}

fn oracle_n5_sample(ctx: &ReplayContext) -> Result<Outcome> {
    let mut rng = ctx.rng(5);
    for i in 0..ctx.oracle_sample {
        let h = random_hypergraph(&mut rng, 5);
        if !agree(&h, ctx)? {
            return outcome(false, format!("case {i}: disagreement on {:?}", h.triples()));
        }
    }
    outcome(true, format!("{} random cases agree", ctx.oracle_sample))
}

fn menger_random(ctx: &ReplayContext) -> Result<Outcome> {
    let mut rng = ctx.rng(7);
    let mut facts = 0;
    for i in 0..ctx.cases {
        let n = rng.gen_range(3..=7);
        let max = rng.gen_range(1..=4);
        let m = random_metric(&mut rng, n, max);
        let between = m.betweenness();
        let supports: BTreeSet<_> = between.iter().map(|b| b.support()).collect();
        if supports.len() != between.len() {
            return outcome(false, format!("case {i}: a triple with two middles"));
        }
        let v = check_menger(&m);
        if !v.is_empty() {
            return outcome(false, format!("case {i}: {} violations, first {:?}", v.len(), v[0]));
        }
        facts += between.len();
    }
    outcome(true, format!("{} spaces, {facts} betweenness facts, no violations", ctx.cases))
}

fn apex_rules_random(ctx: &ReplayContext) -> Result<Outcome> {
    let mut rng = ctx.rng(3);
    let (mut d1, mut d2, mut d3) = (0, 0, 0);
    for i in 0..ctx.cases {
        let n = rng.gen_range(3..=7);
        let m = random_line_with_apex(&mut rng, n);
        let order: Vec<String> = (0..n).map(|k| k.to_string()).collect();
        let c = apex_classification(&m, &order, APEX)?;
        let v = check_apex_implications(&c);
        if !v.is_empty() {
            return outcome(false, format!("case {i}: {}", v[0]));
        }
        d1 += c.d1.len();
        d2 += c.d2.len();
        d3 += c.d3.len();
    }
    outcome(true, format!("{} spaces; pairs seen in D1/D2/D3: {d1}/{d2}/{d3}", ctx.cases))
}

fn linear_order_random(ctx: &ReplayContext) -> Result<Outcome> {
    let mut rng = ctx.rng(2);
    for i in 0..ctx.cases {
        let n = rng.gen_range(5..=9);
        let (m, sorted) = random_line(&mut rng, n, 3 * n as i64);
        let got = recover_linear_order(&m, m.points())?;
        let reversed: Vec<String> = sorted.iter().rev().cloned().collect();
        if got.as_ref() != Some(&sorted) && got.as_ref() != Some(&reversed) {
            return outcome(false, format!("case {i}: got {got:?}, want {sorted:?}"));
        }
    }
    outcome(true, format!("{} configurations recovered", ctx.cases))
}

fn witness_reverify(ctx: &ReplayContext) -> Result<Outcome> {
    let mut rng = ctx.rng(11);
    let mut nodes = 0;
    for i in 0..ctx.cases {
        let n = rng.gen_range(3..=6);
        let max = rng.gen_range(1..=3);
        let h = hypergraph_of(&random_metric(&mut rng, n, max));
        let v = decide(&h, ctx)?;
        if !v.is_metric() || !reverified(&h, &v) {
            return outcome(false, format!("case {i}: {:?} not realized", h.triples()));
        }
        nodes += v.stats().nodes;
    }
    outcome(true, format!("{} hypergraphs realized and re-verified ({nodes} nodes)", ctx.cases))
}

fn triangle_free_apex_pairs(ctx: &ReplayContext) -> Result<Outcome> {
    let graphs = [("P4", Graph::path(4)), ("P5", Graph::path(5)), ("C5", Graph::cycle(5)?), ("C7", Graph::cycle(7)?)];
    // Cores of four points may be realized cyclically; ask for linear ones.
    let opts = DecideOptions { core_order_min: Some(3), ..ctx.opts.clone() };
    let mut notes = Vec::new();
    for (name, g) in graphs {
        let n = g.n();
        let h = based_hypergraph(&g);
        let v = decide_metric(&h, &opts)?;
        let Some(w) = v.witness() else {
            return outcome(false, format!("{name}: no realization"));
        };
        let core: Vec<String> = (0..n).map(|i| i.to_string()).collect();
        let apex = n.to_string();
        let Some(order) = recover_linear_order(w, &core)? else {
            return outcome(false, format!("{name}: no linear order on the core"));
        };
        let c = apex_classification(w, &order, &apex)?;
        let consecutive = c.d1.iter().chain(&c.d3).all(|&(j, l)| l == j + 1);
        let extreme = c.d2.iter().all(|&p| p == (0, n - 1));
        let rules = check_apex_implications(&c).is_empty();
        let edges: BTreeSet<[usize; 2]> = c
            .d1
            .iter()
            .chain(&c.d2)
            .chain(&c.d3)
            .map(|&(j, l)| {
                let (a, b) = (order[j].parse::<usize>().unwrap(), order[l].parse::<usize>().unwrap());
                [a.min(b), a.max(b)]
            })
            .collect();
        let same_edges = &edges == g.edges();
        let mut ok = consecutive && extreme && rules && same_edges;
        if name.starts_with('C') {
            // consecutive pairs alternate between D1 and D3
            let alternate = (0..n - 1).all(|j| c.d1.contains(&(j, j + 1)) == (j % 2 == 0))
                || (0..n - 1).all(|j| c.d3.contains(&(j, j + 1)) == (j % 2 == 0));
            ok &= alternate;
        }
        if !ok {
            return outcome(false, format!("{name}: D1={:?} D2={:?} D3={:?}", c.d1, c.d2, c.d3));
        }
        notes.push(format!("{name}: D2={:?}", c.d2));
    }
    outcome(true, notes.join("; "))
}

fn enumerate_n3(ctx: &ReplayContext) -> Result<Outcome> {
    let e = enumerate_minimal_nonmetric(3, ENUMERATION_BUDGET, &ctx.opts)?;
    outcome(e.found.is_empty() && !e.truncated, format!("{} classes, {} found", e.classes, e.found.len()))
}

fn enumerate_n6_p5bar(ctx: &ReplayContext) -> Result<Outcome> {
    let e = enumerate_minimal_nonmetric(6, ENUMERATION_BUDGET, &ctx.opts)?;
    let target = canonical_form(&based_hypergraph(&p5bar()))?;
    let mut hit = false;
    for h in &e.found {
        if canonical_form(h)? == target {
            hit = true;
            break;
        }
    }
    outcome(
        hit && !e.truncated,
        format!("{} classes, {} minimal non-metric, complement-of-P5 hypergraph found: {hit}", e.classes, e.found.len()),
    )
}

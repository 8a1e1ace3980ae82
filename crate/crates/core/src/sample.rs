//! Seeded random instances for property checks.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::hypergraph::{all_triples, Hypergraph3};
use crate::metric::{validate_metric, MetricSpace};
use crate::rational::Rational;

fn labels(n: usize) -> Vec<String> {
    (0..n).map(|i| i.to_string()).collect()
}

/// Shortest-path metric of a random graph on `n` vertices whose edges weigh
/// `k/2` for `k` in `2..=2 * max`. Each pair is an edge with probability one
/// half; other pairs get a weight no path exceeds, so they end up at their
/// shortest-path distance or stay far apart. Many triangles come out tight.
pub fn random_metric<R: Rng>(rng: &mut R, n: usize, max: i64) -> MetricSpace {
    let half = Rational::new(1, 2);
    let far = Rational::from_integer(max * n as i64);
    let mut d = vec![vec![Rational::zero(); n]; n];
    for i in 0..n {
        for j in i + 1..n {
            let w = if rng.gen_bool(0.5) {
                &Rational::from_integer(rng.gen_range(2..=2 * max)) * &half
            } else {
                far.clone()
            };
            d[i][j] = w.clone();
            d[j][i] = w;
        }
    }
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                let via = &d[i][k] + &d[k][j];
                if via < d[i][j] {
                    d[i][j] = via;
                }
            }
        }
    }
    validate_metric(labels(n), d).expect("shortest-path distances form a metric")
}

/// `n` distinct points on a line at random integer positions, labeled in a
/// random order. Returns the space and the labels sorted by position.
pub fn random_line<R: Rng>(rng: &mut R, n: usize, span: i64) -> (MetricSpace, Vec<String>) {
    let mut pos: Vec<i64> = (0..span.max(n as i64)).collect();
    pos.shuffle(rng);
    pos.truncate(n);
    let d = pos.iter().map(|a| pos.iter().map(|b| Rational::from_integer((a - b).abs())).collect()).collect();
    let m = validate_metric(labels(n), d).expect("points on a line");
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&i| pos[i]);
    (m, order.into_iter().map(|i| i.to_string()).collect())
}

/// Points `0..n` on a line (labels in line order) plus an apex `"x"` whose
/// distances change by at most the gap between neighbours, so they often
/// make apex triples tight. Retries until the triangle inequality holds.
pub fn random_line_with_apex<R: Rng>(rng: &mut R, n: usize) -> MetricSpace {
    loop {
        let mut pos = vec![0i64];
        for _ in 1..n {
            let gap = rng.gen_range(1..=3);
            pos.push(pos.last().unwrap() + gap);
        }
        let span = pos[n - 1];
        let mut apex = vec![rng.gen_range(1..=span.max(1) + 2)];
        for i in 1..n {
            let gap = pos[i] - pos[i - 1];
            let step = *[-gap, gap, rng.gen_range(-gap..=gap)].choose(rng).unwrap();
            apex.push(apex[i - 1] + step);
        }
        if apex.iter().any(|&a| a < 1) {
            continue;
        }
        let mut d = vec![vec![Rational::zero(); n + 1]; n + 1];
        for i in 0..n {
            for j in 0..n {
                d[i][j] = Rational::from_integer((pos[i] - pos[j]).abs());
            }
            d[i][n] = Rational::from_integer(apex[i]);
            d[n][i] = Rational::from_integer(apex[i]);
        }
        let mut names = labels(n);
        names.push("x".into());
        if let Ok(m) = validate_metric(names, d) {
            return m;
        }
    }
}

/// Each triple of `0..n` independently with probability one half.
pub fn random_hypergraph<R: Rng>(rng: &mut R, n: usize) -> Hypergraph3 {
    let triples: Vec<_> = all_triples(n).filter(|_| rng.gen_bool(0.5)).collect();
    Hypergraph3::new(n, triples).expect("triples of 0..n")
}

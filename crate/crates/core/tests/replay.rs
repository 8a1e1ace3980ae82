use geodesic::replay::{manifest, run_replay, ReplayContext};
use geodesic::{validate_metric, Rational};

#[test]
fn corrupted_chart_is_flagged() {
    // d(b,x) lowered from 3 to 2: [xab] and [xcb] stop holding
    let rows = [[0, 1, 2, 1, 2], [1, 0, 1, 2, 2], [2, 1, 0, 1, 2], [1, 2, 1, 0, 3], [2, 2, 2, 3, 0]];
    let m = validate_metric(
        ["a", "b", "c", "d", "x"].map(String::from).to_vec(),
        rows.iter().map(|r| r.iter().map(|&v| Rational::from_integer(v)).collect()).collect(),
    )
    .unwrap();
    let ctx = ReplayContext::default().with_c4_chart(m);
    let chart = run_replay(&ctx, Some("c4-chart")).unwrap();
    assert!(!chart.passed());
    assert!(chart.results[0].detail.contains("listed facts exact: false"));
    assert!(!run_replay(&ctx, Some("obstacle-c4-control")).unwrap().passed());
    assert!(run_replay(&ctx, Some("c4-decide")).unwrap().passed());
}

#[test]
fn reports_are_deterministic_apart_from_timing() {
    let mut ctx = ReplayContext::default();
    ctx.cases = 50;
    ctx.oracle_sample = 10;
    for id in ["menger-random", "apex-rules-random", "witness-reverify", "oracle-n5-sample"] {
        let mut a = run_replay(&ctx, Some(id)).unwrap();
        let mut b = run_replay(&ctx, Some(id)).unwrap();
        a.results[0].elapsed_ms = 0;
        b.results[0].elapsed_ms = 0;
        assert_eq!(a, b);
        assert!(a.passed(), "{:?}", a.results);
    }
}

#[test]
fn manifest_has_every_criterion() {
    let mut criteria: Vec<u8> = manifest().iter().map(|c| c.criterion).collect();
    criteria.dedup();
    assert_eq!(criteria, (1..=9).collect::<Vec<_>>());
}

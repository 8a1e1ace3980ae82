use std::path::Path;
use std::process::{Command, Output};

use geodesic::io::{from_json, read_catalog, write_json};
use geodesic::recognizer::Verdict;
use geodesic::replay::ReplayReport;
use geodesic::{based_hypergraph, hypergraph_of, Graph, MetricSpace};

fn geodesic(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_geodesic")).args(args).env_remove("GEODESIC_THREADS").output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn write<T: serde::Serialize>(dir: &Path, name: &str, value: &T) -> String {
    let p = dir.join(name);
    write_json(&p, value, true).unwrap();
    p.to_str().unwrap().to_string()
}

#[test]
fn analyze_c4_chart() {
    let dir = tempfile::tempdir().unwrap();
    let out = geodesic(&["construct", "c4", "-o", dir.path().join("c4.json").to_str().unwrap()]);
    assert!(out.status.success());
    let out = geodesic(&["analyze", dir.path().join("c4.json").to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("betweenness (8): [a b c] [a d c] [b a d] [b a x] [b c d] [b c x] [d a x] [d c x]"), "{text}");
    assert!(text.contains("L(a,c) = {a,b,c,d}"));
    assert!(text.contains("line classes (6):\n  ab ad bc cd\n  ac bd\n"), "{text}");
}

#[test]
fn analyze_edge_cases() {
    let dir = tempfile::tempdir().unwrap();
    let two = dir.path().join("two.json");
    std::fs::write(&two, r#"{"points":["p","q"],"dist":[["0","1"],["1","0"]]}"#).unwrap();
    let out = geodesic(&["analyze", "--json", two.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["betweenness"], serde_json::json!([]));

    let bad = dir.path().join("asym.json");
    std::fs::write(&bad, "{\"points\":[\"p\",\"q\"],\n\"dist\":[[\"0\",\"1\"],[\"2\",\"0\"]]}").unwrap();
    let out = geodesic(&["analyze", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("d(p,q) != d(q,p)") && err.contains("asym.json"), "{err}");
}

#[test]
fn decide_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let c6 = write(dir.path(), "c6.json", &based_hypergraph(&Graph::cycle(6).unwrap()));
    let out = geodesic(&["decide", &c6]);
    assert_eq!(out.status.code(), Some(10));
    let v: Verdict = from_json(&stdout(&out)).unwrap();
    assert!(!v.is_metric());

    let c5h = based_hypergraph(&Graph::cycle(5).unwrap());
    let c5 = write(dir.path(), "c5.json", &c5h);
    for extra in [&[][..], &["--no-prune"], &["--threads", "2"], &["--naive"]] {
        let mut args = vec!["decide", "--compact", c5.as_str()];
        args.extend_from_slice(extra);
        let out = geodesic(&args);
        assert_eq!(out.status.code(), Some(0), "{extra:?}");
        let v: Verdict = from_json(&stdout(&out)).unwrap();
        assert_eq!(hypergraph_of(v.witness().unwrap()), c5h);
    }

    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, r#"{"n":3,"triples":[[0,1,7]]}"#).unwrap();
    assert_eq!(geodesic(&["decide", bad.to_str().unwrap()]).status.code(), Some(2));
    assert_eq!(geodesic(&["decide", "/nonexistent.json"]).status.code(), Some(2));
}

#[test]
fn threads_from_environment() {
    let dir = tempfile::tempdir().unwrap();
    let c5 = write(dir.path(), "c5.json", &based_hypergraph(&Graph::cycle(5).unwrap()));
    let seq = geodesic(&["decide", &c5]);
    let par = Command::new(env!("CARGO_BIN_EXE_geodesic")).args(["decide", &c5]).env("GEODESIC_THREADS", "3").output().unwrap();
    assert_eq!(par.status.code(), Some(0));
    let (a, b): (Verdict, Verdict) = (from_json(&stdout(&seq)).unwrap(), from_json(&stdout(&par)).unwrap());
    assert_eq!(a.witness(), b.witness());
}

#[test]
fn constructions() {
    let out = geodesic(&["construct", "odd-cycle", "--s", "3"]);
    assert!(out.status.success());
    let m: MetricSpace = from_json(&stdout(&out)).unwrap();
    assert_eq!(m.len(), 8);
    let out = geodesic(&["construct", "path", "--k", "1"]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(geodesic(&["construct", "path"]).status.code(), Some(2));
    let out = geodesic(&["construct", "p5bar-minus-a", "--compact"]);
    assert!(stdout(&out).starts_with(r#"{"points":["e","b","c","d","x"]"#));
}

#[test]
fn obstacles() {
    let dir = tempfile::tempdir().unwrap();
    let c6 = write(dir.path(), "c6.json", &Graph::cycle(6).unwrap());
    let out = geodesic(&["obstacle", &c6]);
    assert_eq!(out.status.code(), Some(0));
    let cert: geodesic::obstacles::ObstacleCertificate = from_json(&stdout(&out)).unwrap();
    assert!(!cert.graph_verdict.is_metric() && !cert.complement_verdict.is_metric());

    let c4 = write(dir.path(), "c4.json", &Graph::cycle(4).unwrap());
    let out = geodesic(&["obstacle", &c4]);
    assert_eq!(out.status.code(), Some(10));
    assert_eq!(stdout(&out).trim(), "undetermined (based(G) is metric)");

    let k3 = write(dir.path(), "k3.json", &Graph::complete(3));
    let out = geodesic(&["obstacle", &k3]);
    assert_eq!(out.status.code(), Some(11));
    assert_eq!(stdout(&out).trim(), "inapplicable (the complement is edgeless)");
}

#[test]
fn enumerate_catalog() {
    let dir = tempfile::tempdir().unwrap();
    let out3 = dir.path().join("n3");
    assert!(geodesic(&["enumerate", "3", "--out", out3.to_str().unwrap()]).status.success());
    let (index, hs) = read_catalog(&out3).unwrap();
    assert_eq!((index.n, index.classes, hs.len(), index.truncated), (3, 2, 0, false));

    let out5 = dir.path().join("n5");
    assert!(geodesic(&["enumerate", "5", "--budget", "120", "--out", out5.to_str().unwrap()]).status.success());
    let (index, _) = read_catalog(&out5).unwrap();
    assert_eq!(index.classes, 34);

    assert_eq!(geodesic(&["enumerate", "9", "--out", dir.path().join("n9").to_str().unwrap()]).status.code(), Some(2));
}

#[test]
fn replay_single_claims() {
    let out = geodesic(&["verify-paper", "--claim", "even-cycle-c6"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).starts_with("PASS even-cycle-c6"));
    assert!(stdout(&out).contains("1 claims, 0 failed"));

    let out = geodesic(&["replay", "--claim", "c4-chart", "--json"]);
    let r: ReplayReport = from_json(&stdout(&out)).unwrap();
    assert!(r.passed() && r.results.len() == 1);

    assert_eq!(geodesic(&["replay", "--claim", "nope"]).status.code(), Some(2));
    let list = stdout(&geodesic(&["replay", "--list"]));
    assert_eq!(list.lines().count(), geodesic::replay::manifest().len());
}

#[test]
fn replay_flags_a_corrupted_chart() {
    let dir = tempfile::tempdir().unwrap();
    let chart = dir.path().join("bad-c4.json");
    // d(b,x) = 2 instead of 3
    std::fs::write(
        &chart,
        r#"{"points":["a","b","c","d","x"],"dist":[["0","1","2","1","2"],["1","0","1","2","2"],["2","1","0","1","2"],["1","2","1","0","3"],["2","2","2","3","0"]]}"#,
    )
    .unwrap();
    let out = geodesic(&["replay", "--claim", "c4-chart", "--c4-chart", chart.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).starts_with("FAIL c4-chart"));
}

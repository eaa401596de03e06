use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use downleft::downleft::{build_downleft, DownLeftSpec};
use downleft::io;
use tempfile::TempDir;

const C5: &str = "vertices a b c d e\na b\nb c\nc d\nd e\ne a\n";
const C6: &str = "vertices 1 2 3 4 5 6\n1 2\n2 3\n3 4\n4 5\n5 6\n6 1\n";
const TWO_CORE_MATRIX: &str = "1 0 0 0 1\n1 0 0 1 1\n0 1 0 1 1\n0 0 1 1 1\n";
const K33E_MATRIX: &str = "1 1 1 0 0\n1 1 1 0 0\n0 1 1 1 1\n0 1 1 1 1\n";

fn downleft(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_downleft")).args(args).output().expect("binary runs")
}

fn file(dir: &TempDir, name: &str, body: &str) -> String {
    let p = dir.path().join(name);
    fs::write(&p, body).unwrap();
    p.to_str().unwrap().to_owned()
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exited")
}

fn result(o: &Output) -> serde_json::Value {
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).expect("json on stdout");
    v["result"].clone()
}

#[test]
fn gen_grid_counts() {
    let o = downleft(&["gen", "--m", "3", "--n", "4"]);
    assert_eq!(code(&o), 0);
    let g = io::parse_graph(std::str::from_utf8(&o.stdout).unwrap()).unwrap().graph;
    assert_eq!((g.order(), g.size()), (12, 18));

    let o = downleft(&["gen", "--m", "1", "--n", "3"]);
    let g = io::parse_graph(std::str::from_utf8(&o.stdout).unwrap()).unwrap().graph;
    assert_eq!((g.order(), g.size()), (3, 0));
}

#[test]
fn gen_round_trips_label_exactly() {
    let dir = TempDir::new().unwrap();
    let spec = DownLeftSpec::new(4, 5, vec![0, 0, 1, 2], vec![4, 5, 6, 6]).unwrap();
    let spec_path = file(&dir, "spec.txt", &io::write_spec(&spec));
    let out = dir.path().join("g.txt");
    let o = downleft(&["gen", &spec_path, "--out", out.to_str().unwrap()]);
    assert_eq!(code(&o), 0);
    assert!(o.stdout.is_empty());
    let parsed = io::parse_graph(&fs::read_to_string(&out).unwrap()).unwrap();
    let expected = build_downleft(&spec);
    assert_eq!(parsed.graph.order(), expected.order());
    let by_name = |v: usize| io::parse_grid_token(&parsed.names[v]).unwrap();
    let mut got: Vec<_> = parsed.graph.edges().iter().map(|&(u, v)| (by_name(u), by_name(v))).collect();
    let mut want: Vec<_> = expected
        .edges()
        .iter()
        .map(|&(u, v)| (expected.label(u).unwrap(), expected.label(v).unwrap()))
        .collect();
    got.iter_mut().chain(want.iter_mut()).for_each(|e| {
        if e.0 > e.1 {
            *e = (e.1, e.0);
        }
    });
    got.sort();
    want.sort();
    assert_eq!(got, want);
}

#[test]
fn gen_rejects_invalid_specs() {
    let o = downleft(&["gen", "--m", "2", "--n", "3", "--a", "1,1", "--b", "4,4"]);
    assert_eq!(code(&o), 2);
    assert!(String::from_utf8_lossy(&o.stderr).contains("a_1 = 0"));
    assert_eq!(code(&downleft(&["gen", "--m", "2", "--bogus"])), 2);
    assert_eq!(code(&downleft(&["frobnicate"])), 2);
}

#[test]
fn analyze_grid_and_c5() {
    let dir = TempDir::new().unwrap();
    let spec = file(&dir, "g34.txt", "3 4\n0 0 0\n5 5 5\n");
    let o = downleft(&["analyze", &spec]);
    assert_eq!(code(&o), 0);
    let r = result(&o);
    assert_eq!(r["well_covered"], true);
    assert_eq!(r["c5_free"], true);
    assert_eq!(r["vd"], true);
    assert_eq!(r["im"], 2);
    assert_eq!(r["reg"], 2);

    let c5 = file(&dir, "c5.txt", C5);
    let r = result(&downleft(&["analyze", &c5, "--well-covered", "--c5", "--im"]));
    assert_eq!(r["well_covered"], true);
    assert_eq!(r["c5_free"], false);
    assert_eq!(r["im"], 1);
    assert_eq!(r["c5_witness"].as_array().unwrap().len(), 5);
}

#[test]
fn analyze_invalid_inputs() {
    let dir = TempDir::new().unwrap();
    assert_eq!(code(&downleft(&["analyze", &file(&dir, "empty.txt", "")])), 2);
    assert_eq!(code(&downleft(&["analyze", &file(&dir, "c5.txt", C5), "--reg"])), 2);
    assert_eq!(code(&downleft(&["analyze", "/nonexistent/graph.txt"])), 2);
}

#[test]
fn oracle_values_and_cap() {
    let dir = TempDir::new().unwrap();
    let c5 = file(&dir, "c5.txt", C5);
    let r = result(&downleft(&["oracle", "--reg", &c5]));
    assert_eq!(r["reg"], 2);
    assert_eq!(r["witness"]["t"], 1);
    assert_eq!(r["witness"]["vertices"].as_array().unwrap().len(), 5);

    let edge = file(&dir, "edge.txt", "vertices u v\nu v\n");
    assert_eq!(result(&downleft(&["oracle", "--reg", &edge]))["reg"], 1);

    let p3 = file(&dir, "p3.txt", "vertices a b c\na b\nb c\n");
    let betti = result(&downleft(&["oracle", "--betti", &p3]))["betti"].clone();
    let entries: Vec<(u64, u64, u64)> = betti
        .as_array()
        .unwrap()
        .iter()
        .map(|e| (e["i"].as_u64().unwrap(), e["j"].as_u64().unwrap(), e["beta"].as_u64().unwrap()))
        .filter(|&(i, _, _)| i > 0)
        .collect();
    assert_eq!(entries, vec![(1, 2, 2), (2, 3, 1)]);

    let o = downleft(&["oracle", "--reg", "--cap", "3", &c5]);
    assert_eq!(code(&o), 3);
    assert!(String::from_utf8_lossy(&o.stderr).contains("--cap"));
}

#[test]
fn toric_pipeline_and_refusals() {
    let dir = TempDir::new().unwrap();
    let r = result(&downleft(&["toric", &file(&dir, "m.txt", TWO_CORE_MATRIX)]));
    assert_eq!(r["regularity"], 2);
    let dims: Vec<(u64, u64)> = r["components"]
        .as_array()
        .unwrap()
        .iter()
        .map(|c| (c["m"].as_u64().unwrap(), c["n"].as_u64().unwrap()))
        .collect();
    assert_eq!(dims, vec![(2, 2), (3, 2)]);
    assert_eq!(r["agree"], true);

    let o = downleft(&["toric", &file(&dir, "run.txt", K33E_MATRIX)]);
    assert_eq!(code(&o), 5);
    assert_eq!(result(&o)["k33e_free"], false);
    assert_eq!(result(&o)["witness"].as_array().unwrap().len(), 6);

    let o = downleft(&["toric", &file(&dir, "c6.txt", C6)]);
    assert_eq!(code(&o), 4);
    assert_eq!(result(&o)["chordal_bipartite"], false);

    assert_eq!(code(&downleft(&["toric", &file(&dir, "c5.txt", C5)])), 4);
}

#[test]
fn reports_are_byte_identical() {
    let dir = TempDir::new().unwrap();
    let m = file(&dir, "m.txt", TWO_CORE_MATRIX);
    let spec = file(&dir, "s.txt", "3 4\n0 0 1\n4 5 5\n");
    for args in [vec!["toric", m.as_str()], vec!["analyze", spec.as_str()], vec!["oracle", spec.as_str()]] {
        let (x, y) = (downleft(&args), downleft(&args));
        assert_eq!(code(&x), 0, "{args:?}");
        assert_eq!(x.stdout, y.stdout, "{args:?}");
        assert!(!String::from_utf8_lossy(&x.stdout).contains("timing_ms"));
    }
    let timed = downleft(&["--timing", "toric", &m]);
    let v: serde_json::Value = serde_json::from_slice(&timed.stdout).unwrap();
    assert!(v["timing_ms"].is_u64());
}

#[test]
fn out_flag_writes_report() {
    let dir = TempDir::new().unwrap();
    let c5 = file(&dir, "c5.txt", C5);
    let out = dir.path().join("report.json");
    let o = downleft(&["analyze", &c5, "--c5", "--out", out.to_str().unwrap()]);
    assert_eq!(code(&o), 0);
    let v: serde_json::Value = serde_json::from_str(&fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(v["command"], "analyze");
    assert!(v["input_digest"].as_str().unwrap().starts_with("sha256:"));
    assert!(Path::new(&out).exists());
}

#[test]
fn selftest_quick_passes() {
    let o = downleft(&["selftest", "--quick"]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    assert_eq!(result(&o)["passed"], true);
    assert_eq!(result(&o)["criteria"].as_array().unwrap().len(), 9);
}

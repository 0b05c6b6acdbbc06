use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn gspectra(args: &[&str], dir: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_gspectra"))
        .args(args)
        .current_dir(dir)
        .output()
        .expect("binary runs")
}

fn ok(args: &[&str], dir: &Path) {
    let out = gspectra(args, dir);
    assert!(
        out.status.success(),
        "{args:?}: {}",
        String::from_utf8_lossy(&out.stderr)
    );
}

fn rows(path: &Path) -> Vec<Vec<f64>> {
    fs::read_to_string(path)
        .unwrap()
        .lines()
        .skip(1)
        .map(|l| l.split(',').map(|x| x.parse().unwrap()).collect())
        .collect()
}

fn manifest(dir: &Path) -> Value {
    serde_json::from_str(&fs::read_to_string(dir.join("manifest.json")).unwrap()).unwrap()
}

#[test]
fn two_cycle_spectrum() {
    let dir = tempfile::tempdir().unwrap();
    fs::write(dir.path().join("c.edges"), "0 1\n1 0\n").unwrap();
    for (alpha, second) in [("1", -1.0), ("0.85", -0.85)] {
        let out = format!("a{alpha}");
        ok(
            &["spectrum", "c.edges", "--alpha", alpha, "--out-dir", &out],
            dir.path(),
        );
        let ev = rows(&dir.path().join(&out).join("eigenvalues.csv"));
        assert_eq!(ev.len(), 2);
        assert!((ev[0][0] - 1.0).abs() < 1e-12 && ev[0][1] == 0.0);
        assert!((ev[1][0] - second).abs() < 1e-12 && ev[1][1] == 0.0);
        let m = manifest(&dir.path().join(&out));
        assert_eq!(m["command"], "spectrum");
        assert_eq!(m["outputs"].as_array().unwrap().len(), 4);
        assert_eq!(m["inputs"][0]["sha256"].as_str().unwrap().len(), 64);
    }
}

#[test]
fn missing_input_exits_one() {
    let dir = tempfile::tempdir().unwrap();
    let out = gspectra(&["pagerank", "absent.edges"], dir.path());
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("absent.edges"));
}

#[test]
fn malformed_input_exits_one() {
    let dir = tempfile::tempdir().unwrap();
    fs::write(dir.path().join("bad.edges"), "0 1\n1 x\n").unwrap();
    let out = gspectra(&["degree-dist", "bad.edges"], dir.path());
    assert_eq!(out.status.code(), Some(1));
    assert!(!out.stderr.is_empty());
}

#[test]
fn usage_error_exits_one() {
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(gspectra(&["spectrum"], dir.path()).status.code(), Some(1));
    assert_eq!(gspectra(&["--help"], dir.path()).status.code(), Some(0));
}

#[test]
fn complete_graph_pagerank_is_uniform() {
    let dir = tempfile::tempdir().unwrap();
    let mut text = String::new();
    for i in 0..5 {
        for j in 0..5 {
            if i != j {
                text.push_str(&format!("{i} {j}\n"));
            }
        }
    }
    fs::write(dir.path().join("k5.edges"), text).unwrap();
    ok(&["pagerank", "k5.edges", "--out-dir", "p"], dir.path());
    let pr = rows(&dir.path().join("p/pagerank.csv"));
    assert_eq!(pr.len(), 5);
    for r in &pr {
        assert!((r[1] - 0.2).abs() < 1e-12, "{r:?}");
    }
    assert_eq!(manifest(&dir.path().join("p"))["results"]["converged"], true);

    ok(
        &["fidelity", "k5.edges", "--alphas", "0.85", "--out-dir", "f"],
        dir.path(),
    );
    let f = fs::read_to_string(dir.path().join("f/fidelity.csv")).unwrap();
    let values: Vec<f64> = f
        .lines()
        .skip(1)
        .flat_map(|l| {
            l.split(',')
                .skip(1)
                .map(|x| x.parse::<f64>().unwrap())
                .collect::<Vec<_>>()
        })
        .collect();
    assert_eq!(values.len(), 1);
    assert!((values[0] - 1.0).abs() < 1e-12);
}

#[test]
fn unconverged_pagerank_exits_three_with_outputs() {
    let dir = tempfile::tempdir().unwrap();
    ok(
        &["generate", "al", "--n", "100", "--seed", "1", "--out-dir", "g"],
        dir.path(),
    );
    let out = gspectra(
        &["pagerank", "g/graph.edges", "--max-iter", "2", "--out-dir", "p"],
        dir.path(),
    );
    assert_eq!(out.status.code(), Some(3));
    assert!(dir.path().join("p/pagerank.csv").exists());
    assert_eq!(manifest(&dir.path().join("p"))["results"]["converged"], false);
}

#[test]
fn dense_limit_exits_two() {
    let dir = tempfile::tempdir().unwrap();
    ok(
        &["generate", "ab", "--n", "64", "--seed", "3", "--out-dir", "g"],
        dir.path(),
    );
    let out = gspectra(
        &["spectrum", "g/graph.edges", "--dense-limit", "32", "--out-dir", "s"],
        dir.path(),
    );
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("truncate-spectrum"));
}

#[test]
fn al_generator_out_degrees() {
    let dir = tempfile::tempdir().unwrap();
    ok(
        &[
            "generate",
            "al",
            "--n",
            "2048",
            "--m",
            "5",
            "--seed",
            "7",
            "--out-dir",
            "g",
        ],
        dir.path(),
    );
    let text = fs::read_to_string(dir.path().join("g/graph.edges")).unwrap();
    let mut out = vec![0usize; 2048];
    for line in text.lines().filter(|l| !l.starts_with('#')) {
        let src: usize = line.split_whitespace().next().unwrap().parse().unwrap();
        out[src] += 1;
    }
    assert!(out[6..].iter().all(|&d| d == 5));
    let m = manifest(&dir.path().join("g"));
    assert_eq!(m["seed"], 7);
    assert_eq!(m["results"]["n_nodes"], 2048);
    let params: Value = serde_json::from_str(&fs::read_to_string(dir.path().join("g/params.json")).unwrap()).unwrap();
    assert_eq!(params["m"], 5);
}

#[test]
fn zero_swaps_keep_edges() {
    let dir = tempfile::tempdir().unwrap();
    ok(
        &["generate", "ab", "--n", "300", "--seed", "2", "--out-dir", "g"],
        dir.path(),
    );
    ok(
        &[
            "randomize",
            "g/graph.edges",
            "--swaps",
            "0",
            "--seed",
            "1",
            "--out-dir",
            "r",
        ],
        dir.path(),
    );
    assert_eq!(
        fs::read(dir.path().join("g/graph.edges")).unwrap(),
        fs::read(dir.path().join("r/randomized.edges")).unwrap()
    );
    ok(
        &["randomize", "g/graph.edges", "--seed", "4", "--out-dir", "r2"],
        dir.path(),
    );
    assert!(
        manifest(&dir.path().join("r2"))["results"]["edges_changed"]
            .as_u64()
            .unwrap()
            > 0
    );
}

#[test]
fn reruns_are_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    for out in ["a", "b"] {
        ok(
            &["generate", "color", "--n", "400", "--seed", "9", "--out-dir", out],
            dir.path(),
        );
        let edges = format!("{out}/graph.edges");
        ok(&["spectrum", &edges, "--out-dir", &format!("{out}/s")], dir.path());
        ok(
            &[
                "truncate-spectrum",
                &edges,
                "--sizes",
                "50,100",
                "--out-dir",
                &format!("{out}/t"),
            ],
            dir.path(),
        );
    }
    for sub in ["", "s", "t"] {
        let a = manifest(&dir.path().join("a").join(sub));
        let b = manifest(&dir.path().join("b").join(sub));
        assert_eq!(a["outputs"], b["outputs"], "{sub}");
        assert!(!a["outputs"].as_array().unwrap().is_empty());
    }
    let t = rows(&dir.path().join("a/t/truncation.csv"));
    assert_eq!(t.len(), 2);
    assert!(t.iter().all(|r| r[1].is_finite() && r[1] >= 0.0));
}

#[test]
fn degree_dist_and_par_curve() {
    let dir = tempfile::tempdir().unwrap();
    ok(
        &["generate", "ab", "--n", "500", "--seed", "5", "--out-dir", "g"],
        dir.path(),
    );
    ok(&["degree-dist", "g/graph.edges", "--out-dir", "d"], dir.path());
    let din = rows(&dir.path().join("d/degree_in.csv"));
    assert!((din[0][2] - 1.0).abs() < 1e-12);
    assert!(din.windows(2).all(|w| w[0][0] < w[1][0] && w[0][2] >= w[1][2]));
    ok(
        &["par-curve", "g/graph.edges", "--alphas", "0.5,0.85", "--out-dir", "p"],
        dir.path(),
    );
    assert_eq!(rows(&dir.path().join("p/par_curve.csv")).len(), 2);
}

#[test]
fn filter_dangling_writes_node_map() {
    let dir = tempfile::tempdir().unwrap();
    fs::write(dir.path().join("d.edges"), "0 1\n1 0\n1 2\n").unwrap();
    ok(
        &["pagerank", "d.edges", "--filter-dangling", "--out-dir", "p"],
        dir.path(),
    );
    let map = rows(&dir.path().join("p/node_map.csv"));
    assert_eq!(map, vec![vec![0.0, 0.0], vec![1.0, 1.0]]);
    assert_eq!(rows(&dir.path().join("p/pagerank.csv")).len(), 2);
}

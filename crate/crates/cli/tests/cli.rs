// Copyright 2026 The qtri Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

use std::fs;
use std::process::{Command, Output};

use proptest::prelude::*;
use qtri::edgelist::{parse_gc_instance, parse_graph, parse_pattern, write_graph};
use qtri::fit::{fit_rows, fit_slope, ScalingFit};
use qtri::report::{to_json, RunReport};
use qtri::sweep::{read_csv, write_csv, SweepRow};
use qtri_core::collision::{generic_cost, DatabaseModel};
use qtri_core::math::ceil_u64;

fn qtri(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qtri")).args(args).output().expect("spawn qtri")
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

#[test]
fn parse_errors_carry_line_numbers() {
    let cases = [
        ("3 2\n1 2\n2 2\n", 3, "self-loop"),
        ("# c\n3 2\n1 2\n1 2\n", 4, "duplicate"),
        ("3 1\n1 4\n", 2, "range"),
        ("3 1\n2 1\n", 2, ""),
        ("3 x\n", 1, ""),
        ("3 2\n1 2\n", 1, ""),
    ];
    for (text, line, needle) in cases {
        let err = parse_graph(text).unwrap_err();
        assert_eq!(err.line, line, "{text:?}: {err}");
        assert!(err.to_string().starts_with(&format!("line {line}:")));
        assert!(err.message.contains(needle), "{text:?}: {err}");
    }
    assert!(parse_pattern("3 3\n1 2\n2 3\n1 3\n").is_err());
    assert_eq!(parse_pattern("3 3\n1 2\n2 3\n1 3\nroot 9\n").unwrap_err().line, 5);
    assert!(parse_gc_instance("4 1\n1 2\nones 1 9\n").is_err());
}

#[test]
fn malformed_file_exits_with_status_two() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.el");
    fs::write(&path, "4 2\n1 2\n3 3\n").unwrap();
    let out = qtri(&["run", "--alg", "combo", "--graph", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("line 3"), "{}", stderr(&out));
}

#[test]
fn exit_codes() {
    assert_eq!(qtri(&["run", "--alg", "combo", "--family", "complete", "--n", "30", "--require-witness"]).status.code(), Some(0));
    let rejected = qtri(&["run", "--alg", "walk", "--family", "bipartite", "--n", "60", "--seed", "4", "--require-witness"]);
    assert_eq!(rejected.status.code(), Some(1));
    let report: RunReport = serde_json::from_slice(&rejected.stdout).unwrap();
    assert!(!report.outcome.is_witness());
    assert_eq!(qtri(&["run", "--alg", "walk", "--family", "bipartite", "--n", "60"]).status.code(), Some(0));
    assert_eq!(qtri(&["run", "--alg", "nope", "--n", "10"]).status.code(), Some(2));
    assert_eq!(qtri(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(qtri(&["run", "--alg", "combo"]).status.code(), Some(2));
    assert_eq!(qtri(&["run", "--alg", "combo", "--family", "unknown", "--n", "10"]).status.code(), Some(2));
}

#[test]
fn reports_are_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    let g = dir.path().join("g.el");
    assert!(qtri(&["gen", "--family", "planted", "--p", "0.05", "--n", "200", "--seed", "9", "--out", g.to_str().unwrap()]).status.success());
    let g = g.to_str().unwrap();
    for alg in ["combo", "walk", "brute"] {
        let a = dir.path().join(format!("{alg}-a.json"));
        let b = dir.path().join(format!("{alg}-b.json"));
        for out in [&a, &b] {
            let o = qtri(&["run", "--alg", alg, "--graph", g, "--seed", "3", "--out", out.to_str().unwrap()]);
            assert!(o.status.success(), "{}", stderr(&o));
        }
        let (a, b) = (fs::read(&a).unwrap(), fs::read(&b).unwrap());
        assert_eq!(a, b, "{alg}");
        let report: RunReport = serde_json::from_slice(&a).unwrap();
        assert_eq!(report.schema, 1);
        assert_eq!(report.wall_time_ms, None);
        assert_eq!(report.ledger.total, report.ledger.recomputed_total());
        assert_eq!(to_json(&report).as_bytes(), &a[..]);
    }
    let timed = qtri(&["run", "--alg", "brute", "--graph", g, "--timing"]);
    let report: RunReport = serde_json::from_slice(&timed.stdout).unwrap();
    assert!(report.wall_time_ms.is_some());
}

#[test]
fn generated_graph_reads_back() {
    let out = qtri(&["gen", "--family", "c5", "--p", "0.3", "--n", "50", "--seed", "2"]);
    let g = parse_graph(std::str::from_utf8(&out.stdout).unwrap()).unwrap();
    assert_eq!(g.n(), 50);
    assert!(g.brute_find_triangle().is_none());
    assert_eq!(write_graph(&g).as_bytes(), &out.stdout[..]);
}

#[test]
fn pattern_and_collision_files_run() {
    let dir = tempfile::tempdir().unwrap();
    let pat = dir.path().join("k4.el");
    fs::write(&pat, "# K4 rooted at 1\n4 6\n1 2\n1 3\n1 4\n2 3\n2 4\n3 4\nroot 1\n").unwrap();
    let o = qtri(&["run", "--alg", "hcopy", "--family", "complete", "--n", "8", "--pattern", pat.to_str().unwrap(), "--require-witness"]);
    assert!(o.status.success(), "{}", stderr(&o));
    let o = qtri(&["run", "--alg", "monotone", "--family", "bipartite", "--n", "20", "--pattern", pat.to_str().unwrap(), "--require-witness"]);
    assert_eq!(o.status.code(), Some(1));

    let gc = dir.path().join("gc.el");
    assert!(qtri(&["gen", "--family", "gc", "--p", "0.1", "--n", "300", "--seed", "5", "--out", gc.to_str().unwrap()]).status.success());
    let o = qtri(&["run", "--alg", "gc", "--graph", gc.to_str().unwrap(), "--require-witness"]);
    assert!(o.status.success(), "{}", stderr(&o));
    let report: RunReport = serde_json::from_slice(&o.stdout).unwrap();
    let inst = parse_gc_instance(&fs::read_to_string(&gc).unwrap()).unwrap();
    let w = report.outcome.witness.unwrap();
    assert!(inst.f[w[0]] && inst.f[w[1]] && inst.known.contains(w[0], w[1]));
}

#[test]
fn sweep_csv_round_trips_through_fit() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("s.csv");
    let o = qtri(&["sweep", "--alg", "walk", "--family", "er", "--ns", "64,128,256", "--seeds", "2", "--out", csv.to_str().unwrap()]);
    assert!(o.status.success(), "{}", stderr(&o));
    let text = fs::read_to_string(&csv).unwrap();
    assert!(text.starts_with("algorithm,n,seed,charged_total,exact_queries,outcome\n"));
    let rows = read_csv(text.as_bytes()).unwrap();
    assert_eq!(rows.iter().map(|r| (r.n, r.seed)).collect::<Vec<_>>(), vec![(64, 1), (64, 2), (128, 1), (128, 2), (256, 1), (256, 2)]);
    let mut again = Vec::new();
    write_csv(&rows, &mut again).unwrap();
    assert_eq!(again, text.as_bytes());

    let fit = fit_rows(&rows, Some("walk")).unwrap();
    let o = qtri(&["fit", "--csv", csv.to_str().unwrap()]);
    let printed: ScalingFit = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(printed, fit);
    let reparsed: ScalingFit = serde_json::from_str(&serde_json::to_string(&fit).unwrap()).unwrap();
    assert_eq!(reparsed, fit);
    assert!(fit_rows(&rows, Some("combo")).is_err());
}

#[test]
fn validate_and_exact_subcommands_emit_tables() {
    let o = qtri(&["validate", "--lemma", "useful", "--grid", "default"]);
    assert!(o.status.success());
    let text = String::from_utf8(o.stdout).unwrap();
    assert_eq!(text.lines().count(), 101);
    assert!(text.lines().skip(1).all(|l| l.ends_with(",true")));
    assert_eq!(qtri(&["validate", "--lemma", "useful", "--grid", "wide"]).status.code(), Some(2));
    let o = qtri(&["exact", "--n", "6", "--r", "2", "--t1-max", "3", "--t2-max", "2"]);
    assert!(o.status.success());
    assert_eq!(String::from_utf8_lossy(&o.stdout).lines().count(), 7);
    assert!(stderr(&o).contains("baseline"));
}

#[test]
fn fit_slope_examples() {
    let ns = [100.0, 1000.0, 10000.0, 100000.0];
    let sq: Vec<(f64, f64)> = ns.iter().map(|&n| (n, n * n)).collect();
    assert!((fit_slope(&sq).unwrap().slope - 2.0).abs() < 1e-9);
    let p13: Vec<(f64, f64)> = ns.iter().map(|&n: &f64| (n, 17.5 * n.powf(1.3))).collect();
    assert!((fit_slope(&p13).unwrap().slope - 1.3).abs() < 1e-9);
    assert!(fit_slope(&sq[..2]).is_err());
    assert!(fit_slope(&[(10.0, 1.0), (10.0, 2.0), (10.0, 3.0), (20.0, 4.0)]).is_err());

    let db = DatabaseModel::triangle();
    let tri: Vec<(f64, f64)> = (10..=20)
        .map(|e| {
            let n = 1u64 << e;
            let r = ceil_u64((n as f64).powf(0.6));
            (n as f64, generic_cost(n, 2, r, &db).unwrap())
        })
        .collect();
    let slope = fit_slope(&tri).unwrap().slope;
    assert!((slope - 1.3).abs() <= 0.02, "triangle row slope {slope}");
}

fn rows_strategy() -> impl Strategy<Value = Vec<SweepRow>> {
    prop::collection::vec((3u32..20, 1u64..1_000_000), 3..30).prop_map(|cells| {
        let mut rows: Vec<SweepRow> = cells
            .iter()
            .enumerate()
            .map(|(i, &(e, c))| SweepRow {
                algorithm: "walk".into(),
                n: 1 << (e + i as u32 % 3),
                seed: i as u64,
                charged_total: c,
                exact_queries: 0,
                outcome: "reject".into(),
            })
            .collect();
        rows.sort_by_key(|r| (r.n, r.seed));
        rows
    })
}

proptest! {
    #[test]
    fn slope_is_invariant_under_rescaling(points in prop::collection::vec((1.0f64..1e6, 1.0f64..1e9), 3..40), scale in 1e-6f64..1e6) {
        let Ok(base) = fit_slope(&points) else { return Ok(()) };
        let scaled: Vec<(f64, f64)> = points.iter().map(|&(n, c)| (n, c * scale)).collect();
        let fit = fit_slope(&scaled).unwrap();
        prop_assert!((fit.slope - base.slope).abs() < 1e-9);
        prop_assert!((fit.residual - base.residual).abs() < 1e-7);
    }

    #[test]
    fn fit_is_preserved_by_csv(rows in rows_strategy()) {
        let mut buf = Vec::new();
        write_csv(&rows, &mut buf).unwrap();
        let back = read_csv(&buf[..]).unwrap();
        prop_assert_eq!(&back, &rows);
        prop_assert_eq!(fit_rows(&back, None), fit_rows(&rows, None));
    }
}

use pseudovis::fixtures::{chordless, dent5_graph, dent5_polygon, quad4};
use pseudovis::VisGraph;
use serde_json::Value;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};
use tempfile::TempDir;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_pseudovis"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exited")
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout)
        .unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&o.stdout)))
}

fn write(dir: &TempDir, name: &str, text: &str) -> PathBuf {
    let p = dir.path().join(name);
    std::fs::write(&p, text).unwrap();
    p
}

fn graph_file(dir: &TempDir, name: &str, g: &VisGraph) -> PathBuf {
    write(dir, name, &serde_json::to_string(&g.to_file()).unwrap())
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn recognize_dent5_accepts_with_theorem1_pass() {
    let d = TempDir::new().unwrap();
    let g = graph_file(&d, "g.json", &dent5_graph());
    let o = run(&["recognize", s(&g)]);
    assert_eq!(code(&o), 0);
    let v = json(&o);
    assert_eq!(v["verdict"], "accepted");
    assert_eq!(v["theorem1"]["passed"], true);
    assert_eq!(v["assignment"]["blockers"].as_array().unwrap().len(), 4);
}

#[test]
fn recognize_rejects_chordless_cycles() {
    let d = TempDir::new().unwrap();
    for n in 4..=6 {
        let g = graph_file(&d, &format!("c{n}.json"), &chordless(n));
        let o = run(&["recognize", s(&g)]);
        assert_eq!(code(&o), 1, "C{n}");
        let v = json(&o);
        assert_eq!(v["verdict"], "rejected");
        assert!(v["certificate"]["kind"].is_string());
        assert!(v.get("theorem1").is_none());
    }
}

#[test]
fn recognize_budget_and_input_errors() {
    let d = TempDir::new().unwrap();
    let g = graph_file(&d, "g.json", &chordless(6));
    let o = run(&["recognize", s(&g), "--budget", "1"]);
    assert_eq!(code(&o), 3);
    assert_eq!(json(&o)["verdict"], "budget_exceeded");

    let bad = write(&d, "bad.json", r#"{"n":4,"edges":[[0,1],[1,2],[2,3]]}"#);
    assert_eq!(code(&run(&["recognize", s(&bad)])), 2);
    let garbage = write(&d, "garbage.json", "not json");
    assert_eq!(code(&run(&["recognize", s(&garbage)])), 2);
    assert_eq!(code(&run(&["recognize", "/nonexistent/graph.json"])), 2);
    assert_eq!(code(&run(&["no-such-command"])), 2);
}

#[test]
fn recognize_writes_out_file_and_check_accepts_it() {
    let d = TempDir::new().unwrap();
    let g = graph_file(&d, "g.json", &dent5_graph());
    let v = d.path().join("verdict.json");
    assert_eq!(code(&run(&["recognize", s(&g), "--out", s(&v)])), 0);
    let o = run(&["check", s(&g), s(&v)]);
    assert_eq!(code(&o), 0);
    let r = json(&o);
    assert_eq!(r["valid"], true);
    assert_eq!(r["violations"].as_array().unwrap().len(), 0);
}

#[test]
fn check_reports_violations_and_entry_errors() {
    let d = TempDir::new().unwrap();
    let g = graph_file(&d, "g.json", &dent5_graph());
    let all2 = r#"{"blockers":[{"from":1,"to":3,"blocker":2},{"from":1,"to":4,"blocker":2},{"from":3,"to":1,"blocker":2},{"from":4,"to":1,"blocker":2}]}"#;
    let a = write(&d, "a.json", all2);
    assert_eq!(code(&run(&["check", s(&g), s(&a)])), 0);

    let partial = write(
        &d,
        "p.json",
        r#"{"blockers":[{"from":1,"to":3,"blocker":2}]}"#,
    );
    let o = run(&["check", s(&g), s(&partial)]);
    assert_eq!(code(&o), 1);
    assert_eq!(json(&o)["missing"].as_array().unwrap().len(), 3);

    // (0, 2) is a visible pair
    let wrong = write(
        &d,
        "w.json",
        r#"{"blockers":[{"from":0,"to":2,"blocker":1}]}"#,
    );
    assert_eq!(code(&run(&["check", s(&g), s(&wrong)])), 2);
}

#[test]
fn oracle_subcommands_on_dent5() {
    let d = TempDir::new().unwrap();
    let p = write(
        &d,
        "p.json",
        &serde_json::to_string(&dent5_polygon().to_file()).unwrap(),
    );

    let o = run(&["oracle", "visgraph", s(&p)]);
    assert_eq!(code(&o), 0);
    assert_eq!(
        json(&o),
        serde_json::to_value(dent5_graph().to_file()).unwrap()
    );

    let o = run(&["oracle", "blockers", s(&p)]);
    assert_eq!(code(&o), 0);
    let b = json(&o)["blockers"].as_array().unwrap().clone();
    assert_eq!(b.len(), 4);
    assert!(b.iter().all(|e| e["blocker"] == 2));

    let o = run(&["oracle", "ve", s(&p)]);
    assert_eq!(code(&o), 0);
    let v = json(&o);
    let row1: Vec<u64> = v["sees"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|e| e[0] == 1)
        .map(|e| e[1].as_u64().unwrap())
        .collect();
    assert_eq!(row1, vec![0, 1, 4]);

    let o = run(&["oracle", "lemmas", s(&p)]);
    assert_eq!(code(&o), 0);
    assert_eq!(json(&o)["passed"], true);
}

#[test]
fn oracle_rejects_bad_polygons() {
    let d = TempDir::new().unwrap();
    let cw = write(&d, "cw.json", r#"{"vertices":[[0,0],[0,4],[4,4],[4,0]]}"#);
    assert_eq!(code(&run(&["oracle", "visgraph", s(&cw)])), 2);
    let collinear = write(&d, "col.json", r#"{"vertices":[[0,0],[2,0],[4,0],[2,3]]}"#);
    assert_eq!(code(&run(&["oracle", "ve", s(&collinear)])), 2);
    let bowtie = write(&d, "bow.json", r#"{"vertices":[[0,0],[4,4],[4,0],[0,4]]}"#);
    assert_eq!(code(&run(&["oracle", "lemmas", s(&bowtie)])), 2);
}

#[test]
fn gen_is_reproducible_and_valid() {
    let a = run(&["gen", "--n", "9", "--seed", "5"]);
    let b = run(&["gen", "--n", "9", "--seed", "5"]);
    assert_eq!(code(&a), 0);
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(json(&a)["vertices"].as_array().unwrap().len(), 9);

    let lines = run(&["gen", "--n", "6", "--seed", "1", "--count", "3"]);
    let text = String::from_utf8(lines.stdout).unwrap();
    assert_eq!(text.lines().count(), 3);
    let first: Value = serde_json::from_str(text.lines().next().unwrap()).unwrap();
    assert_eq!(first, json(&run(&["gen", "--n", "6", "--seed", "1"])));

    let d = TempDir::new().unwrap();
    let out = d.path().join("polys");
    assert_eq!(
        code(&run(&[
            "gen",
            "--n",
            "6",
            "--seed",
            "1",
            "--count",
            "3",
            "--out",
            s(&out)
        ])),
        0
    );
    let mut names: Vec<_> = std::fs::read_dir(&out)
        .unwrap()
        .map(|e| e.unwrap().file_name().into_string().unwrap())
        .collect();
    names.sort();
    assert_eq!(names.len(), 3);
    for name in names {
        let o = run(&["oracle", "lemmas", s(&out.join(name))]);
        assert_eq!(code(&o), 0);
    }

    assert_eq!(code(&run(&["gen", "--n", "2", "--seed", "0"])), 2);
}

#[test]
fn corpus_small_run_and_bad_range() {
    let o = run(&["corpus", "--count", "8", "--n-range", "5..7", "--seed", "3"]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stdout));
    let r = json(&o);
    assert_eq!(r["count"], 8);
    assert_eq!(r["checks"]["lemma3"]["checked"], 8);

    let alias = run(&["corpus", "--count", "8", "--n", "5..7", "--seed", "3"]);
    assert_eq!(alias.stdout, o.stdout);

    assert_eq!(
        code(&run(&[
            "corpus", "--count", "1", "--n", "2..2", "--seed", "1"
        ])),
        2
    );
    assert_eq!(
        code(&run(&[
            "corpus", "--count", "1", "--n", "7..5", "--seed", "1"
        ])),
        2
    );
    assert_eq!(
        code(&run(&[
            "corpus", "--count", "1", "--n", "five", "--seed", "1"
        ])),
        2
    );
}

#[test]
fn check_flags_pinch_failure_on_ground_truth() {
    // 20000-polygon sweeps at n = 9 hit the first pinch failure at seed 7066
    let o = run(&["gen", "--n", "9", "--seed", "7066"]);
    assert_eq!(code(&o), 0);
    let d = TempDir::new().unwrap();
    let p = write(&d, "p.json", std::str::from_utf8(&o.stdout).unwrap());
    let g = d.path().join("g.json");
    let b = d.path().join("b.json");
    assert_eq!(
        code(&run(&["oracle", "visgraph", s(&p), "--out", s(&g)])),
        0
    );
    assert_eq!(
        code(&run(&["oracle", "blockers", s(&p), "--out", s(&b)])),
        0
    );
    let o = run(&["check", s(&g), s(&b)]);
    assert_eq!(code(&o), 1);
    let r = json(&o);
    let conds: Vec<&str> = r["violations"]
        .as_array()
        .unwrap()
        .iter()
        .map(|v| v["condition"].as_str().unwrap())
        .collect();
    assert!(!conds.is_empty());
    assert!(conds.iter().all(|c| *c == "NC5"), "{conds:?}");
}

#[test]
fn export_dot_quad4() {
    let d = TempDir::new().unwrap();
    let g = graph_file(&d, "q.json", &quad4());
    let a = run(&["export-dot", s(&g)]);
    assert_eq!(code(&a), 0);
    let text = String::from_utf8(a.stdout.clone()).unwrap();
    assert_eq!(text.lines().filter(|l| l.contains("[label=")).count(), 4);
    let edges: Vec<&str> = text.lines().filter(|l| l.contains("--")).collect();
    assert_eq!(edges.len(), 5);
    assert_eq!(edges.iter().filter(|l| l.contains("dashed")).count(), 1);
    assert!(edges.iter().any(|l| l.trim() == "1 -- 3 [style=dashed];"));
    assert_eq!(run(&["export-dot", s(&g)]).stdout, a.stdout);
}

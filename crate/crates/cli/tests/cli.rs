use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use raagh_core::io::{parse_graph, Format};
use tempfile::TempDir;

const SHARED_TRIANGLE: &str = "\
# two 4-cliques glued along a triangle
0 1
0 2
0 3
1 2
1 3
1 4
2 3
2 4
3 4
";

fn raagh(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_raagh"))
        .args(args)
        .env_remove("RAAGH_CAP")
        .env_remove("RAAGH_WORKERS")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn write(dir: &TempDir, name: &str, text: &str) -> PathBuf {
    let p = dir.path().join(name);
    fs::write(&p, text).unwrap();
    p
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn compute_text_report() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "g.edges", SHARED_TRIANGLE);
    let o = raagh(&["compute", s(&f)]);
    assert!(o.status.success(), "{o:?}");
    let text = stdout(&o);
    assert!(text.contains("m2         6 (exhaustive)"), "{text}");
    assert!(text.contains("bounds     9 <= 12 <= h <= 18"), "{text}");
}

#[test]
fn compute_json_matches_schema() {
    let dir = TempDir::new().unwrap();
    let schema: serde_json::Value = serde_json::from_str(
        &fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/../../schemas/report.schema.json"))
            .unwrap(),
    )
    .unwrap();
    let validator = jsonschema::JSONSchema::compile(&schema).unwrap();
    let inputs = [
        ("a.edges", SHARED_TRIANGLE.to_string(), vec![]),
        ("b.edges", "0 1\n1 2\n".to_string(), vec!["--timings"]),
        ("c.edges", "0 1\n1 2\n2 3\n0 2\n0 3\n1 3\n4 5\n5 6\n4 6\n4 7\n5 7\n6 7\n3 4\n".to_string(), vec![]),
        ("d.edges", "0 1\n0 2\n0 3\n0 4\n1 2\n1 3\n1 4\n2 3\n2 4\n3 4\n".to_string(), vec!["--cap", "2"]),
    ];
    for (name, text, extra) in inputs {
        let f = write(&dir, name, &text);
        let mut args = vec!["compute", "--report", "json", s(&f)];
        args.extend(extra);
        let o = raagh(&args);
        assert!(o.status.success(), "{o:?}");
        let doc: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
        let msgs: Option<Vec<String>> = validator
            .validate(&doc)
            .err()
            .map(|errors| errors.map(|e| format!("{e} at {}", e.instance_path)).collect());
        assert!(msgs.is_none(), "{name}: {msgs:?}");
    }
}

#[test]
fn json_report_fields() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "g.edges", SHARED_TRIANGLE);
    let o = raagh(&["compute", "--report", "json", s(&f)]);
    let doc: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(doc["hReport"]["m2"]["m2"], 6);
    assert_eq!(doc["hReport"]["m2"]["exhaustive"], true);
    assert_eq!(doc["hReport"]["lowerCohomological"], 12);
    assert_eq!(doc["input"]["edges"], 9);
    let raw = stdout(&o);
    let at = |k: &str| raw.find(&format!("\n  \"{k}\"")).unwrap();
    assert!(at("schemaVersion") < at("input") && at("input") < at("hReport"));
    assert!(at("hReport") < at("solverMeta"));
}

#[test]
fn output_is_reproducible() {
    let dir = TempDir::new().unwrap();
    let gen = raagh(&["generate", "clique-string", "--size", "5", "--count", "3"]);
    let f = write(&dir, "s.edges", &stdout(&gen));
    let a = raagh(&["compute", "--report", "json", "--workers", "1", s(&f)]);
    let b = raagh(&["compute", "--report", "json", "--workers", "1", s(&f)]);
    let c = raagh(&["compute", "--report", "json", "--workers", "8", s(&f)]);
    assert_eq!(a.stdout, b.stdout);
    let ha: serde_json::Value = serde_json::from_slice(&a.stdout).unwrap();
    let hc: serde_json::Value = serde_json::from_slice(&c.stdout).unwrap();
    assert_eq!(ha["hReport"], hc["hReport"]);
}

#[test]
fn strict_cap_exits_3() {
    let dir = TempDir::new().unwrap();
    let k5 = write(&dir, "k5.edges", &stdout(&raagh(&["generate", "clique-string", "--size", "5", "--count", "1"])));
    let o = raagh(&["compute", "--strict", "--cap", "4", s(&k5)]);
    assert_eq!(o.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&o.stderr).contains("cap"));
    let env = Command::new(env!("CARGO_BIN_EXE_raagh"))
        .args(["compute", "--strict", s(&k5)])
        .env("RAAGH_CAP", "4")
        .output()
        .unwrap();
    assert_eq!(env.status.code(), Some(3));
    // without --strict the run degrades to bounds
    let loose = raagh(&["compute", "--cap", "4", s(&k5)]);
    assert!(loose.status.success());
}

#[test]
fn input_errors_exit_2() {
    let dir = TempDir::new().unwrap();
    let o = raagh(&["compute", s(&dir.path().join("missing.edges"))]);
    assert_eq!(o.status.code(), Some(2));
    let bad = write(&dir, "bad.csv", "1,0\n0,0\n");
    let o = raagh(&["compute", s(&bad)]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("nonzero diagonal"));
    let dup = write(&dir, "dup.edges", "0 1\n1 0\n");
    let o = raagh(&["compute", s(&dup)]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 2"));
}

#[test]
fn generate_families() {
    for (args, n, e) in [
        (vec!["clique-string", "--size", "5", "--count", "2"], 8, 19),
        (vec!["complete", "--n", "4"], 4, 6),
        (vec!["face-string", "--count", "3"], 6, 12),
        (vec!["grid", "--rows", "2", "--cols", "2"], 9, 20),
        (vec!["hex-triangle", "--side", "4"], 15, 48),
    ] {
        for format in ["edges", "csv", "json"] {
            let mut a = vec!["generate"];
            a.extend(&args);
            a.extend(["--format", format]);
            let o = raagh(&a);
            assert!(o.status.success(), "{a:?}");
            let g = parse_graph(&stdout(&o), format.parse::<Format>().unwrap()).unwrap();
            assert_eq!((g.vertex_count(), g.edge_count()), (n, e), "{a:?}");
            assert!(g.certificate().is_some(), "{a:?}");
        }
    }
    let o = raagh(&["generate", "clique-string", "--size", "9", "--count", "2"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn form_template_and_alpha() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "g.edges", SHARED_TRIANGLE);
    let t = stdout(&raagh(&["form", s(&f)]));
    let rows: Vec<Vec<&str>> = t.lines().map(|l| l.split_whitespace().collect()).collect();
    assert_eq!(rows.len(), 9);
    assert_eq!(rows[0][6], "+1");
    assert_eq!(rows[1][4], "-1");
    assert_eq!(rows[4][7], "-2");
    assert_eq!(rows[8][3], "+2");
    let at = stdout(&raagh(&["form", s(&f), "--alpha", "11"]));
    assert!(at.contains("# rank 6 nullity 3"), "{at}");
    let o = raagh(&["form", s(&f), "--alpha", "1"]);
    assert_eq!(o.status.code(), Some(1));

    let k3 = write(&dir, "k3.edges", "0 1\n0 2\n1 2\n");
    assert_eq!(stdout(&raagh(&["form", s(&k3)])), "0 0 0\n0 0 0\n0 0 0\n");
}

#[test]
fn export_formats() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "g.edges", SHARED_TRIANGLE);
    let dot = stdout(&raagh(&["export", "--dot", s(&f)]));
    assert!(dot.starts_with("graph G {"));
    assert_eq!(dot.matches(" -- ").count(), 9);
    let out = dir.path().join("g.json");
    let o = raagh(&["export", "--to", "json", "--out", s(&out), s(&f)]);
    assert!(o.status.success());
    let back = parse_graph(&fs::read_to_string(&out).unwrap(), Format::Json).unwrap();
    let orig = parse_graph(SHARED_TRIANGLE, Format::EdgeList).unwrap();
    assert_eq!(back, orig);
}

#[test]
fn verify_paper_table() {
    let o = raagh(&["verify-paper", "--random", "40"]);
    let text = stdout(&o);
    assert!(o.status.success(), "{text}");
    assert_eq!(text.lines().filter(|l| l.contains("PASS")).count(), 12, "{text}");
}

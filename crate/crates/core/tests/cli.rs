use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use cwkit::graph::Graph;
use cwkit::uig::generate_h;
use serde_json::Value;
use tempfile::TempDir;

fn cwkit(out: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cwkit"))
        .arg("--out")
        .arg(out)
        .args(args)
        .env_remove("CWKIT_ORACLE_CAP")
        .output()
        .expect("binary runs")
}

fn manifest(out: &Path, cmd: &str) -> Value {
    let text = fs::read_to_string(out.join(format!("{cmd}.manifest.json"))).unwrap();
    serde_json::from_str(&text).unwrap()
}

fn p5() -> String {
    format!("{}/examples/p5.cwx", env!("CARGO_MANIFEST_DIR"))
}

fn write(dir: &Path, name: &str, g: &Graph) -> String {
    let p = dir.join(name);
    fs::write(&p, g.to_text()).unwrap();
    p.display().to_string()
}

#[test]
fn gen_h_with_dot() {
    let d = TempDir::new().unwrap();
    let o = cwkit(d.path(), &["gen-h", "5", "5", "--dot"]);
    assert!(o.status.success());
    let g = Graph::parse_text(&fs::read_to_string(d.path().join("h_5_5.graph")).unwrap()).unwrap();
    assert_eq!(g, generate_h(5, 5));
    let dot = fs::read_to_string(d.path().join("h_5_5.dot")).unwrap();
    assert!(dot.starts_with("graph h_5_5 {"));
    assert_eq!(dot.matches(" -- ").count(), g.edge_count());
}

#[test]
fn eval_and_width_of_p5() {
    let d = TempDir::new().unwrap();
    let o = cwkit(d.path(), &["eval", &p5()]);
    assert!(o.status.success());
    let g = Graph::parse_text(&String::from_utf8(o.stdout).unwrap()).unwrap();
    assert_eq!(g, cwkit::graph::path(&["a", "b", "c", "d", "e"]));
    let o = cwkit(d.path(), &["width", &p5()]);
    assert_eq!(String::from_utf8(o.stdout).unwrap().trim(), "3");
    assert_eq!(manifest(d.path(), "width")["widths"][0], 3);
}

#[test]
fn synth_then_verify() {
    let d = TempDir::new().unwrap();
    assert!(cwkit(d.path(), &["random-uig", "40", "8", "3"]).status.success());
    let g = d.path().join("uig_40_3.graph").display().to_string();
    let o = cwkit(d.path(), &["synth", &g, "--k", "3"]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let m = manifest(d.path(), "synth");
    assert_eq!(m["k"], 3);
    assert!(m["checks"].as_array().unwrap().iter().all(|c| c["pass"] == true));
    assert!(m["widths"][0].as_u64().unwrap() <= 960);
    let report: Value =
        serde_json::from_str(&fs::read_to_string(d.path().join("uig_40_3.report.json")).unwrap()).unwrap();
    assert_eq!(report["bound"], 960);
    let e = d.path().join("uig_40_3.cwx").display().to_string();
    let o = cwkit(d.path(), &["verify", &g, &e]);
    assert!(o.status.success());
    assert_eq!(String::from_utf8(o.stdout).unwrap().trim(), "pass");
}

#[test]
fn synth_with_forbidden_graph() {
    let d = TempDir::new().unwrap();
    let f = write(d.path(), "p4.graph", &cwkit::graph::path(&["a", "b", "c", "d"]));
    let g = write(d.path(), "h.graph", &generate_h(3, 3));
    let o = cwkit(d.path(), &["synth", &g, "--forbid", &f]);
    assert!(o.status.success());
    assert_eq!(manifest(d.path(), "synth")["k"], 4);
}

#[test]
fn exit_codes() {
    let d = TempDir::new().unwrap();
    let bad = d.path().join("bad.graph");
    fs::write(&bad, "graph 1 0\nq x\n").unwrap();
    let o = cwkit(d.path(), &["recognize", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).starts_with("error[parse]"));

    let claw = Graph::from_edges(&["c", "x", "y", "z"], &[("c", "x"), ("c", "y"), ("c", "z")]);
    let claw = write(d.path(), "claw.graph", &claw);
    let o = cwkit(d.path(), &["synth", &claw, "--k", "3"]);
    assert_eq!(o.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&o.stderr).starts_with("error[precondition]"));

    let p4 = write(d.path(), "p4.graph", &cwkit::graph::path(&["a", "b", "c", "d"]));
    let o = cwkit(d.path(), &["verify", &p4, &p5()]);
    assert_eq!(o.status.code(), Some(4));
    assert_eq!(manifest(d.path(), "verify")["checks"][0]["pass"], false);

    let h = write(d.path(), "h.graph", &generate_h(3, 3));
    let o = cwkit(d.path(), &["oracle", &h]);
    assert_eq!(o.status.code(), Some(5));
    assert!(String::from_utf8_lossy(&o.stderr).starts_with("error[size-cap]"));
}

#[test]
fn oracle_cap_from_environment() {
    let d = TempDir::new().unwrap();
    let k7 = write(d.path(), "k7.graph", &cwkit::graph::complete(7, "k"));
    let o = Command::new(env!("CARGO_BIN_EXE_cwkit"))
        .args(["--out", d.path().to_str().unwrap(), "oracle", &k7])
        .env("CWKIT_ORACLE_CAP", "7")
        .output()
        .unwrap();
    assert!(o.status.success());
    assert_eq!(String::from_utf8(o.stdout).unwrap().trim(), "2");
}

#[test]
fn structure_commands() {
    let d = TempDir::new().unwrap();
    let g = write(d.path(), "h.graph", &generate_h(4, 3));
    for cmd in ["recognize", "model", "clusters", "bg", "embed"] {
        let o = cwkit(d.path(), &[cmd, &g, "--dot"]);
        assert!(o.status.success(), "{cmd}: {}", String::from_utf8_lossy(&o.stderr));
    }
    for f in ["h.partition", "h.partition.dot", "h.model", "h.clusters", "h.bg.json", "h.bg.dot", "h.embedding"] {
        assert!(d.path().join(f).exists(), "{f}");
    }
    let partition = fs::read_to_string(d.path().join("h.partition")).unwrap();
    assert!(partition.starts_with("layer 0 "));
}

#[test]
fn manifests_are_reproducible() {
    let d = TempDir::new().unwrap();
    let strip = |mut v: Value| {
        v.as_object_mut().unwrap().remove("elapsed_ms");
        v
    };
    assert!(cwkit(d.path(), &["corpus", "--k", "3", "--count", "3", "--seed", "9"]).status.success());
    let first = strip(manifest(d.path(), "corpus"));
    let cwx = fs::read_to_string(d.path().join("corpus_k3_001.cwx")).unwrap();
    assert!(cwkit(d.path(), &["corpus", "--k", "3", "--count", "3", "--seed", "9"]).status.success());
    assert_eq!(strip(manifest(d.path(), "corpus")), first);
    assert_eq!(fs::read_to_string(d.path().join("corpus_k3_001.cwx")).unwrap(), cwx);
    assert_eq!(first["widths"].as_array().unwrap().len(), 3);
}

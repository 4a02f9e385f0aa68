use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn flagcomb(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_flagcomb"))
        .current_dir(dir)
        .args(args)
        .output()
        .expect("binary runs")
}

fn flagcomb_threads(dir: &Path, threads: &str, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_flagcomb"))
        .current_dir(dir)
        .env("FLAGCOMB_THREADS", threads)
        .args(args)
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("json on stdout")
}

#[test]
fn gen_then_fvec() {
    let dir = tempfile::tempdir().unwrap();
    let out = flagcomb(dir.path(), &["gen", "--family", "jmn", "--m", "3", "--n", "12", "--out", "j3_12.sc"]);
    assert_eq!(out.status.code(), Some(0));
    let out = flagcomb(dir.path(), &["fvec", "j3_12.sc"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(String::from_utf8_lossy(&out.stdout).trim(), "1 12 60 160 240 192 64");
}

#[test]
fn verify_codim2_on_cross_polytope() {
    let dir = tempfile::tempdir().unwrap();
    flagcomb(dir.path(), &["gen", "--family", "jmn", "--m", "3", "--n", "12", "--out", "j3_12.sc"]);
    let out = flagcomb(dir.path(), &["verify", "j3_12.sc", "--checks", "codim2"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert!(v["header"]["generated_unix"].is_u64());
    let report = &v["results"][0]["reports"][0];
    assert_eq!(report["check"], "codim2");
    let witnesses = report["witnesses"].as_array().unwrap();
    assert_eq!(witnesses.len(), 64);
    for w in witnesses {
        assert_eq!(w["lhs"], 60);
        assert_eq!(w["rhs"], 60);
    }
}

#[test]
fn hollow_triangle_is_not_flag() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(dir.path().join("hollow_triangle.sc"), "0 1\n1 2\n0 2\n").unwrap();
    let out = flagcomb(dir.path(), &["check", "hollow_triangle.sc", "--props", "flag"]);
    assert_eq!(out.status.code(), Some(1));
    let v = json(&out);
    let w = &v["results"][0]["reports"][0]["witnesses"][0];
    assert_eq!(w["face"], serde_json::json!([0, 1, 2]));
}

#[test]
fn input_errors_exit_two() {
    let dir = tempfile::tempdir().unwrap();
    let out = flagcomb(dir.path(), &["fvec", "x.sc", "--nonsense"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("Usage"));
    assert_eq!(flagcomb(dir.path(), &["fvec", "missing.sc"]).status.code(), Some(2));
    assert_eq!(flagcomb(dir.path(), &["gen", "--family", "jmn", "--m", "3", "--n", "11"]).status.code(), Some(2));
    assert_eq!(flagcomb(dir.path(), &["gen", "--family", "gal3"]).status.code(), Some(2));
    std::fs::write(dir.path().join("bad.sc"), "0 1\n1 x\n").unwrap();
    assert_eq!(flagcomb(dir.path(), &["fvec", "bad.sc"]).status.code(), Some(2));
    flagcomb(dir.path(), &["gen", "--family", "cycle", "--n", "5", "--out", "c5.sc"]);
    assert_eq!(flagcomb(dir.path(), &["check", "c5.sc", "--field", "4"]).status.code(), Some(2));
    assert_eq!(flagcomb(dir.path(), &["verify", "c5.sc", "--checks", "nope"]).status.code(), Some(2));
    assert_eq!(flagcomb(dir.path(), &["verify", "c5.sc", "--checks", "gamma"]).status.code(), Some(2));
    assert_eq!(flagcomb(dir.path(), &["bounds", "c5.sc", "--m", "2", "--b", "1/0"]).status.code(), Some(2));
}

#[test]
fn reports_are_reproducible() {
    let dir = tempfile::tempdir().unwrap();
    flagcomb(dir.path(), &["gen", "--family", "nonjoin5", "--n", "16", "--k", "4", "--out", "nj.sc"]);
    let args = ["verify", "nj.sc", "--checks", "codim2,eq1,vertexsum", "--no-header"];
    let a = flagcomb(dir.path(), &args);
    let b = flagcomb_threads(dir.path(), "1", &args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    assert!(json(&a).get("header").is_none());
}

#[test]
fn bounds_on_non_join() {
    let dir = tempfile::tempdir().unwrap();
    flagcomb(dir.path(), &["gen", "--family", "nonjoin5", "--n", "16", "--k", "4", "--out", "nj.sc"]);
    let out = flagcomb(dir.path(), &["bounds", "nj.sc", "--m", "3", "--format", "csv", "--out", "nj.csv"]);
    assert_eq!(out.status.code(), Some(0));
    let text = std::fs::read_to_string(dir.path().join("nj.csv")).unwrap();
    let rows: Vec<&str> = text.lines().collect();
    assert_eq!(rows[0], "complex,check,status,lhs,rhs,equality,witnesses,failures");
    assert!(rows.iter().any(|r| r.starts_with("nj.sc,ubt,pass,136,150,false")));
    assert!(rows.iter().any(|r| r.starts_with("nj.sc,m_sigma,pass,")));
    let out = flagcomb(dir.path(), &["bounds", "nj.sc", "--m", "3", "--b", "1"]);
    assert_eq!(out.status.code(), Some(1));
    let v = json(&out);
    let reports = v["results"][0]["reports"].as_array().unwrap();
    let near = reports.iter().find(|r| r["check"] == "near_extremal").unwrap();
    assert!(near["notes"].as_array().unwrap().iter().any(|n| n.as_str().unwrap().contains("7/128")));
}

#[test]
fn extremal_distinguishes_joins() {
    let dir = tempfile::tempdir().unwrap();
    flagcomb(dir.path(), &["gen", "--family", "jmn", "--m", "3", "--n", "13", "--out", "j.sc"]);
    flagcomb(dir.path(), &["gen", "--family", "nonjoin5", "--n", "17", "--k", "5", "--out", "nj.sc"]);
    assert_eq!(flagcomb(dir.path(), &["extremal", "j.sc"]).status.code(), Some(0));
    assert_eq!(flagcomb(dir.path(), &["extremal", "nj.sc"]).status.code(), Some(1));
}

#[test]
fn graph_input_and_three_manifolds() {
    let dir = tempfile::tempdir().unwrap();
    let mut edges = String::from("# 4-cycle\n");
    for i in 0..4 {
        edges.push_str(&format!("{} {}\n", i, (i + 1) % 4));
    }
    std::fs::write(dir.path().join("c4.g"), edges).unwrap();
    let out = flagcomb(dir.path(), &["fvec", "c4.g"]);
    assert_eq!(String::from_utf8_lossy(&out.stdout).trim(), "1 4 4");
    flagcomb(dir.path(), &["gen", "--family", "gal3", "--n", "12", "--out", "g.sc"]);
    let out = flagcomb(dir.path(), &["verify", "g.sc", "--checks", "codim2,akformula,eq1,vertexsum,linkineq,ns"]);
    assert_eq!(out.status.code(), Some(0));
    let out = flagcomb(dir.path(), &["check", "g.sc"]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn corpus_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let out = flagcomb(dir.path(), &["corpus", "--max-n", "14", "--out", "corpus"]);
    assert_eq!(out.status.code(), Some(0));
    let manifest: Value =
        serde_json::from_str(&std::fs::read_to_string(dir.path().join("corpus/manifest.json")).unwrap()).unwrap();
    let entries = manifest["entries"].as_array().unwrap();
    assert!(entries.len() >= 15);
    let j3 = entries.iter().find(|e| e["name"] == "J3_12").unwrap();
    assert_eq!(j3["file"], "J3_12.sc");
    let out = flagcomb(dir.path(), &["fvec", "corpus/J3_12.sc"]);
    assert_eq!(String::from_utf8_lossy(&out.stdout).trim(), "1 12 60 160 240 192 64");
    let first = std::fs::read(dir.path().join("corpus/manifest.json")).unwrap();
    flagcomb(dir.path(), &["corpus", "--max-n", "14", "--out", "corpus"]);
    assert_eq!(first, std::fs::read(dir.path().join("corpus/manifest.json")).unwrap());
}

use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn fixture(name: &str) -> String {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../core/fixtures");
    dir.join(format!("{name}.json")).display().to_string()
}

fn rdc(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_rdc"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

#[test]
fn classify_reports_the_hasse_cycle() {
    let out = rdc(&["classify", &fixture("non_acyclic_atom")]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["acyclic"], false);
    assert_eq!(v["strongly_dw"], true);
    assert_eq!(v["class"], "strongly-dw-acyclic");
    let hasse = v["certificates"]
        .as_array()
        .unwrap()
        .iter()
        .find(|c| c["graph"] == "hasse")
        .unwrap();
    assert!(hasse["cycle"].as_array().is_some_and(|c| !c.is_empty()));
}

#[test]
fn two_globes_have_two_one_layerings() {
    let out = rdc(&["layerings", &fixture("two_globes"), "--k", "1"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["count"], 2);
    let out = rdc(&["orderings", &fixture("two_globes"), "--k", "0"]);
    assert_eq!(json(&out)["count"], 1);
}

#[test]
fn cospan_is_a_complex_but_not_a_molecule() {
    let out = rdc(&["molecule", &fixture("cospan")]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(json(&out)["molecule"], false);
    let out = rdc(&["validate", &fixture("cospan")]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["molecule"], false);
    let out = rdc(&["layerings", &fixture("cospan"), "--k", "0"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn malformed_input_exits_with_two() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, r#"{"elements":[[{"in":[],"out":[]}],[{"in":[0],"out":[0]}]]}"#).unwrap();
    assert_eq!(rdc(&["validate", bad.to_str().unwrap()]).status.code(), Some(2));
    std::fs::write(&bad, "not json").unwrap();
    assert_eq!(rdc(&["classify", bad.to_str().unwrap()]).status.code(), Some(2));
    assert_eq!(
        rdc(&["dot", &fixture("arrow"), "--graph", "flow"]).status.code(),
        Some(2)
    );
    assert_eq!(rdc(&["frobnicate"]).status.code(), Some(2));
}

#[test]
fn constructions_write_diagrams() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("out.json");
    let o = out.to_str().unwrap();
    let arrow = fixture("arrow");
    let status = rdc(&["gray", &arrow, &arrow, "-o", o]);
    assert_eq!(status.status.code(), Some(0));
    let square: Value = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    let sizes: Vec<usize> = square["elements"]
        .as_array()
        .unwrap()
        .iter()
        .map(|g| g.as_array().unwrap().len())
        .collect();
    assert_eq!(sizes, [4, 4, 1]);
    assert_eq!(rdc(&["molecule", o]).status.code(), Some(0));

    let v = json(&rdc(&["susp", &arrow]));
    assert_eq!(v["elements"].as_array().unwrap().len(), 3);
    let v = json(&rdc(&["join", &arrow, &fixture("point")]));
    assert_eq!(v["elements"].as_array().unwrap().len(), 3);
    let v = json(&rdc(&["dual", &arrow, "--dims", "1"]));
    assert_eq!(v["elements"][1][0]["in"], serde_json::json!([1]));
    let v = json(&rdc(&["paste", &arrow, &arrow, "--k", "0"]));
    assert_eq!(v["elements"][1].as_array().unwrap().len(), 2);
    assert_eq!(rdc(&["paste", &arrow, &arrow, "--k", "1"]).status.code(), Some(1));
}

#[test]
fn boundaries() {
    let v = json(&rdc(&["boundary", &fixture("path2"), "--dim", "0", "--sign", "+"]));
    assert_eq!(v["elements"], serde_json::json!(["(0,2)"]));
    let v = json(&rdc(&[
        "boundary",
        &fixture("whiskered_globe"),
        "--dim",
        "1",
        "--sign",
        "both",
    ]));
    assert!(v["elements"]
        .as_array()
        .unwrap()
        .iter()
        .all(|x| x.as_str().unwrap().starts_with("(0") || x.as_str().unwrap().starts_with("(1")));
}

#[test]
fn cells_chain_and_comparison() {
    let v = json(&rdc(&[
        "cells",
        &fixture("loop_graph"),
        "--max-dim",
        "1",
        "--bound",
        "3",
    ]));
    assert_eq!(v["counts"], serde_json::json!([2, 13]));
    assert_eq!(v["complete"], false);
    let v = json(&rdc(&["cells", &fixture("arrow"), "--max-dim", "1", "--shapes"]));
    assert_eq!(v["cells"].as_array().unwrap().len(), 3);
    let v = json(&rdc(&["chain", &fixture("arrow")]));
    assert_eq!(
        v["complex"],
        serde_json::json!({"basis":[2,1],"boundary":[[[-1],[1]]],"augmentation":[1,1]})
    );
    assert_eq!(v["strong_steiner"], true);
    let v = json(&rdc(&["chain", &fixture("non_dw_acyclic_atom")]));
    assert_eq!(v["steiner"], false);
    let v = json(&rdc(&["compare-nu", &fixture("whiskered_globe"), "--max-dim", "2"]));
    assert_eq!(v["isomorphic"], true);
    let v = json(&rdc(&[
        "compare-nu",
        &fixture("loop_graph"),
        "--max-dim",
        "1",
        "--bound",
        "4",
    ]));
    assert_eq!(v["isomorphic"], false);
}

#[test]
fn dot_marks_input_faces() {
    let out = rdc(&["dot", &fixture("arrow"), "--graph", "hasse"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("\"(0,0)\" -> \"(1,0)\" [style=dashed];"));
    assert!(text.contains("\"(1,0)\" -> \"(0,1)\";\n"));
    let out = rdc(&["dot", &fixture("non_acyclic_atom"), "--graph", "extflow:2"]);
    let golden = include_str!("../../core/tests/golden/non_acyclic_extflow2.dot");
    assert_eq!(String::from_utf8(out.stdout).unwrap(), golden);
}

#[test]
fn output_is_deterministic() {
    for args in [
        vec!["classify", "non_acyclic_atom"],
        vec!["layerings", "two_globes", "--k", "1"],
        vec!["cells", "grid", "--max-dim", "2", "--shapes"],
        vec!["chain", "whiskered_globe"],
    ] {
        let path = fixture(args[1]);
        let mut full = args.clone();
        full[1] = &path;
        let (a, b) = (rdc(&full), rdc(&full));
        assert_eq!(a.stdout, b.stdout, "{args:?}");
        assert!(!a.stdout.is_empty());
    }
}

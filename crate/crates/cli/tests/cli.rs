use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn ptekit(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ptekit"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("JSON on stdout")
}

fn path(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn verify_halving() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("halving.json");
    fs::write(
        &file,
        r#"{"dimension":3,"degree":2,"classes":[[["0","0","0"],["0","1","1"],["1","0","1"],["1","1","0"]],[["1","0","0"],["0","1","0"],["0","0","1"],["1","1","1"]]]}"#,
    )
    .unwrap();
    let out = ptekit(&["verify", "--input", path(&file), "--check", "proper,degree"]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    let report = json(&out);
    assert_eq!(report["holds"], true);
    assert_eq!(report["proper"], true);
    assert_eq!(report["maxVerifiedDegree"], 2);

    let out = ptekit(&["verify", "--input", path(&file), "--check", "ideal"]);
    assert_eq!(code(&out), 1);
    assert_eq!(json(&out)["ideal"], false);
}

#[test]
fn verify_reports_failures() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("bad.json");
    fs::write(&file, r#"{"dimension":1,"degree":2,"classes":[[["1"],["2"],["-3"]],[["-4"],["0"],["4"]]]}"#).unwrap();
    let out = ptekit(&["verify", "--input", path(&file)]);
    assert_eq!(code(&out), 1);
    let report = json(&out);
    assert_eq!(report["holds"], false);
    assert_eq!(report["firstFailure"]["kind"], "powerSum");

    fs::write(&file, r#"{"dimension":2,"degree":2,"classes":[[["1","2"]],[["1"]]]}"#).unwrap();
    assert_eq!(code(&ptekit(&["verify", "--input", path(&file)])), 2);
    assert_eq!(code(&ptekit(&["verify", "--input", "/nonexistent/file.json"])), 2);
}

#[test]
fn construct_round_trips_through_verify() {
    let dir = tempfile::tempdir().unwrap();
    let cases: &[&[&str]] = &[
        &["halving"],
        &["parity", "--r", "5"],
        &["fano"],
        &["gddz8"],
        &["paley", "--p", "11"],
        &["lat", "--k", "3"],
        &["prouhet", "--alpha", "3", "--m", "2"],
        &["nonbinary"],
    ];
    for (i, args) in cases.iter().enumerate() {
        let file = dir.path().join(format!("c{i}.json"));
        let mut full = vec!["construct"];
        full.extend_from_slice(args);
        full.extend_from_slice(&["--out", path(&file)]);
        let out = ptekit(&full);
        assert_eq!(code(&out), 0, "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
        assert!(out.stdout.is_empty());
        let out = ptekit(&["verify", "--input", path(&file)]);
        assert_eq!(code(&out), 0, "{args:?}");
    }
}

#[test]
fn construct_rejects_bad_parameters() {
    assert_eq!(code(&ptekit(&["construct", "paley", "--p", "13"])), 2);
    assert_eq!(code(&ptekit(&["construct", "lat", "--k", "2", "--theta", "1"])), 2);
    assert_eq!(code(&ptekit(&["construct", "frobnicate"])), 2);
    assert_eq!(code(&ptekit(&["verify"])), 2);
}

#[test]
fn output_is_byte_stable() {
    let a = ptekit(&["construct", "gddz8"]);
    let b = ptekit(&["--threads", "1", "construct", "gddz8"]);
    assert_eq!(a.stdout, b.stdout);
    let a = ptekit(&["search", "--dim", "1", "--degree", "2", "--size", "3", "--min", "-4", "--max", "4"]);
    let b = ptekit(&["--threads", "1", "search", "--dim", "1", "--degree", "2", "--size", "3", "--min", "-4", "--max", "4"]);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn bound_on_witt() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("witt.json");
    assert_eq!(code(&ptekit(&["construct", "witt", "--out", path(&file)])), 0);
    let out = ptekit(&["bound", "--input", path(&file), "--domain", "sphere:7", "--t", "2"]);
    assert_eq!(code(&out), 0);
    let cert = json(&out);
    assert_eq!(cert["tight"], true);
    assert_eq!(cert["dim"], 253);
    assert_eq!(code(&ptekit(&["bound", "--input", path(&file), "--domain", "ball", "--t", "2"])), 2);
}

#[test]
fn bound_on_explicit_domain() {
    let dir = tempfile::tempdir().unwrap();
    let inst = dir.path().join("nb.json");
    let grid = dir.path().join("grid.json");
    assert_eq!(code(&ptekit(&["construct", "nonbinary", "--out", path(&inst)])), 0);
    let points: Vec<[String; 2]> = (0..6)
        .flat_map(|x| (0..6).map(move |y| [x.to_string(), y.to_string()]))
        .collect();
    fs::write(&grid, serde_json::to_string(&points).unwrap()).unwrap();
    let domain = format!("explicit:{}", path(&grid));
    let out = ptekit(&["bound", "--input", path(&inst), "--domain", &domain, "--t", "2", "--require-tight"]);
    assert_eq!(code(&out), 0);
    assert_eq!(json(&out)["n"], 6);
}

#[test]
fn lift_borwein_and_cartesian() {
    let out = ptekit(&["lift", "borwein", "--dim", "1", "--a", "2", "--b", "7"]);
    assert_eq!(code(&out), 0);
    assert_eq!(json(&out)["degree"], 5);
    assert_eq!(code(&ptekit(&["lift", "borwein", "--dim", "1", "--a", "1", "--b", "2"])), 2);

    let dir = tempfile::tempdir().unwrap();
    let triples = dir.path().join("t.json");
    fs::write(&triples, r#"{"aValues":["18","-20","2"],"bValues":["10","12","-22"]}"#).unwrap();
    let out = ptekit(&["lift", "borwein", "--dim", "3", "--triples", path(&triples)]);
    assert_eq!(code(&out), 0);
    assert_eq!(json(&out)["dimension"], 3);

    let st = dir.path().join("st.json");
    fs::write(&st, r#"{"dimension":1,"degree":1,"classes":[[["1"],["6"]],[["2"],["5"]],[["3"],["4"]]]}"#).unwrap();
    let latin = dir.path().join("l.json");
    fs::write(&latin, r#"{"kind":"latin","params":{"order":3},"grid":[[1,3,2],[2,1,3],[3,2,1]]}"#).unwrap();
    let u = dir.path().join("u.json");
    let out = ptekit(&["lift", "cartesian", "--s", path(&st), "--t", path(&st), "--latin", path(&latin), "--out", path(&u)]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    let out = ptekit(&["lift", "jacroux", "--input", path(&u), "--alpha", "3", "--ns", "2"]);
    assert_eq!(code(&out), 0);
    let reduced = json(&out);
    assert_eq!(reduced["classes"].as_array().unwrap().len(), 3);
    assert_eq!(reduced["classes"][0][0][0], "1");
}

#[test]
fn lift_oa_from_documents() {
    let dir = tempfile::tempdir().unwrap();
    let rows: Vec<[String; 2]> = (0..3)
        .flat_map(|x| (0..3).map(move |y| [x.to_string(), y.to_string()]))
        .collect();
    let oa = dir.path().join("oa.json");
    fs::write(
        &oa,
        serde_json::json!({"kind": "oa", "params": {"strength": 2}, "rows": rows}).to_string(),
    )
    .unwrap();
    let base = dir.path().join("base.json");
    fs::write(&base, r#"{"aValues":["18","-20","2"],"bValues":["10","12","-22"]}"#).unwrap();
    let out = ptekit(&["lift", "oa", "--oa", path(&oa), "--base", path(&base), "--m", "2"]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    let inst = json(&out);
    assert_eq!(inst["degree"], 5);
    assert_eq!(inst["classes"][0].as_array().unwrap().len(), 18);

    let design = ptekit(&["design", "--input", path(&oa)]);
    assert_eq!(code(&design), 0);
    assert_eq!(json(&design)["valid"], true);
}

#[test]
fn design_check_negative() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("d.json");
    fs::write(&file, r#"{"kind":"latin","params":{"order":2},"grid":[[1,1],[2,2]]}"#).unwrap();
    let out = ptekit(&["design", "--input", path(&file)]);
    assert_eq!(code(&out), 1);
    assert_eq!(json(&out)["valid"], false);
    fs::write(&file, r#"{"kind":"tree"}"#).unwrap();
    assert_eq!(code(&ptekit(&["design", "--input", path(&file)])), 2);
}

#[test]
fn search_streams_json_lines() {
    let out = ptekit(&["search", "--dim", "1", "--degree", "2", "--size", "3", "--min", "-3", "--max", "3", "--limit", "2"]);
    assert_eq!(code(&out), 0);
    let text = String::from_utf8(out.stdout).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert!(!lines.is_empty() && lines.len() <= 2);
    for line in lines {
        let v: Value = serde_json::from_str(line).unwrap();
        assert_eq!(v["degree"], 2);
    }
    let none = ptekit(&["search", "--dim", "1", "--degree", "1", "--size", "1", "--min", "0", "--max", "1"]);
    assert_eq!(code(&none), 1);
    let huge = ptekit(&["search", "--dim", "3", "--degree", "2", "--size", "6", "--min", "-20", "--max", "20"]);
    assert_eq!(code(&huge), 2);
}

//! End-to-end runs of the binary: exit codes, error reporting and output.

use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn fixture(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("fixtures")
        .join(name)
        .to_str()
        .unwrap()
        .to_string()
}

fn chiralg(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_chiralg"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("JSON on stdout")
}

fn stderr(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).into_owned()
}

#[test]
fn virasoro_ope_has_quartic_pole() {
    let out = chiralg(&["ope", "--preset", "virasoro", "--level", "c"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["poles"]["4"], "(c/2)Ω");
    assert_eq!(v["poles"]["2"], "2l");
    assert_eq!(v["poles"]["1"], "Tl");
}

#[test]
fn envelope_dims_from_file() {
    let out = chiralg(&["envelope-dims", "--input", &fixture("virasoro.json"), "--cutoff", "6"]);
    assert_eq!(out.status.code(), Some(0));
    // weights with no states are left out
    let listed: Vec<(String, u64)> = json(&out)["dims"]
        .as_array()
        .unwrap()
        .iter()
        .map(|d| (d["weight"].as_str().unwrap().to_string(), d["dim"].as_u64().unwrap()))
        .collect();
    let dims: Vec<u64> = (0..=6)
        .map(|w| listed.iter().find(|x| x.0 == w.to_string()).map_or(0, |x| x.1))
        .collect();
    assert_eq!(dims, vec![1, 0, 1, 1, 2, 2, 4]);
}

#[test]
fn failed_checks_exit_one_with_witness() {
    let out = chiralg(&["vla-check", "--input", &fixture("broken-skew.json")]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stdout).contains("skew"));

    let out = chiralg(&["brst", "--lie", "abelian", "--matter", "heisenberg", "--cutoff", "2"]);
    assert_eq!(out.status.code(), Some(1));
    let v = json(&out);
    assert_eq!(v["d_squared"]["zero"], false);
    assert_eq!(v["d_squared"]["witness"]["value"], "(k)Tpsi*_a");

    let out = chiralg(&["operad-check", "--fixture", "matrices"]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(json(&out)["passed"], false);

    let out = chiralg(&["localize", "--input", &fixture("p1-missing-point.json")]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(json(&out)["iso_after_localization"], false);
}

#[test]
fn input_errors_exit_two() {
    let out = chiralg(&["koszul", "--input", &fixture("malformed.json")]);
    assert_eq!(out.status.code(), Some(2));
    let text = std::fs::read_to_string(fixture("malformed.json")).unwrap();
    let offset = text.find(",,").unwrap() + 1;
    assert!(stderr(&out).contains(&format!("malformed JSON at byte {offset}")), "{}", stderr(&out));

    let out = chiralg(&["koszul", "--input", &fixture("bad-schema.json")]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("schema violation at /basis/1/degree"), "{}", stderr(&out));

    let out = chiralg(&["operad-check", "--input", &fixture("alg-commutative-only.json")]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("needs the π table"), "{}", stderr(&out));

    let out = chiralg(&["koszul", "--input", "/nonexistent/file.json"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("cannot read"));
}

#[test]
fn usage_errors_exit_two() {
    for args in [
        &["brst", "--lie", "sl2", "--cutoff", "-1"][..],
        &["conf", "--n", "7", "--d", "2"],
        &["conf", "--n", "3", "--d", "1"],
        &["ope", "--preset", "no-such-preset"],
        &["no-such-verb"],
        &["operad-check", "--fixture", "matrices", "--preset", "P_x"],
    ] {
        let out = chiralg(args);
        assert_eq!(out.status.code(), Some(2), "{args:?}: {}", stderr(&out));
        assert!(out.stdout.is_empty(), "{args:?}");
    }
}

#[test]
fn help_and_version_exit_zero() {
    let out = chiralg(&["--help"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8_lossy(&out.stdout);
    for verb in ["vla-check", "ope", "envelope-dims", "brst", "koszul", "cartan", "localize", "operad-check", "conf", "presets"] {
        assert!(text.contains(verb), "{verb} missing from help");
    }
    assert_eq!(chiralg(&["--version"]).status.code(), Some(0));
}

#[test]
fn operad_emit_round_trips() {
    let out = chiralg(&["operad-check", "--fixture", "bd0-exterior", "--emit"]);
    assert_eq!(out.status.code(), Some(0));
    let path = std::env::temp_dir().join(format!("chiralg-emit-{}.json", std::process::id()));
    std::fs::write(&path, &out.stdout).unwrap();
    let checked = chiralg(&["operad-check", "--input", path.to_str().unwrap()]);
    std::fs::remove_file(&path).ok();
    assert_eq!(checked.status.code(), Some(0), "{}", stderr(&checked));
    let v = json(&checked);
    assert_eq!(v["preset"], "BD_0");
    assert_eq!(v["passed"], true);
}

#[test]
fn specialization_flag() {
    let out = chiralg(&["operad-check", "--fixture", "heisenberg-bd1", "--specialize", "0", "--preset", "P_1"]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let out = chiralg(&["operad-check", "--fixture", "heisenberg-bd1", "--specialize", "1", "--preset", "Comm"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn conf_and_table_format() {
    let out = chiralg(&["conf", "--n", "3", "--d", "2"]);
    let v = json(&out);
    assert_eq!(v["poincare"], "1 + 3t + 2t^2");
    assert_eq!(v["total"], 6);
    let table = chiralg(&["--format", "table", "conf", "--n", "3", "--d", "2"]);
    assert_eq!(table.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&table.stdout).contains("poincare: 1 + 3t + 2t^2"));
}

#[test]
fn koszul_and_cartan_reports() {
    let v = json(&chiralg(&["koszul", "--input", &fixture("regular-lambda.json")]));
    assert_eq!(v["mixed_cohomology"].as_array().map(Vec::len), Some(2));
    assert_eq!(v["cohomology"], "Q in degree 0");
    let v = json(&chiralg(&["koszul", "--input", &fixture("trivial-h.json")]));
    assert_eq!(v["cohomology"], "Q[u] in degree 0 ⊕ Q[u] in degree 2");
    let v = json(&chiralg(&["cartan", "--weights", "1", "--cutoff", "6"]));
    assert_eq!(v["cohomology"], "Q[u] in degree 0");
}

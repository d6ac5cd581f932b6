use std::process::{Command, Output};

use eorb_core::epoly::BivariatePolynomial;
use serde_json::Value;

fn eorb(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_eorb")).args(args).output().expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn stderr(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).into_owned()
}

fn text_total(out: &Output) -> BivariatePolynomial {
    let stdout = String::from_utf8_lossy(&out.stdout);
    let line = stdout.lines().find_map(|l| l.strip_prefix("total: ")).expect("total line");
    BivariatePolynomial::parse_text(line).unwrap()
}

fn json_total(v: &Value) -> BivariatePolynomial {
    serde_json::from_value(v["total"].clone()).unwrap()
}

const G2: &str = "label G2\nrank 2\ndenominator 1\nbasis\n1 0\n0 1\ngram\n6 -3\n-3 2\ngenerators\n-1 1\n0 1\n1 0\n3 -1\n";

#[test]
fn sl2_betti_compute() {
    let out = eorb(&["compute", "--group", "sl", "2", "1", "--space", "betti"]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let v = json(&out);
    assert_eq!(v["classes"].as_array().unwrap().len(), 2);
    assert_eq!(json_total(&v), BivariatePolynomial::from_int_terms(&[(2, 2, 1), (1, 1, 4), (0, 0, 1)]));
}

#[test]
fn text_and_json_totals_agree() {
    let args = ["compute", "--group", "classical", "B", "2", "sc", "--space", "mixed"];
    let j = eorb(&args);
    let t = eorb(&[&args[..], &["--format", "text"]].concat());
    assert_eq!(t.status.code(), Some(0), "{}", stderr(&t));
    assert_eq!(text_total(&t), json_total(&json(&j)));
}

#[test]
fn json_round_trips_byte_for_byte() {
    let out = eorb(&["mirror-check", "--group", "sl", "4", "2", "--space", "dolbeault"]);
    let v = json(&out);
    let again = serde_json::to_string_pretty(&v).unwrap();
    assert_eq!(again.trim_end(), String::from_utf8_lossy(&out.stdout).trim_end());
}

#[test]
fn mirror_check_sl6_mod_2() {
    let out = eorb(&["mirror-check", "--group", "sl", "6", "2", "--space", "abelian-surface"]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let v = json(&out);
    assert_eq!(v["verdict"], "equal");
    assert_eq!(v["total"], v["dual_total"]);
    assert!(v["dual_classes"].is_array());
}

#[test]
fn cross_validate_sl4_mod_2() {
    let out = eorb(&["cross-validate", "--group", "sl", "4", "2", "--space", "abelian-surface"]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let v = json(&out);
    assert_eq!(v["verdict"], "equal");
    assert_eq!(v["total"], v["closed_form_total"]);
}

#[test]
fn closed_form_matches_compute() {
    let cf = eorb(&["closed-form", "--n", "4", "--m", "2", "--d", "4", "--surface", "abelian"]);
    assert_eq!(cf.status.code(), Some(0), "{}", stderr(&cf));
    let cf = json(&cf);
    assert_eq!(cf["classes"].as_array().unwrap().len(), 5);
    let comp = json(&eorb(&["compute", "--group", "sl", "4", "2", "--space", "abelian-surface"]));
    assert_eq!(cf["total"], comp["total"]);
}

#[test]
fn duality_check_passes() {
    let out = eorb(&["duality-check", "--group", "classical", "C", "3", "ad", "--format", "text"]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    assert!(String::from_utf8_lossy(&out.stdout).contains("verdict: equal"));
}

#[test]
fn custom_datum_file() {
    let dir = std::env::temp_dir().join(format!("eorb-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let good = dir.join("g2.datum");
    std::fs::write(&good, G2).unwrap();
    let out = eorb(&["mirror-check", "--group", "custom", good.to_str().unwrap(), "--space", "betti"]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));

    let bad = dir.join("bad.datum");
    std::fs::write(&bad, G2.replace("3 -1", "3 -2")).unwrap();
    let out = eorb(&["compute", "--group", "custom", bad.to_str().unwrap(), "--space", "betti"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).contains("bad.datum"), "{}", stderr(&out));
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn usage_errors_exit_one() {
    let cases: &[&[&str]] = &[
        &["compute", "--group", "sl", "4", "3", "--space", "betti"],
        &["compute", "--group", "su", "4", "--space", "betti"],
        &["compute", "--group", "sl", "4", "1", "--space", "quantum"],
        &["compute", "--group", "sl", "6", "1", "--space", "betti", "--cap", "100"],
        &["compute", "--group", "custom", "/nonexistent/file", "--space", "betti"],
        &["closed-form", "--n", "4", "--m", "2", "--d", "1", "--surface", "abelian"],
        &["cross-validate", "--group", "classical", "B", "2", "sc", "--space", "betti"],
        &["cross-validate", "--group", "sl", "3", "1", "--space", "mixed"],
        &["frobnicate"],
    ];
    for args in cases {
        let out = eorb(args);
        assert_eq!(out.status.code(), Some(1), "{args:?}");
        assert!(!stderr(&out).is_empty(), "{args:?}");
    }
    let out = eorb(&["compute", "--group", "sl", "4", "1", "--space", "quantum"]);
    assert!(stderr(&out).starts_with("eorb: ") && stderr(&out).contains("quantum"));
}

#[test]
fn help_exits_zero() {
    assert_eq!(eorb(&["--help"]).status.code(), Some(0));
    assert_eq!(eorb(&["compute", "--help"]).status.code(), Some(0));
}

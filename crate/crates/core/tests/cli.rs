use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_dualnet"))
}

fn input(name: &str, text: &str) -> PathBuf {
    let path = std::env::temp_dir().join(format!("dualnet_cli_{}_{name}", std::process::id()));
    std::fs::write(&path, text).unwrap();
    path
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().unwrap()
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&out.stdout)))
}

fn assert_report_schema(v: &Value) {
    assert!(v["task"].is_string());
    let overall = v["overall"].as_str().unwrap();
    assert!(["pass", "fail", "timeout"].contains(&overall), "{overall}");
    let checks = v["checks"].as_array().unwrap();
    assert!(!checks.is_empty());
    for c in checks {
        assert!(c["name"].is_string());
        assert!(["pass", "fail", "skipped", "timeout"].contains(&c["status"].as_str().unwrap()));
        assert!(c["detail"].is_string());
        assert!(c["elapsed_ms"].is_u64());
    }
}

#[test]
fn gb_textbook_json() {
    let f = input("gb.txt", "x^2 - 1\nx*y - 1\n");
    let out = run(&["--format", "json", "gb", "--order", "lex:x,y", f.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["generators"], serde_json::json!(["y^2 - 1", "x - y"]));
    assert_eq!(v["algorithm"], "buchberger");
    assert!(v["certificate"]["spairs_checked"].as_u64().unwrap() > 0);
}

#[test]
fn gb_mod_p_defaults_to_f4() {
    let f = input("gbp.txt", "x*y - 1\nx^2 + y\n");
    let out = run(&["--format", "json", "gb", "--order", "degrevlex:x,y", "--mod", "101", f.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["algorithm"], "f4");
    let bb = run(&["--format", "json", "gb", "--order", "degrevlex:x,y", "--mod", "101", "--algorithm", "buchberger", f.to_str().unwrap()]);
    assert_eq!(json(&bb)["generators"], v["generators"]);
}

#[test]
fn gb_extended_lists_cofactors() {
    let f = input("gbx.txt", "x^2 - 1\nx*y - 1\n");
    let out = run(&["--format", "json", "gb", "--order", "lex:x,y", "--extended", f.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["cofactors"].as_array().unwrap().len(), 2);
}

#[test]
fn resultant_eliminates() {
    let f = input("res.txt", "x^2 + y^2 - 1\nx - y\n");
    let out = run(&["resultant", "--var", "x", f.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(String::from_utf8_lossy(&out.stdout).trim(), "2*y^2 - 1");
}

#[test]
fn lame_search_closes_corrected_seed() {
    let out = run(&["--format", "json", "lame", "search", "c2c4", "--seed", "1_1,1_2,1_3,3_1,7_2,7_3,6_1,5_3,3_3"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["reached_goal"], true);
    assert_eq!(v["known"].as_str().unwrap().split(',').count(), 24);
}

#[test]
fn verify_exit_codes_and_schema() {
    let ok = run(&["--format", "json", "verify", "c2c4"]);
    assert_eq!(ok.status.code(), Some(0));
    let v = json(&ok);
    assert_report_schema(&v);
    assert_eq!(v["overall"], "pass");

    let bad = run(&["--format", "json", "verify", "c2c4", "--seed", "literal"]);
    assert_eq!(bad.status.code(), Some(1));
    assert_eq!(json(&bad)["overall"], "fail");

    let uv = run(&["--format", "json", "verify", "c3c3", "--part", "uv"]);
    assert_eq!(uv.status.code(), Some(0));
    assert_report_schema(&json(&uv));
}

#[test]
fn input_errors_exit_2() {
    let f = input("bad.txt", "x^2 - 1\nx*z - 1\n");
    let out = run(&["gb", "--order", "lex:x,y", f.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("unknown variable"));

    assert_eq!(run(&["gb", "--order", "lex:x,y", "/nonexistent/dualnet"]).status.code(), Some(2));
    assert_eq!(run(&["gb", "--order", "weird:x", f.to_str().unwrap()]).status.code(), Some(2));
    assert_eq!(run(&["verify", "c2c4", "--bogus"]).status.code(), Some(2));
}

#[test]
fn budget_exceeded_exits_3() {
    let f = input(
        "c5.txt",
        "a+b+c+d+e\na*b+b*c+c*d+d*e+e*a\na*b*c+b*c*d+c*d*e+d*e*a+e*a*b\na*b*c*d+b*c*d*e+c*d*e*a+d*e*a*b+e*a*b*c\na*b*c*d*e-1\n",
    );
    let out = run(&["gb", "--order", "lex:a,b,c,d,e", "--budget-secs", "0", f.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stderr).contains("budget"));
}

#[test]
fn out_flag_writes_file() {
    let f = input("o.txt", "x - 1\n");
    let dest = std::env::temp_dir().join(format!("dualnet_cli_{}_out.json", std::process::id()));
    let out = run(&["--format", "json", "--out", dest.to_str().unwrap(), "gb", "--order", "lex:x", f.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&dest).unwrap()).unwrap();
    assert_eq!(v["generators"], serde_json::json!(["x - 1"]));
    let _ = std::fs::remove_file(dest);
}

use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn example(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("examples").join(name)
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_wreathcc"))
        .args(args)
        .output()
        .unwrap()
}

fn run_json(args: &[&str]) -> (Value, i32) {
    let mut all = args.to_vec();
    all.push("--json");
    let out = run(&all);
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text.lines().count(), 1, "one record per command: {text}");
    (serde_json::from_str(&text).unwrap(), out.status.code().unwrap())
}

fn temp_instance(name: &str, text: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("wreathcc-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::write(&path, text).unwrap();
    path
}

#[test]
fn decide_lamplighter() {
    let path = example("lamplighter.toml");
    let (r, code) = run_json(&["decide", "-i", path.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert_eq!(r["command"], "decide");
    assert_eq!(r["instance_hash"].as_str().unwrap().len(), 64);
    let v = &r["result"]["verdict"];
    assert_eq!(v["answer"], "Yes");
    assert_eq!(v["cond_i"], "Yes");
    assert_eq!(v["cond_ii"], "No");
    assert_eq!(v["cond_iii"], "Yes");
    assert_eq!(r["result"]["corollary"]["answer"], "Yes");
}

#[test]
fn decide_regression_corpus() {
    let expected = [
        ("lamplighter.toml", "Yes"),
        ("free_swap.toml", "Yes"),
        ("trivial_action.toml", "No"),
        ("mixed_orbits_z2.toml", "No"),
        ("mixed_orbits_free.toml", "Yes"),
        ("s3_wr_s3.toml", "No"),
        ("z2_s3_natural.toml", "No"),
        ("s3_int_mod3.toml", "No"),
        ("free_wr_z3.toml", "Yes"),
        ("z2_wr_z3.toml", "No"),
        ("nested.toml", "Yes"),
    ];
    for (file, answer) in expected {
        let path = example(file);
        let (r, code) = run_json(&["decide", "-i", path.to_str().unwrap()]);
        assert_eq!(code, 0, "{file}");
        assert_eq!(r["result"]["verdict"]["answer"], answer, "{file}");
    }
}

#[test]
fn verify_finite_instance_passes_with_size_seven() {
    let path = example("z2_s3_natural.toml");
    let (r, code) = run_json(&[
        "verify",
        "-i",
        path.to_str().unwrap(),
        "--seed",
        "42",
        "--samples",
        "200",
    ]);
    assert_eq!(code, 0);
    assert_eq!(r["result"]["status"], "PASS");
    assert_eq!(r["seed"], 42);
    let checks = r["result"]["checks"].as_array().unwrap();
    assert!(checks.iter().all(|c| c["status"] == "PASS"));
    let size = checks.iter().find(|c| c["name"] == "certificate size").unwrap();
    assert!(size["detail"].as_str().unwrap().starts_with("size 7"));
}

#[test]
fn verify_icc_instance_passes() {
    let path = example("lamplighter.toml");
    let (r, code) = run_json(&["verify", "-i", path.to_str().unwrap(), "--samples", "10"]);
    assert_eq!(code, 0, "{r}");
    assert_eq!(r["result"]["status"], "PASS");
}

#[test]
fn verify_is_deterministic() {
    let path = example("free_swap.toml");
    let args = [
        "verify",
        "-i",
        path.to_str().unwrap(),
        "--seed",
        "5",
        "--samples",
        "5",
        "--json",
    ];
    assert_eq!(run(&args).stdout, run(&args).stdout);
}

#[test]
fn class_of_a_lamp() {
    let path = example("lamplighter.toml");
    let (r, code) = run_json(&["class", "-i", path.to_str().unwrap(), "-g", "{0:1}@0", "--radius", "6"]);
    assert_eq!(code, 0);
    assert_eq!(r["result"]["status"], "AtLeast");
    assert!(r["result"]["count"].as_u64().unwrap() >= 7);
    assert_eq!(r["budgets"]["radius"], 6);
}

#[test]
fn witness_with_and_without_element() {
    let path = example("free_swap.toml");
    let (r, code) = run_json(&["witness", "-i", path.to_str().unwrap(), "-g", "{}@1"]);
    assert_eq!(code, 0);
    assert_eq!(r["result"]["certificate"]["kind"], "gd");
    assert_eq!(r["result"]["certificate"]["members"].as_array().unwrap().len(), 10);

    let (r, code) = run_json(&["witness", "-i", path.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert!(r["result"]["certificates"].as_array().unwrap().len() >= 2);

    let path = example("s3_int_mod3.toml");
    let (r, _) = run_json(&["witness", "-i", path.to_str().unwrap()]);
    let cert = &r["result"]["certificate"];
    assert_eq!(cert["provenance"], "condition-i");
    assert_eq!(cert["size"], 1);
    assert_eq!(cert["members"][0], "{}@3");
}

#[test]
fn human_output_comes_from_the_record() {
    let path = example("lamplighter.toml");
    let out = run(&["decide", "-i", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("command: decide"));
    assert!(text.contains("answer: Yes"));
}

#[test]
fn unknown_verdict_exits_2() {
    // the inner product has trivial D, so its icc status cannot be derived
    let path = temp_instance(
        "unknown.toml",
        r#"
[D]
kind = "wreath"
D = { kind = "cyclic", n = 1 }
Q = { kind = "integers" }
omega = { kind = "regular" }

[Q]
kind = "cyclic"
n = 2

[omega]
kind = "regular"
"#,
    );
    let (r, code) = run_json(&["decide", "-i", path.to_str().unwrap()]);
    assert_eq!(r["result"]["verdict"]["answer"], "Unknown");
    assert_eq!(code, 2);
    let (_, code) = run_json(&["verify", "-i", path.to_str().unwrap()]);
    assert_eq!(code, 2);
}

#[test]
fn input_errors_exit_3() {
    let path = temp_instance(
        "trivial.toml",
        "[D]\nkind = \"cyclic\"\nn = 1\n[Q]\nkind = \"integers\"\n[omega]\nkind = \"regular\"\n",
    );
    let (r, code) = run_json(&["decide", "-i", path.to_str().unwrap()]);
    assert_eq!(code, 3);
    assert_eq!(r["error"]["code"], "E_TRIVIAL_D");

    let path = example("lamplighter.toml");
    let (r, code) = run_json(&["class", "-i", path.to_str().unwrap(), "-g", "{0:7}@0"]);
    assert_eq!(code, 3);
    assert_eq!(r["error"]["code"], "E_MALFORMED_LITERAL");

    let (r, code) = run_json(&["decide", "-i", "/nonexistent/instance.toml"]);
    assert_eq!(code, 3);
    assert_eq!(r["error"]["code"], "E_IO");

    assert_eq!(run(&["decide"]).status.code(), Some(3));
    assert_eq!(run(&["frobnicate"]).status.code(), Some(3));
}

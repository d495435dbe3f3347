use std::process::{Command, Output};

fn gpdefo(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_gpdefo")).args(args).output().expect("binary runs")
}

fn fixture(name: &str) -> String {
    format!("{}/fixtures/{name}", env!("CARGO_MANIFEST_DIR"))
}

fn json(out: &Output) -> serde_json::Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

#[test]
fn algebra_info_reports_basis_in_written_order() {
    let out = gpdefo(&["algebra", "info", "lambda"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["dim"], 9);
    assert_eq!(v["basis"][8], "abab");
    assert_eq!(v["field"], "Q");
    assert_eq!(v["seed"], 0);
}

#[test]
fn json_file_and_builtin_fixture_agree() {
    let a = gpdefo(&["algebra", "info", "gamma"]);
    let b = gpdefo(&["algebra", "info", &fixture("gamma.json")]);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn defo_ring_of_the_self_syzygy_module() {
    let out = gpdefo(&["defo", "ring", "lambda", "--gen", "b,a"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["ring"], "k[[t]]/(t^2)");
    let out = gpdefo(&["defo", "ring", &fixture("gamma.json"), "--module", &fixture("gamma_w.json")]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["route"], "gorenstein");
    assert_eq!(v["obstruction_order"], 2);
}

#[test]
fn text_output_is_key_value_lines() {
    let out = gpdefo(&["--text", "algebra", "info", "dual"]);
    let s = String::from_utf8(out.stdout).unwrap();
    assert!(s.lines().any(|l| l == "dim: 2"), "{s}");
}

#[test]
fn transport_passes_on_the_regular_bimodule() {
    let out = gpdefo(&["transport", "--bimodule", &fixture("regular_lambda.json"), "--module", &fixture("lambda_v.json")]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["verdict"], "PASS");
}

#[test]
fn exit_codes() {
    // Unparsable input.
    assert_eq!(gpdefo(&["algebra", "info", "nosuch"]).status.code(), Some(2));
    assert_eq!(gpdefo(&["defo", "ring", "lambda", "--gen", "a,a"]).status.code(), Some(2));
    assert_eq!(gpdefo(&["--field", "Fp:4", "algebra", "info", "lambda"]).status.code(), Some(2));
    // Well-formed but outside the supported hypotheses.
    assert_eq!(gpdefo(&["gproj", "classify", "gamma"]).status.code(), Some(3));
    let out = gpdefo(&[
        "transport",
        "--bimodule",
        &fixture("simple_over_ground.json"),
        "--module",
        &fixture("ground_simple.json"),
    ]);
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stderr).contains("not projective as a left module"));
}

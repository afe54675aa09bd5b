//! End-to-end checks of the `fano` binary: JSON output and the exit-code
//! contract (0 = success, 1 = failed --expect, 2 = usage or domain error).

use serde_json::Value;
use std::process::{Command, Output};

fn fano(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_fano"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json(args: &[&str]) -> Value {
    let out = fano(args);
    assert!(
        out.status.success(),
        "exit {:?}: {}",
        out.status.code(),
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

#[test]
fn klein_output() {
    let v = json(&["klein"]);
    assert_eq!(v["rank"], 25);
    assert_eq!(v["signature"], serde_json::json!([1, 24, 30]));
    assert_eq!(v["disc_lambda_factored"]["2"], 2);
    assert_eq!(v["disc_lambda_factored"]["11"], 10);
    assert_eq!(v["disc_ns_factored"]["11"], 10);
    assert_eq!(v["index"], 2);
    assert_eq!(v["incidence_in_lambda"], false);
}

#[test]
fn group_census_output() {
    let v = json(&["group", "--name", "psl2_11"]);
    assert_eq!(v["order"], 660);
    assert_eq!(v["involutions"], 55);
    assert_eq!(v["order_histogram"]["11"], 120);
    assert_eq!(v["pair_orders"]["5"], 660);

    let v = json(&["group", "--name", "a5"]);
    assert_eq!(v["order"], 60);
    assert_eq!(v["involutions"], 15);
}

#[test]
fn lattice_output() {
    let v = json(&["lattice", "--name", "d6"]);
    assert_eq!(v["rank"], 5);
    assert_eq!(v["discriminant_factored"]["2"], 6);
    assert_eq!(v["discriminant_factored"]["3"], 2);
    assert_eq!(v["fibration"]["f1_self"], 0);
    assert_eq!(v["fibration"]["f2_self"], 0);

    let v = json(&["lattice", "--name", "l0002"]);
    assert_eq!(v["rank"], 21);
    assert_eq!(v["half"]["discriminant"], "22");
}

#[test]
fn survey_output() {
    let v = json(&["survey"]);
    let rows = v.as_array().expect("array of records");
    assert_eq!(rows.len(), 81);
    let low: Vec<&Value> = rows.iter().filter(|r| r["rank"].as_u64().unwrap() <= 25).collect();
    assert_eq!(low.len(), 2);
    assert_eq!(low[0]["xyzw"], serde_json::json!([0, 0, 0, 2]));
    assert_eq!(low[0]["rank"], 21);
    assert_eq!(low[1]["xyzw"], serde_json::json!([0, 2, 1, 0]));
    assert_eq!(low[1]["rank"], 25);
}

#[test]
fn identities_output() {
    let v = json(&["identities"]);
    assert_eq!(v["CD"], 2);
    assert_eq!(v["D2"], -4);
    assert_eq!(v["R2"], -3);
    assert_eq!(v["CR"], 3);
    assert_eq!(v["genusR"], 4);
}

#[test]
fn invariant_cubics_output() {
    let v = json(&["invariant-cubics", "--name", "a5"]);
    assert_eq!(v["dimension"], 2);
    assert_eq!(v["family_size"], 2);
    assert_eq!(v["all_members"], true);
}

#[test]
fn smooth_output() {
    let v = json(&["smooth", "--cubic", "x1^3 + x2^3 + x3^3 + x4^3 + x5^3"]);
    assert_eq!(v["verdict"], "smooth");
    let v = json(&["smooth", "--cubic", "x1^3"]);
    assert_eq!(v["verdict"], "singular");
    let v = json(&["smooth", "--scan", "d5", "--seed", "1"]);
    assert_eq!(v["attempts"], 1);
    assert_eq!(v["smooth"], true);
    assert_eq!(v["params"], serde_json::json!([-1, -3, -2, -3, 2]));
}

#[test]
fn gamma_output() {
    let v = json(&["gamma", "--cubic", "x1^3 + x4^2*x1 + 2*x2*x4*x5 + x5^2*x3"]);
    assert_eq!(v["harmonic"], true);
    assert_eq!(v["classification"], "smooth_genus_2");
    assert_eq!(v["quintic"], "-x1^3*x2^2 + x1^4*x3");

    // same line selected two ways gives the same normalized picture
    let cubic = "x5^3 + x1^2*x5 + x2^2*x5 + x3^2*x5 + x4^2*x5 \
                 + x1^2*x3 - x2^2*x3 + 2*x1*x2*x4 \
                 - x3^2*x1 + x4^2*x1 + 2*x2*x3*x4";
    let by_triple = json(&["gamma", "--cubic", cubic, "--line", "1,2,5"]);
    let by_span = json(&[
        "gamma",
        "--cubic",
        cubic,
        "--span",
        "0,0,1,0,0;0,0,0,1,0",
    ]);
    assert_eq!(by_triple["quintic"], by_span["quintic"]);
    assert_eq!(by_triple["harmonic"], by_span["harmonic"]);
}

#[test]
fn scan_d4_output() {
    let v = json(&["scan-d4"]);
    assert_eq!(v["control_d5_smooth_found"], true);
    for order in ["16", "24", "32", "40", "48"] {
        assert_eq!(v["containment_orders"][order], true, "order {order}");
    }
    let cases = v["cases"].as_array().unwrap();
    assert_eq!(cases.len(), 3);
    for case in cases {
        for cell in case["cells"].as_array().unwrap() {
            assert_eq!(cell["smooth_member_found"], false);
        }
    }
}

#[test]
fn expect_flag_contract() {
    // 0: every expectation holds
    let out = fano(&["identities", "--expect", "CD=2", "--expect", "genusR=4"]);
    assert_eq!(out.status.code(), Some(0));

    // 1: an expectation fails
    let out = fano(&["identities", "--expect", "CD=3"]);
    assert_eq!(out.status.code(), Some(1));

    // 1: the path does not exist in the output
    let out = fano(&["identities", "--expect", "nope=1"]);
    assert_eq!(out.status.code(), Some(1));

    // dotted paths reach into arrays and objects
    let out = fano(&["klein", "--expect", "signature.0=1", "--expect", "index=2"]);
    assert_eq!(out.status.code(), Some(0));
    let out = fano(&["survey", "--expect", "0.rank=21"]);
    assert_eq!(out.status.code(), Some(1)); // first record is a higher-rank tuple
}

#[test]
fn usage_and_domain_errors_exit_2() {
    let out = fano(&["no-such-command"]);
    assert_eq!(out.status.code(), Some(2));

    let out = fano(&["group", "--name", "sporadic"]);
    assert_eq!(out.status.code(), Some(2));

    let out = fano(&["smooth", "--cubic", "x1^2"]); // not a cubic
    assert_eq!(out.status.code(), Some(2));

    let out = fano(&["gamma", "--cubic", "x1^3 + x2^3 + x3^3 + x4^3 + x5^3"]);
    assert_eq!(out.status.code(), Some(2)); // line x1=x2=x3=0 is not on it

    let out = fano(&["lattice", "--name", "d4"]);
    assert_eq!(out.status.code(), Some(2));

    // malformed --expect is a usage error, not a mismatch
    let out = fano(&["identities", "--expect", "CD"]);
    assert_eq!(out.status.code(), Some(2));
}

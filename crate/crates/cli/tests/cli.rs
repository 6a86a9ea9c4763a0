use std::process::{Command, Output};

use serde_json::Value;

fn dquad(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_dquad"))
        .args(args)
        .env_remove("DQUAD_WORKERS")
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn json_lines(out: &Output) -> Vec<Value> {
    stdout(out).lines().map(|l| serde_json::from_str(l).unwrap()).collect()
}

#[test]
fn verify_fermat_set() {
    let out = dquad(&["verify", "-e", "1,3,8,120", "-n", "1", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let rec = &json_lines(&out)[0];
    assert_eq!(rec["provenance"], "user-input");
    assert_eq!(rec["ns"][0]["regular"], true);
    assert_eq!(rec["ns"][0]["roots"].as_array().unwrap().len(), 6);
}

#[test]
fn verify_sporadic_set() {
    let out = dquad(&["verify", "-e", "28,6348,18750,88872", "-n", "330625,38101225", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let rec = &json_lines(&out)[0];
    assert_eq!(rec["ns"][0]["regular"], true);
    assert_eq!(rec["ns"][1]["regular"], false);
}

#[test]
fn verify_failure_names_pair() {
    let out = dquad(&["verify", "-e", "1,3,8,121", "-n", "1", "--format", "json"]);
    assert_eq!(out.status.code(), Some(1));
    let rec = &json_lines(&out)[0];
    let failure = rec["failure"].as_str().unwrap();
    assert!(failure.contains("(3, 121)") && failure.contains("364"), "{failure}");
    assert!(String::from_utf8_lossy(&out.stderr).contains("(3, 121)"));
}

#[test]
fn verify_usage_errors() {
    for args in [
        &["verify", "-e", "1,3,8", "-n", "1"][..],
        &["verify", "-e", "1,3,8,8", "-n", "1"],
        &["verify", "-e", "1,0,8,120", "-n", "1"],
        &["verify", "-e", "1,x,8,120", "-n", "1"],
        &["verify", "-e", "1,3,8,120"],
    ] {
        assert_eq!(dquad(args).status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn negative_elements_accepted() {
    let out = dquad(&["verify", "-e", "-1,-3,-8,-120", "-n", "1"]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn gen_prop1_k3() {
    let out = dquad(&["gen", "prop1", "--k", "3", "--count", "1", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let recs = json_lines(&out);
    assert_eq!(recs.len(), 2);
    let normalized = &recs[1];
    assert_eq!(normalized["provenance"], "prop1:k=3:normalized");
    let elements: Vec<&str> = normalized["elements"].as_array().unwrap().iter().map(|v| v.as_str().unwrap()).collect();
    assert_eq!(elements, ["1066758050", "7214407200", "8024417928", "44219811272"]);
    assert_eq!(normalized["ns"][0]["n"], "90467582183447040000");
    assert_eq!(normalized["ns"][1]["n"], "30185892484109116209");
    assert_eq!(normalized["ns"][2]["n"], "0");
}

#[test]
fn gen_prop2_u2() {
    let out = dquad(&["gen", "prop2", "--u", "2", "--count", "1", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let recs = json_lines(&out);
    assert_eq!(recs[0]["provenance"], "prop2:u=2");
    let normalized = &recs[1];
    let elements: Vec<&str> = normalized["elements"].as_array().unwrap().iter().map(|v| v.as_str().unwrap()).collect();
    assert_eq!(elements, ["861184", "734247409", "8760960000", "15591268225"]);
    assert_eq!(normalized["ns"][0]["n"], "30668429385921600");
    assert_eq!(normalized["ns"][1]["n"], "2816306908047360000");
}

#[test]
fn gen_skips_exclusions() {
    let from_two = dquad(&["gen", "prop1", "--k", "2", "--count", "1", "--format", "json"]);
    let from_three = dquad(&["gen", "prop1", "--k", "3", "--count", "1", "--format", "json"]);
    assert_eq!(from_two.status.code(), Some(0));
    assert_eq!(stdout(&from_two), stdout(&from_three));
}

#[test]
fn gen_csv_is_stable() {
    let a = dquad(&["gen", "prop1", "--k", "3", "--count", "10", "--format", "csv"]);
    let b = dquad(&["gen", "prop1", "--k", "3", "--count", "10", "--format", "csv"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let text = stdout(&a);
    assert_eq!(text.lines().count(), 21);
    assert!(text.lines().last().unwrap().starts_with("prop1:k=12:normalized,"));
}

#[test]
fn gen_zero_count_is_usage_error() {
    assert_eq!(dquad(&["gen", "prop1", "--k", "3", "--count", "0"]).status.code(), Some(2));
}

#[test]
fn curve_point_p() {
    let out = dquad(&["curve", "--k", "3", "--point", "P", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let rec = &json_lines(&out)[0];
    assert_eq!(rec["x"], "-520");
    assert_eq!(rec["y"], "6084");
    assert_eq!(rec["t3"], "-18/5");
    assert_eq!(rec["on_curve"], true);
    assert!(rec["note"].as_str().unwrap().contains("degenerate chart"));
}

#[test]
fn curve_triple_p_matches_closed_form_x() {
    let out = dquad(&["curve", "--k", "3", "--point", "3P", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let rec = &json_lines(&out)[0];
    let c = dquad_core::ecurve::closed_form_3p(&dquad_core::rat(3, 1)).unwrap();
    assert_eq!(rec["x"], c.x().unwrap().to_string());
    // the closed form carries the opposite sign of Y
    assert_eq!(rec["y"], (-c.y().unwrap()).to_string());
    assert_eq!(rec["t3"], "9522/23095");
    assert_eq!(rec["ac_condition"], true);
}

#[test]
fn curve_errors() {
    assert_eq!(dquad(&["curve", "--k", "0", "--point", "P"]).status.code(), Some(1));
    assert_eq!(dquad(&["curve", "--k", "3", "--point", "Q"]).status.code(), Some(2));
    assert_eq!(dquad(&["curve", "--k", "3", "--point", "P+T4"]).status.code(), Some(2));
}

#[test]
fn search_smoke() {
    let out = dquad(&["search", "--hk", "1", "--hm", "1", "--ht", "1"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&out.stderr).contains("candidates"));
}

#[test]
fn search_output_independent_of_workers() {
    let run = |w: &str| dquad(&["search", "--hk", "10", "--hm", "10", "--ht", "10", "--workers", w, "--format", "json"]);
    let one = run("1");
    let eight = run("8");
    assert_eq!(one.status.code(), Some(0));
    assert!(!one.stdout.is_empty());
    assert_eq!(one.stdout, eight.stdout);
}

#[test]
fn search_workers_from_env() {
    let out = Command::new(env!("CARGO_BIN_EXE_dquad"))
        .args(["search", "--hk", "2", "--hm", "2", "--ht", "2"])
        .env("DQUAD_WORKERS", "3")
        .output()
        .unwrap();
    assert!(String::from_utf8_lossy(&out.stderr).contains("3 workers"));
}

#[test]
fn fixture_check() {
    let out = dquad(&["search", "--fixture-check"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("10 rows verified"));
}

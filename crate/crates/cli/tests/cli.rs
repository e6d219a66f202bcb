use std::process::{Command, Output};

use serde_json::Value;

fn cnlat(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cnlat"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json_of(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

#[test]
fn cn_check_exit_codes() {
    let ok = cnlat(&["check", "cn", "fixture:fix-a"]);
    assert_eq!(ok.status.code(), Some(0));
    assert_eq!(json_of(&ok)["pass"], true);

    // Three atoms {1},{2},{1*} plus bottom and J: {1} ∨ {2} misses its star.
    let broken = r#"{"n": 2, "elements": [[], ["1"], ["2"], ["1*"], "J"]}"#;
    let bad = cnlat(&["check", "cn", broken]);
    assert_eq!(bad.status.code(), Some(1));
    let v = json_of(&bad);
    assert_eq!(v["pass"], false);
    assert!(v["diagnostic"]["axiom"].is_string());

    let missing = cnlat(&["check", "cn", "/no/such/file.json"]);
    assert_eq!(missing.status.code(), Some(2));
    assert!(missing.stdout.is_empty());
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(cnlat(&["check"]).status.code(), Some(2));
    assert_eq!(cnlat(&["enumerate", "cn", "--n", "9"]).status.code(), Some(2));
    assert_eq!(cnlat(&["check", "cn", "fixture:nope"]).status.code(), Some(2));
}

#[test]
fn induced_geometric_lattice_adds_the_fano_line() {
    let out = cnlat(&["induce-geometric", "fixture:fix-d"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json_of(&out);
    assert_eq!(v["geometric"], true);
    assert_eq!(v["input_geometric"], false);
    let new = v["new_elements"].as_array().unwrap();
    assert_eq!(new.len(), 1);
    assert_eq!(new[0]["covers"].as_array().unwrap().len(), 3);
    assert_eq!(new[0]["covered_by"], serde_json::json!(["1/2/3/4"]));
}

#[test]
fn lattice_round_trip_through_bases() {
    let bases = cnlat(&["to-symplectic", "fixture:fix-b"]);
    assert_eq!(bases.status.code(), Some(0));
    let text = String::from_utf8(bases.stdout).unwrap();
    let sym = cnlat(&["check", "symplectic", &text]);
    assert_eq!(sym.status.code(), Some(0));
    let back = cnlat(&["from-symplectic", &text]);
    assert_eq!(back.status.code(), Some(0));
    let again = cnlat(&["check", "cn", std::str::from_utf8(&back.stdout).unwrap()]);
    assert_eq!(again.status.code(), Some(0));
}

#[test]
fn seeded_atom_orders_are_reproducible_and_recursive() {
    let a = cnlat(&["--seed", "7", "atom-order", "fixture:fix-a"]);
    let b = cnlat(&["--seed", "7", "atom-order", "fixture:fix-a"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let order = String::from_utf8(a.stdout).unwrap();
    let check = cnlat(&["check", "atom-order", "fixture:fix-a", "--order", &order]);
    assert_eq!(check.status.code(), Some(0));
}

#[test]
fn star_adjacent_order_is_rejected() {
    let order = r#"[["1"], ["1*"], ["2"], ["2*"]]"#;
    let out = cnlat(&["check", "atom-order", "fixture:fix-a", "--order", order]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(json_of(&out)["diagnostic"]["axiom"], "condition-2");
}

#[test]
fn spike_from_flags() {
    let out = cnlat(&["spike", "--n", "2", "--balanced", r#"[["1","2*"],["1*","2"]]"#]);
    assert_eq!(out.status.code(), Some(0));
    let v = json_of(&out);
    assert_eq!(v["bases"]["bases"].as_array().unwrap().len(), 2);

    let all = r#"[["1","2"],["1","2*"],["1*","2"],["1*","2*"]]"#;
    let bad = cnlat(&["spike", "--n", "2", "--balanced", all]);
    assert_eq!(bad.status.code(), Some(1));
    assert_eq!(json_of(&bad)["diagnostic"]["axiom"], "theta");
}

#[test]
fn enumeration_and_suite() {
    let out = cnlat(&["--threads", "2", "enumerate", "cn", "--n", "2"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json_of(&out)["count"], 5);

    let suite = cnlat(&["suite", "--corpus", "cn2"]);
    assert_eq!(suite.status.code(), Some(0));
    assert_eq!(json_of(&suite)["pass"], true);
}

#[test]
fn shelling_search_and_rank_table() {
    let out = cnlat(&["check", "shelling", "fixture:fix-b"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(json_of(&out)["order"].is_array());

    let bases = cnlat(&["to-symplectic", "fixture:fix-c"]);
    let text = String::from_utf8(bases.stdout).unwrap();
    let ranks = cnlat(&["rank-fn", &text]);
    assert_eq!(ranks.status.code(), Some(0));
    let v = json_of(&ranks);
    assert_eq!(v["ranks"].as_array().unwrap().len(), 16);
}

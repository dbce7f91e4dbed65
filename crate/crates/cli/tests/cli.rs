use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_zerohecke"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(args: &[&str]) -> Value {
    let mut a = args.to_vec();
    a.extend(["--format", "json"]);
    let o = run(&a);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    serde_json::from_str(&stdout(&o)).unwrap()
}

#[test]
fn ribbon_121() {
    let v = json(&["ribbon", "--n", "4", "--alpha", "1,2,1"]);
    assert_eq!(v["r_alpha"], 5);
    // q^2 + q^3 + 2q^4 + q^5
    assert_eq!(
        v["r_alpha_q"],
        serde_json::json!([[2, 0, "1"], [3, 0, "1"], [4, 0, "2"], [5, 0, "1"]])
    );
}

#[test]
fn ribbon_qt_two() {
    let o = run(&["ribbon", "--n", "2", "--alpha", "1,1", "--qt", "--q", "2"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("r_alpha(q,t)  t + t^2"), "{}", stdout(&o));
}

#[test]
fn ribbon_trivial() {
    let v = json(&["ribbon", "--n", "1", "--alpha", "1"]);
    for k in ["r_alpha_q", "r_alpha_t", "multinomial_q", "multinomial_qt", "r_alpha_qt"] {
        assert_eq!(v[k], serde_json::json!([[0, 0, "1"]]), "{k}");
    }
    assert_eq!(v["r_alpha"], 1);
}

#[test]
fn coinvariant_qt_has_six_terms() {
    let v = json(&["char", "--module", "coinvariant", "--n", "3", "--mode", "qt"]);
    let monomials: usize = v["terms"]
        .as_array()
        .unwrap()
        .iter()
        .map(|t| t["coeff"].as_array().unwrap().len())
        .sum();
    assert_eq!(monomials, 6);
    assert_eq!(v["basis"], "F");
}

#[test]
fn projective_is_ribbon_schur() {
    let v = json(&["char", "--module", "projective", "--alpha", "1,2,1", "--mode", "plain"]);
    let total: u64 = v["terms"]
        .as_array()
        .unwrap()
        .iter()
        .map(|t| t["coeff"][0][2].as_str().unwrap().parse::<u64>().unwrap())
        .sum();
    assert_eq!(total, 5);
}

#[test]
fn flag_two_two() {
    let v = json(&["char", "--module", "flag", "--n", "2", "--q", "2"]);
    assert_eq!(
        v["terms"],
        serde_json::json!([
            {"index": [2], "coeff": [[0, 0, "1"]]},
            {"index": [1, 1], "coeff": [[0, 0, "2"]]},
        ])
    );
}

#[test]
fn flag_csv_header() {
    let o = run(&["char", "--module", "flag", "--n", "3", "--q", "2", "--format", "csv"]);
    let out = stdout(&o);
    let mut lines = out.lines();
    assert_eq!(lines.next(), Some("alpha,dim_Q_alpha,multiplicity,predicted_r_alpha_q"));
    assert!(out.contains("\"1,1,1\",21,8,8"));
}

#[test]
fn verify_examples_pass() {
    for args in [
        &["verify", "--suite", "coinvariant-regular", "--n", "4"][..],
        &["verify", "--suite", "foata", "--n", "6"],
        &["verify", "--suite", "norton", "--n", "3"],
        &["verify", "--suite", "chain-complex", "--n", "3", "--q", "3"],
    ] {
        let o = run(args);
        assert_eq!(o.status.code(), Some(0), "{args:?}");
        assert!(stdout(&o).starts_with("PASS"));
    }
}

#[test]
fn hook_springer_reports_the_22_witness() {
    let v = json(&["verify", "--suite", "hook-springer", "--n", "4"]);
    assert_eq!(v["passed"], true);
    let d = v["details"]
        .as_array()
        .unwrap()
        .iter()
        .find(|d| d["mu"] == serde_json::json!([2, 2]))
        .unwrap();
    assert_eq!(d["preserved"], false);
    assert!(d["witness"].is_object());
    assert_eq!(d["chain_end_in_ideal"], false);
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["verify", "--suite", "bogus"]).status.code(), Some(4));
    assert_eq!(run(&["ribbon", "--alpha", "1,x"]).status.code(), Some(4));
    assert_eq!(run(&["ribbon", "--n", "3", "--alpha", "1,1"]).status.code(), Some(4));
    assert_eq!(run(&["char", "--module", "regular", "--n", "3", "--mode", "t"]).status.code(), Some(3));
    assert_eq!(run(&["char", "--module", "springer", "--mu", "2,2"]).status.code(), Some(3));
    assert_eq!(run(&["char", "--module", "flag", "--n", "5", "--q", "2"]).status.code(), Some(2));
    assert_eq!(run(&["ribbon", "--alpha", "1,1", "--max-n", "1"]).status.code(), Some(2));
    assert_eq!(run(&["--help"]).status.code(), Some(0));
    assert_eq!(run(&["--version"]).status.code(), Some(0));
    assert_eq!(run(&[]).status.code(), Some(4));
}

#[test]
fn output_is_deterministic() {
    let args = ["verify", "--suite", "norton", "--n", "4", "--format", "json", "--seed", "9"];
    assert_eq!(run(&args).stdout, run(&args).stdout);
}

#[test]
fn characteristic_json_round_trips() {
    let o = run(&["char", "--module", "springer", "--mu", "3,1", "--mode", "t", "--format", "json"]);
    let text = stdout(&o);
    let v: Value = serde_json::from_str(&text).unwrap();
    let e = zerohecke::charmap::QSymElement::from_json(&v).unwrap();
    assert_eq!(format!("{}\n", serde_json::to_string(&e.to_json()).unwrap()), text);
}

use std::io::Write;
use std::process::{Command, Output, Stdio};

use qgroth::quantumbasis::quantum_grothendieck;
use qgroth::{Permutation, Polynomial};

fn qgroth(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qgroth")).args(args).env_remove("QGROTH_GUARD").output().expect("binary runs")
}

fn with_stdin(args: &[&str], env: &[(&str, &str)], input: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_qgroth"))
        .args(args)
        .env_remove("QGROTH_GUARD")
        .envs(env.iter().copied())
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("binary runs");
    child.stdin.take().unwrap().write_all(input.as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn w(s: &str) -> Permutation {
    s.parse().unwrap()
}

fn product_json(u: &str, v: &str) -> String {
    serde_json::to_string(&(quantum_grothendieck(&w(u)) * quantum_grothendieck(&w(v)))).unwrap()
}

#[test]
fn compute_text() {
    let o = qgroth(&["compute", "--family", "qgrothendieck", "--perm", "2,1,3"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).trim(), "(1-q1)*x1 + q1");
    let o = qgroth(&["compute", "--family", "schubert", "--perm", "1,2,3"]);
    assert_eq!(stdout(&o).trim(), "1");
}

#[test]
fn compute_json_parses_back() {
    let o = qgroth(&["compute", "--family", "G", "--p", "1", "--k", "2", "--format", "json"]);
    assert!(o.status.success());
    let g: Polynomial = serde_json::from_str(stdout(&o).trim()).unwrap();
    let expected = qgroth::quantumbasis::g_quantum(1, 2, qgroth::quantumbasis::Variant::Plain);
    assert_eq!(g, expected);
}

#[test]
fn expand_product_from_stdin() {
    let o = with_stdin(&["expand", "--basis", "qgrothendieck", "-"], &[], &product_json("321", "231"));
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let e: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let entries = e["entries"].as_array().unwrap();
    assert_eq!(entries.len(), 7);
    let perms: Vec<&str> = entries.iter().map(|t| t["perm"].as_str().unwrap()).collect();
    assert!(perms.contains(&"1,4,3,2"), "{perms:?}");
}

#[test]
fn expand_basis_element_is_singleton() {
    let f = serde_json::to_string(&quantum_grothendieck(&w("2413"))).unwrap();
    let o = with_stdin(&["expand", "--basis", "qgrothendieck"], &[], &f);
    let e: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let entries = e["entries"].as_array().unwrap();
    assert_eq!(entries.len(), 1);
    assert_eq!(entries[0]["perm"], "2,4,1,3");
}

#[test]
fn guard_exhaustion_exits_3() {
    let input = product_json("321", "231");
    let o = with_stdin(&["expand", "--basis", "qgrothendieck", "--guard", "2"], &[], &input);
    assert_eq!(o.status.code(), Some(3));
    let o = with_stdin(&["expand", "--basis", "qgrothendieck"], &[("QGROTH_GUARD", "2")], &input);
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn invariants_csv_row() {
    let o = qgroth(&["invariants", "--u", "321", "--v", "231", "--n", "4"]);
    assert!(o.status.success());
    let out = stdout(&o);
    assert!(out.starts_with("w,d,N,sign_check,conjectural\n"), "{out}");
    assert!(out.contains("1432,\"(1,1,0)\",1,pass,true"), "{out}");
    assert_eq!(out.lines().count(), 8);
}

#[test]
fn invariants_json_is_marked_conjectural() {
    let o = qgroth(&["invariants", "--u", "321", "--v", "231", "--n", "4", "--format", "json"]);
    let r: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(r["conjectural"], true);
    assert_eq!(r["all_pass"], true);
    assert_eq!(r["rows"].as_array().unwrap().len(), 7);
}

#[test]
fn verify_identities_pass() {
    for args in [
        &["verify", "--identity", "cauchy", "--n", "3"][..],
        &["verify", "--identity", "main5", "--n", "4", "--k", "2", "--p", "2"],
        &["verify", "--identity", "monk-sk", "--n", "3"],
        &["verify", "--identity", "relations", "--n", "3"],
        &["verify", "--identity", "quantize-consistency", "--n", "3"],
    ] {
        let o = qgroth(args);
        assert_eq!(o.status.code(), Some(0), "{args:?}: {}", stdout(&o));
        assert!(stdout(&o).contains("result: pass"));
    }
}

#[test]
fn quantum_pieri_is_reported_not_gated() {
    let o = qgroth(&["verify", "--identity", "quantum-pieri-conjecture", "--n", "3"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("conjectural: true"));
    assert!(out.contains("literal:") && out.contains("no-backtrack:"));
}

#[test]
fn table_stats() {
    let o = qgroth(&["table", "--family", "grothendieck", "--n", "5", "--stats"]);
    assert!(stdout(&o).contains("grothendieck,5,120,40,"), "{}", stdout(&o));
    let o = qgroth(&["table", "--family", "qschubert", "--n", "5", "--stats", "--format", "json"]);
    let s: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(s["max_terms"], 57);
    assert_eq!(s["attained_at"], "15432");
}

#[test]
fn table_rows() {
    let o = qgroth(&["table", "--family", "qgrothendieck", "--n", "3"]);
    let out = stdout(&o);
    assert_eq!(out.lines().next(), Some("w,length,terms"));
    assert!(out.contains("213,1,3\n"));
    assert_eq!(out.lines().count(), 7);
}

#[test]
fn usage_errors_exit_2() {
    for args in [
        &["compute", "--family", "bogus"][..],
        &["compute", "--family", "schubert", "--perm", "1,1,3"],
        &["compute", "--family", "G", "--p", "1"],
        &["verify", "--identity", "pieri", "--n", "3", "--k", "1", "--p", "2"],
        &["table", "--family", "schubert", "--n", "6"],
    ] {
        assert_eq!(qgroth(args).status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn output_is_deterministic() {
    for args in [&["invariants", "--u", "321", "--v", "231", "--n", "4"][..], &["table", "--family", "grothendieck", "--n", "4", "--dump"]] {
        assert_eq!(qgroth(args).stdout, qgroth(args).stdout, "{args:?}");
    }
}

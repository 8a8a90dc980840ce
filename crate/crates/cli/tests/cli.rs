use std::process::{Command, Output};

fn normcov(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_normcov")).args(args).output().expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = normcov(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

#[test]
fn qset_goormaghtigh_pair() {
    assert_eq!(stdout(&["qset", "--n", "31"]).trim(), "(2,5) (5,3)");
    assert_eq!(stdout(&["qset", "--n", "10"]).trim(), "(9,2)");
    assert_eq!(stdout(&["qset", "--n", "16"]).trim(), "none");
}

#[test]
fn verify_construction_at_36() {
    assert_eq!(stdout(&["verify", "--maroti", "--n", "36"]).trim(), "complete: true, partitions checked: 17977");
}

#[test]
fn verify_lists_uncovered_with_limit() {
    let out = stdout(&["verify", "--n", "5", "--component", "alternating", "--limit", "1", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["complete"], false);
    assert_eq!(v["uncovered_total"], 3);
    assert_eq!(v["uncovered"].as_array().unwrap().len(), 1);
}

#[test]
fn bound_json_round_trips() {
    let out = stdout(&["bound", "--group", "sym", "--n", "10000", "--format", "json"]);
    let r: normcov::bounds::BoundReport = serde_json::from_str(&out).unwrap();
    assert_eq!(r.n, 10000);
    assert_eq!(r.theorem_bound, 877);
    assert_eq!(r, normcov::bounds::bound_report(&normcov::covering::GroupKind::sym(10000).unwrap()).unwrap());
}

#[test]
fn bound_csv_has_header_and_one_line_per_degree() {
    let out = stdout(&["bound", "--n", "20", "--to", "30", "--format", "csv"]);
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines.len(), 1 + 6);
    assert!(lines[0].starts_with("n,group,kind,"));
    assert!(lines[1].starts_with("20,Sym,SymEven,"));
    let cols = lines[0].split(',').count();
    assert!(lines.iter().all(|l| l.split(',').count() == cols));
}

#[test]
fn tables_dump_is_bit_exact() {
    let out = normcov(&["tables", "dump"]);
    assert!(out.status.success());
    assert_eq!(out.stdout, normcov::covering::tables::TABLE_SOURCE.as_bytes());
}

#[test]
fn small_commands() {
    assert_eq!(stdout(&["count", "--n", "50"]).trim(), "p(50) = 204226");
    assert_eq!(stdout(&["count", "--n", "9", "--k", "3"]).trim(), "p_3(9) = 7");
    assert_eq!(stdout(&["coprime", "--n", "9", "--k", "3"]).trim(), "p_3(9)' = 6");
    assert_eq!(stdout(&["enum", "--n", "6", "--k", "3"]), "[4,1,1]\n[3,2,1]\n[2,2,2]\n");
    assert_eq!(stdout(&["enum", "--n", "50", "--limit", "2"]).lines().count(), 2);
    assert_eq!(stdout(&["conjecture", "--n", "36"]).trim(), "8");
    assert_eq!(stdout(&["covers", "--n", "10", "--component", "intransitive:4", "--partition", "5,3,2"]).trim(), "false");
    assert_eq!(stdout(&["covers", "--n", "10", "--component", "intransitive:3", "--partition", "[5,3,2]"]).trim(), "true");
    assert!(stdout(&["clusters", "--n", "20", "--x", "10"]).starts_with("p_3(20,10) = 5"));
    let cat = stdout(&["tables", "catalog", "--group", "alt", "--n", "31"]);
    assert!(cat.contains("[15,15,1]") && cat.contains("[24,6,1]"));
}

#[test]
fn counterexample_states_scale_limit() {
    let out = stdout(&["counterexample", "--p", "43", "--r", "100"]);
    assert!(out.contains("strictly decreasing: true"));
    assert!(out.contains("not desk-scale reproducible"));
}

#[test]
fn exit_codes() {
    assert_eq!(normcov(&["conjecture", "--n", "2"]).status.code(), Some(1));
    assert_eq!(normcov(&["maroti", "--n", "13"]).status.code(), Some(1));
    let bad = normcov(&["covers", "--n", "10", "--component", "imprimitive:3", "--partition", "5,5"]);
    assert_eq!(bad.status.code(), Some(1));
    assert!(!bad.stderr.is_empty());
    assert_eq!(normcov(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(normcov(&["qset"]).status.code(), Some(2));
    assert_eq!(normcov(&["bound", "--n", "10", "--format", "yaml"]).status.code(), Some(2));
}

#[test]
fn quick_suite_prints_seed_and_passes() {
    let out = normcov(&["suite", "--level", "quick", "--criterion", "1", "--criterion", "9", "--seed", "7"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(out.status.success(), "{text}");
    assert!(text.starts_with("suite level quick, seed 0x0000000000000007"));
    assert_eq!(text.lines().filter(|l| l.contains(" PASS ")).count(), 2);
}

#[test]
fn suite_reports_failure_through_exit_code() {
    assert_eq!(normcov(&["suite", "--level", "quick", "--criterion", "13"]).status.code(), Some(1));
}

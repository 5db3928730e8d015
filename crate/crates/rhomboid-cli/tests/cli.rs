//! End-to-end tests of the `rhomboid` binary: output formats, exit codes,
//! and byte-for-byte determinism.

use std::io::Write;
use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_rhomboid"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn stderr(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).unwrap()
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("no signal")
}

#[test]
fn graph_dot_fsr_3_has_14_edges() {
    let out = run(&["graph", "--family", "fsr", "--n", "3", "--format", "dot"]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    assert_eq!(text.matches(" -> ").count(), 14);
    assert!(text.starts_with("digraph fsr_3 {"));
    assert!(text.contains("U1 -> L2 [label=\"g1\"];"));
}

#[test]
fn graph_json_sr_2_has_5_edges() {
    let out = run(&["graph", "--family", "sr", "--n", "2", "--format", "json"]);
    assert_eq!(code(&out), 0);
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["family"], "sr");
    assert_eq!(v["edges"].as_array().unwrap().len(), 5);
    assert_eq!(v["vertices"].as_array().unwrap().len(), 4);
    assert_eq!(v["edges"][0]["label"], "b1");
}

#[test]
fn graph_fibonacci_works() {
    let out = run(&["graph", "--family", "fibonacci", "--n", "6", "--format", "json"]);
    assert_eq!(code(&out), 0);
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["edges"].as_array().unwrap().len(), 9);
}

#[test]
fn graph_invalid_size_exits_2() {
    let out = run(&["graph", "--family", "fsr", "--n", "0"]);
    assert_eq!(code(&out), 2);
    assert!(stderr(&out).contains("invalid size"));
}

#[test]
fn expr_core_2_text() {
    let out = run(&[
        "expr", "--family", "fsr", "--shape", "core", "--n", "2", "--method", "2vdm",
    ]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    assert!(text.contains("b1+e1*e2+d1*d2"));
    assert!(text.contains("literals: 5"));
}

#[test]
fn expr_core_3_one_vdm_has_20_literals() {
    let out = run(&[
        "expr", "--family", "fsr", "--shape", "core", "--n", "3", "--method", "1vdm",
        "--format", "json",
    ]);
    assert_eq!(code(&out), 0);
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["literals"], 20);
    assert_eq!(v["method"], "1vdm");
    assert_eq!(v["shape"], "core");
}

#[test]
fn expr_dipterous_1_has_3_literals() {
    let out = run(&[
        "expr", "--family", "fsr", "--shape", "dipterous", "--n", "1", "--method", "2vdm",
        "--format", "json",
    ]);
    assert_eq!(code(&out), 0);
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["literals"], 3);
}

#[test]
fn verify_small_uses_exact_mode() {
    let out = run(&[
        "verify", "--family", "fsr", "--shape", "core", "--n", "5", "--method", "combined",
    ]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    assert!(text.contains("mode: exact"));
    assert!(text.contains("result: pass"));
}

#[test]
fn verify_large_uses_randomized_mode() {
    let out = run(&[
        "verify", "--family", "fsr", "--shape", "core", "--n", "12", "--method", "2vdm",
        "--trials", "3",
    ]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    assert!(text.contains("mode: randomized"));
    assert!(text.contains("result: pass"));
}

#[test]
fn verify_corrupted_expression_file_exits_1() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("corrupted.expr");
    // The size-2 core expression, against a size-3 spec: parses, fails.
    std::fs::File::create(&path)
        .unwrap()
        .write_all(b"b1+e1*e2+d1*d2")
        .unwrap();
    let out = run(&[
        "verify", "--family", "fsr", "--shape", "core", "--n", "3", "--method", "2vdm",
        "--expr-file", path.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 1);
    assert!(stdout(&out).contains("result: fail"));
}

#[test]
fn verify_unparseable_expression_file_exits_1() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("garbage.expr");
    std::fs::File::create(&path).unwrap().write_all(b"b1++").unwrap();
    let out = run(&[
        "verify", "--family", "fsr", "--shape", "core", "--n", "2", "--method", "2vdm",
        "--expr-file", path.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 1);
    assert!(stdout(&out).contains("result: fail"));
}

#[test]
fn verify_reports_commutative_verdict_on_reordered_products() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("reordered.expr");
    std::fs::write(&path, "b1+e2*e1+d1*d2").unwrap();
    let out = run(&[
        "verify", "--family", "fsr", "--shape", "core", "--n", "2", "--method", "2vdm",
        "--expr-file", path.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 1);
    let text = stdout(&out);
    assert!(text.contains("mode: exact"));
    assert!(text.contains("commutative image: pass (monomials reordered, not miscounted)"));
    assert!(text.contains("result: fail"));
}

#[test]
fn verify_matching_expression_file_passes() {
    let gen = run(&[
        "expr", "--family", "fsr", "--shape", "core", "--n", "4", "--method", "combined",
    ]);
    let expr_line = stdout(&gen).lines().next().unwrap().to_string();
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("good.expr");
    std::fs::write(&path, expr_line).unwrap();
    let out = run(&[
        "verify", "--family", "fsr", "--shape", "core", "--n", "4", "--method", "combined",
        "--expr-file", path.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 0);
}

#[test]
fn table_reproduces_one_vdm_column() {
    let out = run(&[
        "table", "--method", "1vdm", "--sizes", "1-10,20,30,40,50,60", "--format", "csv",
    ]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    assert_eq!(text.lines().count(), 1 + 15 * 3);
    assert!(text.starts_with("method,shape,n,literals\n"));
    assert!(text.contains("1vdm,core,3,20\n"));
    assert!(text.contains("1vdm,leaf,7,323\n"));
    assert!(text.contains("1vdm,dipterous,10,975\n"));
    assert!(text.contains("1vdm,core,60,171195\n"));
}

#[test]
fn table_reproduces_combined_column() {
    let out = run(&[
        "table", "--method", "combined", "--sizes", "1-10,20,30,40,50,60", "--format", "csv",
    ]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    assert!(text.contains("combined,core,5,104\n"));
    assert!(text.contains("combined,leaf,5,119\n"));
    assert!(text.contains("combined,dipterous,5,152\n"));
    assert!(text.contains("combined,core,40,27583\n"));
    assert!(text.contains("combined,dipterous,60,80685\n"));
}

#[test]
fn table_closed_form_columns_agree() {
    let out = run(&[
        "table", "--method", "2vdm", "--sizes", "2,4,8,16,32,64", "--closed-form",
        "--format", "csv",
    ]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    assert!(text.starts_with("method,shape,n,literals,closed_form\n"));
    for line in text.lines().skip(1) {
        let cells: Vec<&str> = line.split(',').collect();
        assert_eq!(cells[3], cells[4], "closed form differs in {line}");
    }
    assert!(text.contains("2vdm,core,8,367,367\n"));
}

#[test]
fn table_closed_form_rejects_other_methods_and_sizes() {
    let out = run(&["table", "--method", "1vdm", "--sizes", "2,4", "--closed-form"]);
    assert_eq!(code(&out), 2);
    let out = run(&["table", "--method", "2vdm", "--sizes", "2,3", "--closed-form"]);
    assert_eq!(code(&out), 2);
}

#[test]
fn table_check_generator_passes() {
    let out = run(&[
        "table", "--method", "combined", "--sizes", "1-6", "--check-generator",
        "--format", "json",
    ]);
    assert_eq!(code(&out), 0);
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["crosscheck"]["all_pass"], true);
    let rows = v["crosscheck"]["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 6 * 3);
    assert!(rows.iter().all(|r| r["pass"] == true));
    assert!(rows.iter().all(|r| r["equivalence"] == "exact"));
}

#[test]
fn table_check_generator_cap() {
    let out = run(&[
        "table", "--method", "2vdm", "--sizes", "200", "--check-generator",
    ]);
    assert_eq!(code(&out), 2);
}

#[test]
fn invalid_sizes_exit_2() {
    for bad in ["abc", "0", "5-3", ""] {
        let out = run(&["table", "--method", "2vdm", "--sizes", bad]);
        assert_eq!(code(&out), 2, "sizes {bad:?}");
    }
}

#[test]
fn invalid_modulus_exits_2() {
    let out = run(&[
        "verify", "--family", "fsr", "--shape", "core", "--n", "4", "--method", "2vdm",
        "--modulus", "100",
    ]);
    assert_eq!(code(&out), 2);
    assert!(stderr(&out).contains("prime"));
}

#[test]
fn identical_invocations_are_byte_identical() {
    let args = [
        "verify", "--family", "fsr", "--shape", "leaf", "--n", "9", "--method", "1vdm",
        "--seed", "17", "--format", "json",
    ];
    let a = run(&args);
    let b = run(&args);
    assert_eq!(code(&a), 0);
    assert_eq!(a.stdout, b.stdout);

    let args = ["table", "--method", "combined", "--sizes", "1-8", "--format", "json"];
    let a = run(&args);
    let b = run(&args);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn output_flag_writes_same_bytes() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("graph.dot");
    let to_stdout = run(&["graph", "--family", "fsr", "--n", "4"]);
    let to_file = run(&[
        "graph", "--family", "fsr", "--n", "4", "--output", path.to_str().unwrap(),
    ]);
    assert_eq!(code(&to_file), 0);
    assert!(to_file.stdout.is_empty());
    assert_eq!(std::fs::read(&path).unwrap(), to_stdout.stdout);
}

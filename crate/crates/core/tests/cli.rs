use std::io::Write;
use std::path::PathBuf;
use std::process::{Command, Output, Stdio};

use commutant::io::{matrix_from_json, poly_from_json, poly_matrix_from_json};
use commutant::oracle::{commutant_kernel_basis, span_equal};
use commutant::{char_matrix, parse_input, snf, FieldSpec, MatrixK};
use serde_json::Value;

fn input(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("inputs")
        .join(name)
}

fn commutant(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_commutant"))
        .args(args)
        .output()
        .unwrap()
}

fn with_stdin(args: &[&str], text: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_commutant"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child
        .stdin
        .take()
        .unwrap()
        .write_all(text.as_bytes())
        .unwrap();
    child.wait_with_output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn dim_of_block_example() {
    let out = commutant(&["dim", input("f2_blocks.txt").to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out), "9\n");
}

#[test]
fn centralizer_json_round_trips() {
    let path = input("f5.txt");
    let out = commutant(&["centralizer", path.to_str().unwrap(), "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let v: Value = serde_json::from_str(&stdout(&out)).unwrap();
    let f5 = FieldSpec::prime(5).unwrap();
    let basis: Vec<MatrixK> = v
        .as_array()
        .unwrap()
        .iter()
        .map(|item| matrix_from_json(&item["matrix"], f5).unwrap())
        .collect();
    assert_eq!(basis.len(), 5);
    let doc = parse_input(&std::fs::read_to_string(&path).unwrap()).unwrap();
    let a = doc.get("A").unwrap();
    assert!(span_equal(&basis, &commutant_kernel_basis(a).unwrap()).unwrap());

    let text = commutant(&["centralizer", path.to_str().unwrap()]);
    assert!(stdout(&text).starts_with("dimension 5\n"));
}

#[test]
fn snf_json_matches_library() {
    let path = input("f2_blocks.txt");
    let out = commutant(&["snf", path.to_str().unwrap(), "--format", "json"]);
    let v: Value = serde_json::from_str(&stdout(&out)).unwrap();
    let f2 = FieldSpec::prime(2).unwrap();
    let doc = parse_input(&std::fs::read_to_string(&path).unwrap()).unwrap();
    let expected = snf(&char_matrix(doc.get("A").unwrap()).unwrap());
    assert_eq!(
        poly_matrix_from_json(&v["gamma1"], f2).unwrap(),
        expected.gamma1
    );
    assert_eq!(
        poly_matrix_from_json(&v["gamma2"], f2).unwrap(),
        expected.gamma2
    );
    let diag: Vec<_> = v["diag"]
        .as_array()
        .unwrap()
        .iter()
        .map(|p| poly_from_json(p, f2).unwrap())
        .collect();
    assert_eq!(diag, expected.diag);
}

#[test]
fn rcf_over_rationals() {
    let out = commutant(&["rcf", input("rational.txt").to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).starts_with("factors\n  x^2-2\n  x^2-2\nP\n"));
}

#[test]
fn output_is_deterministic() {
    for args in [
        vec!["centralizer", "--format", "json"],
        vec!["snf"],
        vec!["intertwine", "--witness", "--format", "json"],
    ] {
        let file = if args[0] == "intertwine" {
            "pairs.txt"
        } else {
            "f5.txt"
        };
        let path = input(file);
        let mut full = args.clone();
        full.insert(1, path.to_str().unwrap());
        let first = commutant(&full);
        let second = commutant(&full);
        assert_eq!(first.status.code(), Some(0));
        assert_eq!(first.stdout, second.stdout);
    }
}

#[test]
fn intertwine_finds_witness() {
    let out = commutant(&[
        "intertwine",
        input("pairs.txt").to_str().unwrap(),
        "--witness",
        "--trials",
        "50",
        "--seed",
        "11",
        "--format",
        "json",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let v: Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["method"], "coset_via_rcf");
    let f7 = FieldSpec::prime(7).unwrap();
    let w = matrix_from_json(&v["witness"], f7).unwrap();
    assert!(w.is_invertible());
}

#[test]
fn verify_exits_zero() {
    for file in ["f5.txt", "f2_blocks.txt", "rational.txt", "pairs.txt"] {
        let out = commutant(&["verify", input(file).to_str().unwrap()]);
        assert_eq!(out.status.code(), Some(0), "{file}: {}", stdout(&out));
        assert!(stdout(&out).ends_with("all checks passed\n"));
    }
}

#[test]
fn stdin_and_errors() {
    let out = with_stdin(&["dim"], "field 5\nmatrix A 2 2\n1 0\n0 1\n");
    assert_eq!(stdout(&out), "4\n");

    let out = with_stdin(&["dim"], "field 5\nmatrix A 2 2\n1 0\n0 z\n");
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("line 4"), "{err}");
    assert_eq!(err.lines().count(), 1);

    let out = commutant(&["dim", "/nonexistent/input.txt"]);
    assert_eq!(out.status.code(), Some(2));
    let out = commutant(&["frobnicate"]);
    assert_eq!(out.status.code(), Some(2));
    let out = with_stdin(
        &["intertwine", "--witness"],
        "field Q\nmatrix A 1 1\n1\nmatrix B 1 1\n1\nmatrix Aprime 1 1\n1\nmatrix Bprime 1 1\n1\n",
    );
    assert_eq!(out.status.code(), Some(2));
}

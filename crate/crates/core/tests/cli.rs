use std::io::Write;
use std::path::PathBuf;
use std::process::{Command, Stdio};

use parabolic_der::cli::{run, Outcome, EXIT_INVALID_INPUT, EXIT_OK, EXIT_USAGE};
use parabolic_der::derivations::elementary;
use parabolic_der::json;
use parabolic_der::linalg::Matrix;
use parabolic_der::parabolic::{BlockComposition, ParabolicAlgebra};
use serde_json::Value;

fn derq(args: &str) -> Outcome {
    run(std::iter::once("derq").chain(args.split_whitespace()))
}

fn parse(o: &Outcome) -> Value {
    assert_eq!(o.code, EXIT_OK, "stderr: {}", o.stderr);
    serde_json::from_str(&o.stdout).unwrap()
}

fn temp_file(name: &str, contents: &str) -> PathBuf {
    let path = std::env::temp_dir().join(format!("derq-{}-{name}.json", std::process::id()));
    std::fs::write(&path, contents).unwrap();
    path
}

#[test]
fn der_reports_golden_dimensions() {
    let v = parse(&derq("der --n 6 --blocks 3,2,1"));
    assert_eq!(v["der_dim"], 27);
    assert_eq!(v["l_dim"], 3);
    assert_eq!(v["inner_dim"], 24);
    assert_eq!(v["formula_ok"], true);
}

#[test]
fn h1_of_sl_and_gl() {
    assert_eq!(parse(&derq("h1 --n 3 --blocks 1,1,1 --sl"))["h1_dim"], 0);
    assert_eq!(parse(&derq("h1 --n 4 --blocks 4"))["h1_dim"], 1);
    assert_eq!(parse(&derq("h1 --n 3 --blocks 2,1 --extra-center 1"))["h1_dim"], 6);
}

#[test]
fn verify_single_case_and_sweep() {
    let v = parse(&derq("verify --n 6 --blocks 3,2,1 --rounds 3"));
    assert_eq!(v["summary"]["passed"], 1);
    let v = parse(&derq("verify --max-n 3 --rounds 2"));
    assert_eq!(v["summary"]["cases"], 7);
    assert_eq!(v["summary"]["failed"], 0);
    assert!(v.get("witness").is_none());
}

#[test]
fn output_is_deterministic_across_modes() {
    let a = derq("verify --max-n 3 --rounds 3 --seed 11 --format text");
    let b = derq("verify --max-n 3 --rounds 3 --seed 11 --format text --sequential");
    assert_eq!(a, b);
    assert!(a.stdout.contains("7 cases, 7 passed, 0 failed"));
}

#[test]
fn decompose_inner_derivation_from_file() {
    let q = ParabolicAlgebra::gl(&BlockComposition::parse(3, "2,1").unwrap()).unwrap();
    let e13 = q.root_index((1, 3)).unwrap();
    let ad = q.algebra().ad_basis(e13);
    let path = temp_file("inner", &json::derivation(&ad).to_string());
    let v = parse(&derq(&format!("decompose --n 3 --blocks 2,1 --input {}", path.display())));
    std::fs::remove_file(&path).unwrap();
    let l = json::parse_matrix(&v["l_part"]).unwrap();
    assert!(l.is_zero());
    let p: Vec<String> = v["p"].as_array().unwrap().iter().map(|x| x.as_str().unwrap().to_string()).collect();
    assert_eq!(p.iter().filter(|x| *x != "0").count(), 1);
    assert_eq!(p[e13], "1");
}

#[test]
fn decompose_rejects_non_derivation() {
    let q = ParabolicAlgebra::gl(&BlockComposition::parse(3, "1,1,1").unwrap()).unwrap();
    let bad = elementary(q.dim(), q.coroot_index(1), q.root_index((1, 2)).unwrap());
    let path = temp_file("bad", &json::derivation(&bad).to_string());
    let o = derq(&format!("decompose --n 3 --blocks 1,1,1 --input {}", path.display()));
    std::fs::remove_file(&path).unwrap();
    assert_eq!(o.code, EXIT_INVALID_INPUT);
    assert!(o.stderr.contains("Leibniz"), "{}", o.stderr);
}

#[test]
fn decompose_rejects_wrong_size() {
    let path = temp_file("size", &json::derivation(&Matrix::identity(2)).to_string());
    let o = derq(&format!("decompose --n 3 --blocks 1,1,1 --input {}", path.display()));
    std::fs::remove_file(&path).unwrap();
    assert_eq!(o.code, EXIT_INVALID_INPUT);
}

#[test]
fn usage_errors() {
    assert_eq!(derq("der --n 3 --blocks 2,2").code, EXIT_USAGE);
    assert_eq!(derq("der --n 3 --blocks 0,3").code, EXIT_USAGE);
    assert_eq!(derq("frobnicate").code, EXIT_USAGE);
    assert_eq!(derq("decompose --n 3 --blocks 3 --input /nonexistent/derq.json").code, EXIT_USAGE);
    assert_eq!(derq("verify --n 3").code, EXIT_USAGE);
}

#[test]
fn text_describe_shows_block_shape() {
    let o = derq("describe --n 3 --blocks 2,1 --format text");
    assert_eq!(o.code, EXIT_OK);
    assert!(o.stdout.contains("span{H[2]}"), "{}", o.stdout);
    assert!(o.stdout.contains("*  *  *\n*  *  *\n0  0  *\n"), "{}", o.stdout);
}

#[test]
fn binary_reads_stdin_and_sets_exit_code() {
    let q = ParabolicAlgebra::gl(&BlockComposition::parse(2, "1,1").unwrap()).unwrap();
    let input = json::derivation(&Matrix::zeros(q.dim(), q.dim())).to_string();
    let mut child = Command::new(env!("CARGO_BIN_EXE_derq"))
        .args(["decompose", "--n", "2", "--blocks", "1,1", "--input", "-", "--format", "text"])
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(input.as_bytes()).unwrap();
    let out = child.wait_with_output().unwrap();
    assert!(out.status.success());
    assert!(String::from_utf8(out.stdout).unwrap().contains("d_gamma"));

    let status = Command::new(env!("CARGO_BIN_EXE_derq")).args(["der", "--n", "2", "--blocks", "3"]).output().unwrap();
    assert_eq!(status.status.code(), Some(EXIT_USAGE));
}

//! The command-line surface, run in process and through the built binary.

use std::fs;
use std::path::PathBuf;
use std::process::Command;

use orthokit::coupled::construct_n;
use orthokit::format::{parse, serialize_algebra};
use orthokit::{corpus, CoupledTriple};
use orthokit_cli::{run, EXIT_FAIL, EXIT_INPUT, EXIT_OK, EXIT_USAGE};

fn run_args(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let mut full = vec!["orthokit"];
    full.extend_from_slice(args);
    let code = run(full, &mut out, &mut err);
    (
        code,
        String::from_utf8(out).unwrap(),
        String::from_utf8(err).unwrap(),
    )
}

fn fixture(name: &str, text: &str) -> String {
    let dir = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join("cli");
    fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    // tests run in parallel and share fixtures, so replace atomically
    let tmp = dir.join(format!("{name}.{:?}", std::thread::current().id()));
    fs::write(&tmp, text).unwrap();
    fs::rename(&tmp, &path).unwrap();
    path.to_str().unwrap().to_owned()
}

fn corpus_file(name: &str) -> String {
    let l = corpus::by_name(name).unwrap();
    fixture(&format!("{name}.alg"), &serialize_algebra(&l.to_algebra(name)))
}

#[test]
fn check_oml_passes_on_mo2() {
    let (code, out, _) = run_args(&["check", &corpus_file("mo2"), "--axioms", "oml"]);
    assert_eq!(code, EXIT_OK);
    assert!(out.starts_with("== mo2 [oml] PASS"), "{out}");
    assert!(out.contains("PASS  orthomodular-law"));
}

#[test]
fn check_oml_fails_on_o6_with_witness() {
    let (code, out, _) = run_args(&["check", &corpus_file("o6"), "--axioms", "oml"]);
    assert_eq!(code, EXIT_FAIL);
    assert!(out.contains("FAIL  orthomodular-law  witness (x, y)"), "{out}");
}

#[test]
fn terse_format_is_tab_separated() {
    let (code, out, _) = run_args(&[
        "check",
        &corpus_file("o6"),
        "--axioms",
        "ol,oml",
        "--format",
        "terse",
    ]);
    assert_eq!(code, EXIT_FAIL);
    assert!(out.lines().any(|l| l == "oml.orthomodular-law\tFAIL\tx,y"), "{out}");
    assert!(out.lines().all(|l| l.split('\t').count() >= 2));
}

#[test]
fn several_axiom_sets_on_one_structure() {
    let file = corpus_file("b8");
    let (code, out, _) = run_args(&[
        "check",
        &file,
        "--axioms",
        "lattice,ol,oml,commutation,foulis-holland",
    ]);
    assert_eq!(code, EXIT_OK, "{out}");
    assert_eq!(out.matches("PASS\n").count(), 5);
}

#[test]
fn inapplicable_axiom_set_is_a_usage_error() {
    let (code, _, err) = run_args(&["check", &corpus_file("mo2"), "--axioms", "coupled"]);
    assert_eq!(code, EXIT_USAGE);
    assert!(!err.is_empty());
}

#[test]
fn construct_and_roundtrip() {
    let (code, out, _) = run_args(&["construct", "n", &corpus_file("mo2")]);
    assert_eq!(code, EXIT_OK);
    let doc = parse(&out).unwrap();
    let a = doc.algebras().next().unwrap();
    assert_eq!(a.name(), "mo2-n");
    let t = CoupledTriple::from_algebra(a).unwrap();
    assert_eq!(t, construct_n(&corpus::mo2()).unwrap());

    let triple = fixture("mo2-n.alg", &out);
    let (code, out, _) = run_args(&["check", &triple, "--axioms", "coupled"]);
    assert_eq!(code, EXIT_OK, "{out}");
    let (code, back, _) = run_args(&["construct", "l", &triple]);
    assert_eq!(code, EXIT_OK);
    assert!(back.contains("algebra mo2-n-l"));

    let (code, out, _) = run_args(&["roundtrip", &corpus_file("mo2")]);
    assert_eq!(code, EXIT_OK);
    assert!(out.contains("L(N(L))=L: EQUAL"), "{out}");
    let (code, out, _) = run_args(&["roundtrip", &triple]);
    assert_eq!(code, EXIT_OK);
    assert!(out.contains("N(L(N))=N: EQUAL"), "{out}");
}

#[test]
fn construct_n_rejects_o6() {
    let (code, _, err) = run_args(&["construct", "n", &corpus_file("o6")]);
    assert_eq!(code, EXIT_FAIL);
    assert!(err.contains("not orthomodular"), "{err}");
    assert!(err.contains("witness (x, y)"));
    let (code, out, _) = run_args(&["roundtrip", &corpus_file("o6")]);
    assert_eq!(code, EXIT_FAIL);
    assert!(out.contains("UNDEFINED"));
}

#[test]
fn input_errors_exit_three() {
    let (code, _, err) = run_args(&["check", "/no/such/file.alg", "--axioms", "oml"]);
    assert_eq!(code, EXIT_INPUT);
    assert!(!err.is_empty());
    let bad = fixture("bad.alg", "algebra x\nsize 2\nop join binary\n0 1\n");
    let (code, _, _) = run_args(&["check", &bad, "--axioms", "lattice"]);
    assert_eq!(code, EXIT_INPUT);
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(run_args(&["frobnicate"]).0, EXIT_USAGE);
    assert_eq!(run_args(&["check", "x.alg"]).0, EXIT_USAGE);
    assert_eq!(run_args(&["enumerate", "--class", "oml", "--max-size", "0"]).0, EXIT_USAGE);
    assert_eq!(run_args(&["--threads", "0", "enumerate", "--class", "oml"]).0, EXIT_USAGE);
    assert_eq!(
        run_args(&["independence", "--enforce", "R1,R7", "--violate", "R6"]).0,
        EXIT_USAGE
    );
    let (code, out, _) = run_args(&["--help"]);
    assert_eq!(code, EXIT_OK);
    assert!(out.contains("enumerate"));
}

#[test]
fn enumerate_counts_and_structures() {
    let (code, out, _) = run_args(&["enumerate", "--class", "oml", "--max-size", "8", "--count-only"]);
    assert_eq!(code, EXIT_OK);
    assert!(out.contains("size 6: 1\n"));
    assert!(out.contains("size 8: 2\n"));
    assert!(out.ends_with("total: 6\n"));

    let (code, out, _) = run_args(&["enumerate", "--class", "ol", "--max-size", "6"]);
    assert_eq!(code, EXIT_OK);
    let doc = parse(&out).unwrap();
    let names: Vec<&str> = doc.algebras().map(|a| a.name()).collect();
    assert_eq!(names, ["ol-1-1", "ol-2-1", "ol-4-1", "ol-6-1", "ol-6-2"]);
}

#[test]
fn independence_reports_witness_or_exhaustion() {
    let (code, out, _) = run_args(&[
        "independence",
        "--enforce",
        "R1,R2,R3,R5,R6",
        "--violate",
        "R4",
        "--max-size",
        "3",
    ]);
    assert_eq!(code, EXIT_OK);
    assert!(out.contains("# smallest witness has size 2"), "{out}");
    assert!(out.contains("algebra witness"));

    let (code, out, _) = run_args(&[
        "independence",
        "--enforce",
        "R1,R2,R3,R4,R5",
        "--violate",
        "R6",
        "--max-size",
        "4",
    ]);
    assert_eq!(code, EXIT_FAIL);
    assert!(out.contains("# exhausted: no witness up to size 4"));
}

#[test]
fn gen_iso_and_hasse() {
    let (code, out, _) = run_args(&["gen", "lukasiewicz", "3"]);
    assert_eq!(code, EXIT_OK);
    let chain = fixture("l3.alg", &out);
    let (code, out, _) = run_args(&["check", &chain, "--axioms", "mv,ba"]);
    assert_eq!(code, EXIT_OK, "{out}");
    let (code, out, _) = run_args(&["check", &chain, "--axioms", "coupled-semiring"]);
    assert_eq!(code, EXIT_USAGE, "{out}");

    let mo2 = corpus::mo2();
    let swapped = mo2.relabeled(&[0, 3, 4, 1, 2, 5]);
    let other = fixture("mo2-swapped.alg", &serialize_algebra(&swapped.to_algebra("m")));
    let (code, out, _) = run_args(&["iso", &corpus_file("mo2"), &other]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(out.lines().count(), 6);
    let (code, out, _) = run_args(&["iso", &corpus_file("mo2"), &corpus_file("o6")]);
    assert_eq!(code, EXIT_FAIL);
    assert_eq!(out, "not isomorphic\n");

    let (code, out, _) = run_args(&["hasse", &corpus_file("b4")]);
    assert_eq!(code, EXIT_OK);
    assert!(out.starts_with("digraph"));
    assert!(out.contains("rankdir=BT"));
    assert!(out.contains("style=dashed"));
}

#[test]
fn binary_exit_codes() {
    let bin = env!("CARGO_BIN_EXE_orthokit");
    let ok = Command::new(bin)
        .args(["check", &corpus_file("mo2"), "--axioms", "oml"])
        .output()
        .unwrap();
    assert_eq!(ok.status.code(), Some(EXIT_OK));
    let fail = Command::new(bin)
        .args(["check", &corpus_file("o6"), "--axioms", "oml"])
        .output()
        .unwrap();
    assert_eq!(fail.status.code(), Some(EXIT_FAIL));
    let missing = Command::new(bin)
        .args(["check", "/no/such/file", "--axioms", "oml"])
        .output()
        .unwrap();
    assert_eq!(missing.status.code(), Some(EXIT_INPUT));
    let usage = Command::new(bin).arg("--bogus").output().unwrap();
    assert_eq!(usage.status.code(), Some(EXIT_USAGE));
}

//! End-to-end runs of the command-line interface.

use std::path::Path;

use qhomalg::cli::main_with_args;

fn run(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("qhomalg").chain(args.iter().copied());
    let code = main_with_args(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn path(dir: &Path, name: &str) -> String {
    dir.join(name).display().to_string()
}

#[test]
fn random_complex_verifies_and_converts_idempotently() {
    let dir = tempfile::tempdir().unwrap();
    let file = path(dir.path(), "c.json");
    let (code, _, err) = run(&["--seed", "7", "random", "--N", "3", "--out", &file]);
    assert_eq!(code, 0, "{err}");
    assert_eq!(run(&["verify", &file]).0, 0);
    let (code, text, _) = run(&["homology", &file]);
    assert_eq!(code, 0);
    assert!(text.starts_with(" p\\i"));

    let once = path(dir.path(), "once.json");
    let twice = path(dir.path(), "twice.json");
    assert_eq!(run(&["convert", &file, "--to", "complex", "--out", &once]).0, 0);
    assert_eq!(run(&["convert", &once, "--to", "complex", "--out", &twice]).0, 0);
    assert_eq!(std::fs::read_to_string(&once).unwrap(), std::fs::read_to_string(&twice).unwrap());

    let (code, text, _) = run(&["describe", &file]);
    assert_eq!(code, 0);
    assert!(text.contains("N-complex of order 3"));
}

#[test]
fn exit_codes_separate_failures_from_bad_input() {
    let dir = tempfile::tempdir().unwrap();
    // d_1 d_2 = 1 ≠ 0 at N = 2
    let bad = path(dir.path(), "bad.json");
    std::fs::write(
        &bad,
        r#"{"N": 2, "degrees": [{"i": 0, "dim": 1}, {"i": 1, "dim": 1}, {"i": 2, "dim": 1}],
            "diffs": [{"i": 1, "matrix": {"rows": 1, "cols": 1, "entries": [{"M": 2, "coords": ["1/1"]}]}},
                      {"i": 2, "matrix": {"rows": 1, "cols": 1, "entries": [{"M": 2, "coords": ["1/1"]}]}}]}"#,
    )
    .unwrap();
    let (code, text, _) = run(&["verify", &bad]);
    assert_eq!(code, 1);
    assert!(text.starts_with("invalid"));

    let malformed = path(dir.path(), "malformed.json");
    std::fs::write(&malformed, r#"{"N": 2, "degrees": [{"i": 0, "dim": 1}], "diffs": [{"i": 0, "matrix": 3}]}"#).unwrap();
    assert_eq!(run(&["verify", &malformed]).0, 2);
    assert_eq!(run(&["verify", &path(dir.path(), "missing.json")]).0, 2);
    assert_eq!(run(&["no-such-command"]).0, 2);
    assert_eq!(run(&["derham", "--check", "leibniz"]).0, 2);
}

#[test]
fn suite_reports_are_deterministic() {
    let args = ["--seed", "3", "--json", "run", "simplicial"];
    let (code, first, _) = run(&args);
    assert_eq!(code, 0);
    assert_eq!(first, run(&args).1);
    let report: serde_json::Value = serde_json::from_str(&first).unwrap();
    assert_eq!(report["seed"], 3);
}

#[test]
fn simplicial_chain_complex_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    let file = path(dir.path(), "d2.json");
    assert_eq!(run(&["--q-order", "3", "simplicial", "--builtin", "delta2", "--emit", &file]).0, 0);
    let (code, text, _) = run(&["--json", "describe", &file]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert_eq!(v["N"], 3);
    assert_eq!(run(&["total", &file]).0, 0);
    assert_eq!(run(&["homtest", "--op", "tensor", "--in", &file, &file]).0, 0);
    assert_eq!(run(&["homtest", "--op", "hom", "--in", &file, &file]).0, 0);
}

#[test]
fn form_and_connection_commands() {
    assert_eq!(run(&["--q-order", "2", "derham", "--vars", "2", "--max-degree", "3", "--check", "vanishing"]).0, 0);
    assert_eq!(run(&["--q-order", "3", "derham", "--vars", "3", "--max-degree", "3", "--check", "dpower"]).0, 0);
    assert_eq!(run(&["--q-order", "3", "derham", "--vars", "3", "--max-degree", "3", "--check", "vanishing"]).0, 1);
    assert_eq!(run(&["quantum", "--n", "2", "--check", "coaction"]).0, 0);
    assert_eq!(run(&["quantum", "--n", "2", "--check", "comul"]).0, 0);

    let dir = tempfile::tempdir().unwrap();
    let file = path(dir.path(), "a.json");
    // rank 1, A = x₂ ξ₁ on two variables at N = 3
    std::fs::write(
        &file,
        r#"{"r": 1, "n": 2, "N": 3, "A": [[{"n": 2, "terms": [{"x": [0, 1], "xi": [1], "c": {"M": 3, "coords": ["1/1", "0/1"]}}]}]]}"#,
    )
    .unwrap();
    let (code, text, err) = run(&["curvature", &file]);
    assert_eq!(code, 0, "{err}");
    assert!(text.contains("= 0"));
    assert_eq!(run(&["gauge-check", &file, "--g", "constant-seed", "1"]).0, 0);
    assert_eq!(run(&["chern", &file, "--p", "1"]).0, 0);
}

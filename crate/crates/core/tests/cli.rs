use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use wdta::fixtures::A_EX_TEXT;

fn wdta(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_wdta"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

fn write(dir: &Path, name: &str, text: &str) -> PathBuf {
    let path = dir.join(name);
    fs::write(&path, text).unwrap();
    path
}

fn fixture(dir: &Path) -> String {
    write(dir, "a_ex.wta", A_EX_TEXT)
        .to_string_lossy()
        .into_owned()
}

#[test]
fn eval_prints_tree_weight() {
    let dir = tempfile::tempdir().unwrap();
    let a = fixture(dir.path());
    let o = wdta(&["eval", &a, "--term", "g(g(a))"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "2");
    let o = wdta(&["eval", &a, "-t", "h(b)"]);
    assert_eq!(stdout(&o).trim(), "0");
}

#[test]
fn hyperminimize_report_and_output() {
    let dir = tempfile::tempdir().unwrap();
    let a = fixture(dir.path());
    let out = dir.path().join("h.wta").to_string_lossy().into_owned();
    let o = wdta(&["hyperminimize", &a, "--report", "-o", &out]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let report = stdout(&o);
    for line in [
        "states_before = 4",
        "states_after = 3",
        "block = {p,q} rep p",
        "f(q) = 1/2",
    ] {
        assert!(report.contains(line), "missing `{line}` in\n{report}");
    }
    let text = fs::read_to_string(&out).unwrap();
    assert!(text.contains("state p r bot"), "{text}");
    assert!(text.contains("trans b -> p @ 1/2"), "{text}");

    let o = wdta(&["compare", &a, &out]);
    assert_eq!(o.status.code(), Some(0));
    let report = stdout(&o);
    assert!(report.contains("mismatches = 1"), "{report}");
    assert!(report.contains("mismatch b : 0 vs 1/2"), "{report}");
    assert!(report.contains("verdict = clean"), "{report}");

    assert_eq!(wdta(&["check", &out]).status.code(), Some(0));
    let o = wdta(&["check", &a]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).starts_with("not hyper-minimal"));
}

#[test]
fn hyperminimize_writes_automaton_to_stdout() {
    let dir = tempfile::tempdir().unwrap();
    let a = fixture(dir.path());
    let o = wdta(&["hyperminimize", &a, "--report"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("semifield rational"));
    assert!(stderr(&o).contains("states_after = 3"));
}

#[test]
fn compare_flags_infinite_difference() {
    let dir = tempfile::tempdir().unwrap();
    let a = fixture(dir.path());
    let b = write(
        dir.path(),
        "b.wta",
        &A_EX_TEXT.replace("trans g(r) -> r @ 1", "trans g(r) -> r @ 2"),
    );
    let o = wdta(&[
        "compare",
        &a,
        b.to_str().unwrap(),
        "--height",
        "5",
        "--tail",
        "2",
    ]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("verdict = dirty"), "{}", stdout(&o));
}

#[test]
fn kernels_and_minimize() {
    let dir = tempfile::tempdir().unwrap();
    let a = fixture(dir.path());
    let o = wdta(&["kernels", &a]);
    assert_eq!(
        stdout(&o),
        "kernel = {r,bot}\npreamble = {p,q}\ncokernel = {p,q,r}\ncopreamble = {bot}\n"
    );
    let o = wdta(&["minimize", &a]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("state p q r bot"));
}

#[test]
fn gen_is_deterministic_and_parseable() {
    let dir = tempfile::tempdir().unwrap();
    let args = [
        "gen",
        "--seed",
        "11",
        "--kind",
        "max-times",
        "--states",
        "5",
    ];
    let first = stdout(&wdta(&args));
    assert_eq!(first, stdout(&wdta(&args)));
    let path = write(dir.path(), "g.wta", &first);
    assert_eq!(
        wdta(&["minimize", path.to_str().unwrap()]).status.code(),
        Some(0)
    );
}

#[test]
fn malformed_inputs_exit_with_one() {
    let dir = tempfile::tempdir().unwrap();
    let cases = [
        ("header.wta", "sig a 0\n", "semifield"),
        ("directive.wta", "semifield rational\nbogus\n", "line 2"),
        (
            "zero.wta",
            "semifield rational\nsig a 0\nstate p\ntrans a -> p @ 0\n",
            "zero weight",
        ),
        (
            "total.wta",
            "semifield rational\nsig a 0\nsig g 1\nstate p\ntrans a -> p @ 1\n",
            "totality",
        ),
    ];
    for (name, text, needle) in cases {
        let path = write(dir.path(), name, text);
        let o = wdta(&["minimize", path.to_str().unwrap()]);
        assert_eq!(o.status.code(), Some(1), "{name}");
        assert!(stderr(&o).contains(needle), "{name}: {}", stderr(&o));
    }
    let missing = dir.path().join("missing.wta");
    assert_eq!(
        wdta(&["check", missing.to_str().unwrap()]).status.code(),
        Some(1)
    );
}

#[test]
fn float_weights_are_rejected_by_minimization() {
    let dir = tempfile::tempdir().unwrap();
    let path = write(
        dir.path(),
        "f.wta",
        "semifield tropical-float\nsig a 0\nstate p\nfinal p\ntrans a -> p @ 0.5\n",
    );
    let p = path.to_str().unwrap();
    assert_eq!(wdta(&["eval", p, "-t", "a"]).status.code(), Some(0));
    assert_eq!(wdta(&["hyperminimize", p]).status.code(), Some(1));
}

#[test]
fn usage_errors_exit_with_two() {
    assert_eq!(wdta(&[]).status.code(), Some(2));
    assert_eq!(wdta(&["eval"]).status.code(), Some(2));
    assert_eq!(wdta(&["compare", "x"]).status.code(), Some(2));
    assert_eq!(wdta(&["--help"]).status.code(), Some(0));
}

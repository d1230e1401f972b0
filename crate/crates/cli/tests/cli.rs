use std::io::Write;
use std::process::{Command, Output, Stdio};

fn monideal(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_monideal")).args(args).output().unwrap()
}

fn with_stdin(args: &[&str], input: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_monideal"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(input.as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().unwrap()
}

#[test]
fn dual_of_j() {
    let o = monideal(&["dual", "@j"]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o), "x1*x3, x2*x4\n");
}

#[test]
fn reads_files_and_stdin() {
    let mut file = tempfile::NamedTempFile::new().unwrap();
    writeln!(file, "vars: x1..x4\nideal: x1^2*x2, x2^2*x3, x1*x4^2, x3^2*x4").unwrap();
    let o = monideal(&["radical", file.path().to_str().unwrap()]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o), "x1*x2, x1*x4, x2*x3, x3*x4\n");

    let o = with_stdin(&["is-generic", "-"], "vars: x1, x2\nideal: x1^2, x1*x2\n");
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o), "true\n");
}

#[test]
fn rp2_is_not_shellable() {
    let o = monideal(&["is-shellable", "@rp2"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).starts_with("false\n"));

    let o = monideal(&["is-shellable", "--exhaustive", "@rp2"]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o), "false\n# no facet order is a shelling\n");
}

#[test]
fn characteristic_override() {
    assert_eq!(stdout(&monideal(&["is-cm", "@terai"])), "true\n");
    assert_eq!(stdout(&monideal(&["--char", "2", "is-cm", "@terai"])), "false\n");
    let o = monideal(&["--char", "4", "is-cm", "@terai"]);
    assert_eq!(code(&o), 1);
}

#[test]
fn classify_counterexample_json() {
    let o = monideal(&["classify", "@counterexample"]);
    assert_eq!(code(&o), 0);
    let v: serde_json::Value = serde_json::from_str(stdout(&o).trim()).unwrap();
    let verdicts = &v["report"]["verdicts"];
    assert_eq!(v["label"], "counterexample");
    assert_eq!(verdicts["generic"]["verdict"], "true");
    assert_eq!(verdicts["almost_clean"]["verdict"], "true");
    assert_eq!(verdicts["pretty_clean"]["verdict"], "false");
    assert_eq!(verdicts["sequentially_cm"]["verdict"], "false");
    assert!(verdicts["almost_clean"].get("certificate").is_none());

    let o = monideal(&["--certificate", "classify", "@counterexample"]);
    let v: serde_json::Value = serde_json::from_str(stdout(&o).trim()).unwrap();
    let cert = &v["report"]["verdicts"]["almost_clean"]["certificate"];
    assert_eq!(cert["kind"], "prime_filtration");
    assert!(!cert["items"].as_array().unwrap().is_empty());
}

#[test]
fn certificates_in_text_output() {
    let o = monideal(&["--certificate", "is-pretty-clean", "@embedded"]);
    assert_eq!(code(&o), 0);
    let out = stdout(&o);
    let mut lines = out.lines();
    assert_eq!(lines.next(), Some("true"));
    assert!(lines.next().unwrap().starts_with("# "));
    assert!(lines.all(|l| l.contains(" : ")));
}

#[test]
fn betti_and_polarize() {
    let o = monideal(&["betti", "@j"]);
    assert_eq!(stdout(&o), "beta_0,2 = 4\nbeta_1,3 = 4\nbeta_2,4 = 1\n");
    let o = monideal(&["polarize", "@embedded"]);
    let out = stdout(&o);
    assert!(out.contains("ideal: x1_1*x1_2, x1_1*x2_1"));
    let again = with_stdin(&["is-pretty-clean", "-"], &out);
    assert_eq!(stdout(&again), "true\n");
}

#[test]
fn exhausted_budget_is_undecided() {
    let o = monideal(&["--time-budget", "0", "is-shellable", "--exhaustive", "@rp2"]);
    assert_eq!(code(&o), 3);
    assert_eq!(stdout(&o), "undecided\n");
}

#[test]
fn usage_and_parse_errors() {
    assert_eq!(code(&monideal(&[])), 1);
    assert_eq!(code(&monideal(&["dual", "@nothing"])), 1);
    assert_eq!(code(&monideal(&["dual", "/nonexistent/file"])), 1);

    let o = with_stdin(&["dual", "-"], "vars: x1, x2\nideal: x1*y\n");
    assert_eq!(code(&o), 1);
    let err = String::from_utf8(o.stderr).unwrap();
    assert!(err.contains("2:11"), "{err}");

    let o = with_stdin(&["dual", "-"], "vars: x1, x2\nideal: x1^2\n");
    assert_eq!(code(&o), 1);
}

#[test]
fn corpus_runs() {
    let o = monideal(&["corpus", "--list"]);
    assert!(stdout(&o).lines().any(|l| l == "terai.ideal"));
    let o = monideal(&["corpus", "counterexample", "j", "j_dual", "terai", "rp2"]);
    assert_eq!(code(&o), 0, "{}", stdout(&o));
    assert_eq!(stdout(&o).lines().filter(|l| l.starts_with("PASS ")).count(), 5);
}

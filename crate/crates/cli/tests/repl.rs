use std::io::Write;
use std::process::{Command, Stdio};

fn repl(args: &[&str], input: &str) -> (String, String, i32) {
    let mut child = Command::new(env!("CARGO_BIN_EXE_surreal"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("spawn");
    child.stdin.take().unwrap().write_all(input.as_bytes()).unwrap();
    let out = child.wait_with_output().unwrap();
    (
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
        out.status.code().unwrap(),
    )
}

#[test]
fn session_commands() {
    let (out, err, code) = repl(
        &[],
        "{0|1}\n:birthday {0|1}\n:cmp w^(-1) 1/1000\n:set zeta w^2\n:quit\nw\n",
    );
    assert_eq!(code, 0);
    assert_eq!(out, "1/2\n2\nless\n");
    assert!(err.contains("not a main ordinal"), "{err}");
}

#[test]
fn trunc_flag_and_set() {
    let (out, _, _) = repl(&["--trunc", "3"], "1/(w+1)\n:set trunc 1\n1/(w+1)\n");
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines[0], "w^(-1)*1 + w^(-2)*-1 + w^(-3)*1 + w^(-4)*-1 + O(w^(-5))");
    assert_eq!(lines[1], "trunc = 1");
    assert_eq!(lines[2], "w^(-1)*1 + w^(-2)*-1 + O(w^(-3))");
}

#[test]
fn structured_records() {
    let (out, _, _) = repl(&["--format", "structured"], "w + 1\n1 +\n");
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines[0], "input=w + 1\tvalue=w + 1\tresidual=-\ttier=normal-form");
    assert!(
        lines[1].starts_with("input=1 +\terror=syntax\tspan=3..3\tcode=2\t"),
        "{}",
        lines[1]
    );
}

#[test]
fn history_is_appended() {
    let dir = tempfile::tempdir().unwrap();
    let h = dir.path().join("history");
    std::fs::write(&h, "earlier\n").unwrap();
    repl(&["--history", h.to_str().unwrap()], "w\n\n:cmp 1 2\n");
    assert_eq!(std::fs::read_to_string(&h).unwrap(), "earlier\nw\n:cmp 1 2\n");
}

#[test]
fn bad_flags_are_config_errors() {
    assert_eq!(repl(&["--zeta", "OMEGA"], "").2, 3);
    assert_eq!(repl(&["--trunc", "many"], "").2, 3);
    assert_eq!(repl(&["--help"], "").2, 0);
}

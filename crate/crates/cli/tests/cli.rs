use std::io::Write;
use std::process::{Command, Output, Stdio};

fn run(args: &[&str], stdin: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_treebetween"))
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
        .write_all(stdin.as_bytes())
        .unwrap();
    child.wait_with_output().unwrap()
}

fn stdout(o: &Output) -> &str {
    std::str::from_utf8(&o.stdout).unwrap()
}

const B1: &str =
    "relation strict\nvertices u v w z\ntriple u v w\ntriple u v z\ntriple u w z\ntriple v w z\n";
const P3: &str = "tree\nvertices a b c\nedge a b\nedge b c\n";

#[test]
fn b1_first_line_names_s1() {
    let o = run(&["check", "--kind", "strict", "-"], B1);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(stdout(&o).lines().next(), Some("S1 u v w"));
    assert!(
        stdout(&o).ends_with("summary: checked S1,S2,S3,S4; semantics rotation; violations 15\n")
    );
}

#[test]
fn first_only_and_unordered() {
    let o = run(
        &[
            "check",
            "--kind",
            "strict",
            "--semantics",
            "unordered",
            "--first-only",
            "-",
        ],
        B1,
    );
    assert_eq!(
        stdout(&o),
        "S1 u v w\nsummary: checked S1,S2,S3,S4; semantics unordered; violations 1\n"
    );
}

#[test]
fn derive_outputs() {
    let o = run(&["derive", "--what", "strict", "-"], P3);
    assert_eq!(
        stdout(&o),
        "relation strict\nvertices a b c\ntriple a b c\ntriple c b a\n"
    );
    let o = run(
        &["derive", "--what", "nonstrict", "-"],
        "tree\nvertices a\n",
    );
    assert_eq!(stdout(&o), "relation nonstrict\nvertices a\ntriple a a a\n");
    let o = run(
        &["derive", "--what", "segments", "-"],
        "tree\nvertices a b\nedge b a\n",
    );
    assert_eq!(
        stdout(&o),
        "segments\nvertices a b\nseg a a : a\nseg a b : a b\nseg b a : a b\nseg b b : b\n"
    );
    let o = run(&["derive", "--what", "segments", "-"], B1);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn reconstruct_with_root_and_method() {
    let strict = "relation\nvertices a b c\ntriple c b a\ntriple a b c\n";
    for args in [["--method", "naive"], ["--root", "c"]] {
        let mut full = vec!["reconstruct", "--kind", "strict"];
        full.extend(args);
        full.push("-");
        let o = run(&full, strict);
        assert_eq!(o.status.code(), Some(0));
        assert_eq!(stdout(&o), P3);
    }
}

#[test]
fn parse_errors_report_lines() {
    let o = run(
        &["check", "--kind", "nonstrict", "-"],
        "relation\nvertices a\ntriple a a\n",
    );
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 3"));
}

#[test]
fn audit_header_names_semantics() {
    let o = run(&["audit-fixtures"], "");
    assert_eq!(
        stdout(&o).lines().next(),
        Some("semantics: rotation; t-columns: augmented")
    );
    let o = run(&["audit-fixtures", "--raw-t-columns"], "");
    assert!(stdout(&o).contains("B4 fails: T5\n"));
}

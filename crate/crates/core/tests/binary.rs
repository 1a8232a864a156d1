use std::io::Write;
use std::process::{Command, Output, Stdio};

fn latpoly(args: &[&str], stdin: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_latpoly"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(stdin.as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

fn stdout(o: &Output) -> &str {
    std::str::from_utf8(&o.stdout).unwrap()
}

#[test]
fn parse_errors_exit_2() {
    let o = latpoly(&["map", "path-to-matching", "EXN"], "");
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("'X'"));
    assert_eq!(latpoly(&["map", "path-to-tree", "N"], "").status.code(), Some(2));
    assert_eq!(latpoly(&["verify", "--max-n", "0"], "").status.code(), Some(2));
    assert_eq!(latpoly(&["nonsense"], "").status.code(), Some(2));
}

#[test]
fn domain_rejection_exits_3() {
    let o = latpoly(&["map", "matching-to-path", r#"{"m":5,"edges":[[1,4],[2,5]]}"#], "");
    assert_eq!(o.status.code(), Some(3));
    assert!(stdout(&o).is_empty());
}

#[test]
fn reads_stdin() {
    let o = latpoly(&["map", "path-to-matching", "-"], "EEENEN\n");
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "{\"m\":4,\"edges\":[[1,3],[2,4]]}\n");
}

#[test]
fn table_text() {
    let o = latpoly(&["table", "--max-i", "8"], "");
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).lines().any(|l| l == "  8   4  14 + 21*x + 15*x^2 + 5*x^3"));
}

#[test]
fn enum_counts() {
    let o = latpoly(&["enum", "trees", "--edges", "6", "--format", "text"], "");
    assert!(stdout(&o).ends_with("count: 12\n"));
    let o = latpoly(&["enum", "matchings", "--i", "6", "--j", "2", "--format", "text"], "");
    assert!(stdout(&o).ends_with("count: 12\n"));
    let o = latpoly(&["enum", "paths", "--i", "6", "--j", "3", "--format", "csv"], "");
    assert_eq!(stdout(&o).lines().count(), 13);
}

use std::io::Write;
use std::process::{Command, Output, Stdio};

fn zcolor(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_zcolor")).args(args).output().unwrap()
}

fn with_stdin(args: &[&str], input: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_zcolor"))
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

fn fixture(name: &str) -> String {
    format!("{}/../../fixtures/{name}", env!("CARGO_MANIFEST_DIR"))
}

#[test]
fn invariants_line() {
    let o = zcolor(&["invariants", "1,-5,4"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).trim(), "Δ=10 d=3 d2=1 M2={1,1,0} M2d={1,1,4} M2d2={1,1,0}");
}

#[test]
fn decide_exit_codes() {
    assert_eq!(zcolor(&["decide", "--relation", "pure", "1,-5,4", "7,7,10"]).status.code(), Some(0));
    assert_eq!(zcolor(&["decide", "--relation", "pure", "1,-5,4", "10,7,7"]).status.code(), Some(1));
    assert_eq!(zcolor(&["decide", "--relation", "nope", "1,2", "1,2"]).status.code(), Some(2));
    assert_eq!(zcolor(&["decide", "--relation", "braid", "1,2", "1,2,3"]).status.code(), Some(2));
}

#[test]
fn json_is_parseable_and_deterministic() {
    let args = ["--json", "decide", "--relation", "vbraid", "1,-5,4", "-2,1,1"];
    let a = zcolor(&args);
    let b = zcolor(&args);
    assert_eq!(a.stdout, b.stdout);
    let v: serde_json::Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(v["equivalent"], true);
}

#[test]
fn witness_pipes_into_verify() {
    for (r, v, w) in [("vbraid", "1,-5,4", "-2,1,1"), ("tangle", "1,7,9", "3,-1,-1"), ("pure", "-2,0,3", "2,6,5")] {
        let c = zcolor(&["witness", "--relation", r, v, w]);
        assert!(c.status.success(), "{r}");
        assert_eq!(zcolor(&["witness", "--relation", r, v, w]).stdout, c.stdout);
        let o = with_stdin(&["verify", "--relation", r, "--word", "-", v, w], &stdout(&c));
        assert!(o.status.success(), "{r}: {}", stdout(&o));
        assert_eq!(stdout(&o).trim(), "valid");
    }
}

#[test]
fn verify_rejects_wrong_end() {
    let o = zcolor(&["verify", "--relation", "braid", "--word", "s1", "1,2", "2,4"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn diagram_and_theta() {
    let o = zcolor(&["diagram", "solve", &fixture("bouquet2.json")]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("p=(0,60,69,9)"));
    let o = zcolor(&["theta4", "--m", "1", "--n", "5"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("(3,7)"));
    assert_eq!(zcolor(&["diagram", "solve", "/nonexistent.json"]).status.code(), Some(2));
}

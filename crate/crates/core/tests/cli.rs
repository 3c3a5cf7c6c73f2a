use std::path::PathBuf;
use std::process::{Command, Output};

fn zxct(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_zxct")).args(args).output().expect("binary runs")
}

fn write(name: &str, body: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("zxct-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let p = dir.join(name);
    std::fs::write(&p, body).unwrap();
    p
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn eval_prints_matrix_json() {
    let f = write("not.zx", "X(1,1;4)");
    let o = zxct(&["--json", "eval", f.to_str().unwrap()]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v.as_array().map(|r| r.len()), Some(2));
}

#[test]
fn check_filters_and_reports() {
    let o = zxct(&["check", "--id", "toffoli*"]);
    assert!(o.status.success(), "{}", stdout(&o));
    assert!(stdout(&o).contains("2 passed, 0 failed"));
    let o = zxct(&["check", "--id", "no-such-check"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn verify_single_rule() {
    let o = zxct(&["--json", "verify-rules", "--rule", "K2"]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["passed"], true);
    assert_eq!(zxct(&["verify-rules", "--rule", "NOPE"]).status.code(), Some(2));
}

#[test]
fn translate_round_trip_through_files() {
    let f = write("t.zx", "T ; H");
    let o = zxct(&["--json", "translate", "--dir", "zx2zw", f.to_str().unwrap()]);
    assert!(o.status.success());
    let zw = write("t.json", &stdout(&o));
    let o = zxct(&["translate", "--dir", "zw2zx", zw.to_str().unwrap()]);
    assert!(o.status.success());
    let back = write("back.zx", &stdout(&o));
    let a = zxct(&["eval", f.to_str().unwrap()]);
    let b = zxct(&["eval", back.to_str().unwrap()]);
    assert_eq!(stdout(&a), stdout(&b));
    let o = zxct(&["translate", "--dir", "zw2zx", f.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn script_and_rewrite() {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("scripts");
    let o = zxct(&["script", dir.join("TR10.json").to_str().unwrap()]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let f = write("k2.zx", "X(1,1;4) ; Z(1,1;2)");
    let o = zxct(&["match", "--rule", "K2", f.to_str().unwrap()]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("matches"));
}

#[test]
fn unreadable_input_is_usage_error() {
    assert_eq!(zxct(&["eval", "/nonexistent/file.zx"]).status.code(), Some(2));
    let f = write("bad.zx", "Z(1,1;");
    assert_eq!(zxct(&["eval", f.to_str().unwrap()]).status.code(), Some(2));
}

use std::path::PathBuf;
use std::process::{Command, Output};

fn mubfunc(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_mubfunc"))
        .args(args)
        .env_remove("MUBFUNC_MAX_N")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().unwrap()
}

fn scratch(name: &str, body: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("mubfunc-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::write(&path, body).unwrap();
    path
}

#[test]
fn eval_examples() {
    let o = mubfunc(&["eval", "h", "4"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).starts_with("3 + 1√2"));
    assert!(stdout(&o).contains("4.41421356237"));

    let o = mubfunc(&["eval", "hsharp", "12"]);
    assert!(stdout(&o).starts_with("2√3"));

    let o = mubfunc(&["eval", "phi", "1"]);
    assert!(stdout(&o).starts_with("1 "));

    let o = mubfunc(&["eval", "jacobi", "2", "7"]);
    assert!(stdout(&o).starts_with("1 "));

    let o = mubfunc(&["eval", "gauss", "1", "3"]);
    assert!(stdout(&o).starts_with("i "));

    let o = mubfunc(&["eval", "xi", "6", "--f", "one"]);
    assert!(stdout(&o).starts_with("6 "));
}

#[test]
fn eval_exit_codes() {
    assert_eq!(code(&mubfunc(&["eval", "nope", "3"])), 2);
    assert_eq!(code(&mubfunc(&["eval", "phi", "x"])), 2);
    assert_eq!(code(&mubfunc(&["eval", "phi", "0"])), 2);
    assert_eq!(code(&mubfunc(&["eval", "jacobi", "1", "4"])), 2);
    assert_eq!(code(&mubfunc(&["eval", "phi", "2000000000"])), 3);
    assert_eq!(code(&mubfunc(&["eval", "phi", "50", "--max-n", "10"])), 3);
    let o = Command::new(env!("CARGO_BIN_EXE_mubfunc"))
        .args(["eval", "phi", "50"])
        .env("MUBFUNC_MAX_N", "10")
        .output()
        .unwrap();
    assert_eq!(code(&o), 3);
    assert_eq!(code(&mubfunc(&["eval", "h1", "4"])), 2);
}

#[test]
fn table_formats() {
    let o = mubfunc(&["table", "hsharp", "1", "10", "--format", "csv"]);
    assert_eq!(code(&o), 0);
    let text = stdout(&o);
    let lines: Vec<_> = text.lines().collect();
    assert_eq!(lines[0], "n,exact,float_re,float_im");
    assert_eq!(lines.len(), 11);
    assert_eq!(lines[4], "4,2,2,0");

    let o = mubfunc(&["table", "h", "2", "2", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v.as_array().unwrap().len(), 1);
    assert_eq!(v[0]["exact"], "1 + 1/2√2");
    assert_eq!(v[0]["n"], 2);

    let o = mubfunc(&["table", "phi", "1", "1"]);
    assert_eq!(stdout(&o).lines().nth(1), Some("1,1,1,0"));
}

#[test]
fn table_errors_leave_no_output() {
    let o = mubfunc(&["table", "phi", "5", "3"]);
    assert_eq!(code(&o), 2);
    assert!(o.stdout.is_empty());
    let o = mubfunc(&["table", "phi", "999999990", "1000000010"]);
    assert_eq!(code(&o), 3);
    assert!(o.stdout.is_empty());
}

#[test]
fn output_is_deterministic() {
    let a = mubfunc(&["table", "s", "1", "12", "--format", "json"]);
    let b = mubfunc(&["table", "s", "1", "12", "--format", "json"]);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn verify_suites() {
    let o = mubfunc(&["verify", "gauss", "--max-n", "128"]);
    assert_eq!(code(&o), 0, "{}", stdout(&o));
    let o = mubfunc(&["verify", "families", "--seed", "7", "--max-n", "64"]);
    assert_eq!(code(&o), 0, "{}", stdout(&o));
    assert_eq!(code(&mubfunc(&["verify", "bogus"])), 2);
}

#[test]
fn verify_all() {
    let o = mubfunc(&["verify", "all"]);
    assert_eq!(code(&o), 0, "{}", stdout(&o));
    assert!(!stdout(&o).contains("FAIL"));
}

#[test]
fn gauss_modes() {
    let o = mubfunc(&["gauss", "2", "6"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).starts_with("closed  0"));
    let o = mubfunc(&["gauss", "1", "3", "--closed"]);
    assert_eq!(stdout(&o).lines().count(), 1);
    let o = mubfunc(&["gauss", "1", "3", "--direct", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert!(v["closed"].is_null());
    assert_eq!(v["direct"]["im"], "1");
}

#[test]
fn mub_reports() {
    let o = mubfunc(&["mub", "6", "--report", "json"]);
    assert_eq!(code(&o), 0);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["passed"], true);
    assert_eq!(v["classification"]["labels"].as_array().unwrap().len(), 7);
    assert_eq!(code(&mubfunc(&["mub", "1"])), 2);
    assert_eq!(code(&mubfunc(&["mub", "65"])), 3);
}

#[test]
fn squarefree_both_routes() {
    for via in ["hsharp", "factor"] {
        let o = mubfunc(&["squarefree", "72", "--via", via]);
        assert_eq!(stdout(&o).trim(), "72 = 2 * 6^2");
    }
}

#[test]
fn params_file() {
    let h1 = scratch(
        "h1.json",
        r#"{"p": 2, "variant": "h1",
            "kappa": [{"re": [{"d": 2, "num": "1", "den": "2"}], "im": []},
                      {"re": [{"d": 1, "num": "1", "den": "2"}], "im": []}],
            "a": [1, 2]}"#,
    );
    let o = mubfunc(&["eval", "h1", "4", "--params", h1.to_str().unwrap()]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    assert!(stdout(&o).starts_with("3 + 1√2"));
    assert_eq!(
        code(&mubfunc(&[
            "eval",
            "h2",
            "4",
            "--params",
            h1.to_str().unwrap()
        ])),
        2
    );

    let bad = scratch(
        "bad.json",
        r#"{"p": 4, "variant": "h1", "kappa": [], "a": []}"#,
    );
    assert_eq!(
        code(&mubfunc(&[
            "eval",
            "h1",
            "4",
            "--params",
            bad.to_str().unwrap()
        ])),
        2
    );
}

use std::path::PathBuf;
use std::process::{Command, Output};

fn model(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../models").join(name)
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_vassbound"))
        .args(args)
        .env_remove("VASSBOUND_ORACLE_BUDGET")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

#[test]
fn analyze_running_example_json() {
    let path = model("v_run.vass");
    let o = run(&["analyze", path.to_str().unwrap(), "--json"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let text = stdout(&o);
    assert!(text.contains("\"schema\": 1"));
    assert!(text.contains("\"status\": \"polynomial\""));
    assert!(text.contains("\"complexity_exponent\": 3"));
}

#[test]
fn skip_toggle_does_not_change_json() {
    for name in ["v_run.vass", "v_3.vass", "doubling.vass"] {
        let path = model(name);
        let on = run(&["analyze", path.to_str().unwrap(), "--json"]);
        let off = run(&["analyze", path.to_str().unwrap(), "--json", "--skip-opt", "off"]);
        assert_eq!(on.status.code(), Some(0));
        assert_eq!(on.stdout, off.stdout, "{name}");
    }
}

#[test]
fn analyze_exponential_prints_certificate() {
    let path = model("doubling.vass");
    let o = run(&["analyze", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("status: exponential"));
    assert!(text.contains("exponential-certificate\nU:\nW: x y\n"));
}

#[test]
fn disconnected_input_names_the_pair() {
    let path = model("disconnected.vass");
    let o = run(&["analyze", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("from `s2` to `s1`"));
    let o = run(&["validate", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn parse_errors_exit_one() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.vass");
    std::fs::write(&path, "vars x\ns1 -> s2 : 1 2\n").unwrap();
    let o = run(&["analyze", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("line 2"));
    let o = run(&["analyze", dir.path().join("missing.vass").to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn witness_check_passes() {
    let path = model("v_run.vass");
    for n in ["1", "3"] {
        let o = run(&["witness", path.to_str().unwrap(), "--n", n, "--check"]);
        assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
        let text = stdout(&o);
        assert!(text.starts_with(&format!("witness N={n} k=")));
        assert!(!stderr(&o).contains("FAIL"));
    }
}

#[test]
fn witness_dump_to_file() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("w.txt");
    let path = model("v_2.vass");
    let o = run(&["witness", path.to_str().unwrap(), "--n", "2", "--out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).is_empty());
    let text = std::fs::read_to_string(out).unwrap();
    assert!(text.lines().last().unwrap().starts_with("final "));
}

#[test]
fn witness_refused_on_exponential_input() {
    let path = model("doubling.vass");
    let o = run(&["witness", path.to_str().unwrap(), "--n", "3"]);
    assert_eq!(o.status.code(), Some(4));
}

#[test]
fn oracle_rows() {
    let path = model("v_run.vass");
    let o = run(&["oracle", path.to_str().unwrap(), "--n", "3", "--metric", "longest"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines, vec!["N,metric,value", "3,longest,215"]);

    let o = run(&["oracle", path.to_str().unwrap(), "--sweep", "1..4", "--metric", "var:z"]);
    let values: Vec<u64> = stdout(&o)
        .lines()
        .skip(1)
        .map(|l| l.rsplit(',').next().unwrap().parse().unwrap())
        .collect();
    assert_eq!(values.len(), 4);
    assert!(values.windows(2).all(|w| w[0] <= w[1]));
}

#[test]
fn oracle_nontermination_and_budget() {
    let o = run(&["oracle", model("loop.vass").to_str().unwrap(), "--n", "1", "--metric", "longest"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("1,longest,NONTERMINATING"));

    let path = model("v_run.vass");
    let o = run(&["oracle", path.to_str().unwrap(), "--n", "3", "--budget", "5"]);
    assert_eq!(o.status.code(), Some(5));
    let o = Command::new(env!("CARGO_BIN_EXE_vassbound"))
        .args(["oracle", path.to_str().unwrap(), "--n", "3"])
        .env("VASSBOUND_ORACLE_BUDGET", "5")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(5));
}

#[test]
fn usage_errors() {
    assert_eq!(run(&["bogus"]).status.code(), Some(64));
    let path = model("v_run.vass");
    assert_eq!(run(&["oracle", path.to_str().unwrap()]).status.code(), Some(64));
    assert_eq!(run(&["oracle", path.to_str().unwrap(), "--n", "1", "--metric", "var:w"]).status.code(), Some(64));
    assert_eq!(run(&["witness", path.to_str().unwrap(), "--n", "0"]).status.code(), Some(64));
}

#[test]
fn validate_canonical_is_stable() {
    let path = model("v_run.vass");
    let a = run(&["validate", path.to_str().unwrap(), "--canonical"]);
    let b = run(&["validate", path.to_str().unwrap(), "--canonical"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    assert!(stdout(&a).starts_with("vars x y z\ns1 -> s1 : -1 1 -1\n"));
}

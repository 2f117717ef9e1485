use std::process::{Command, Output};

use cauchy_core::continuous::PLPath;
use cauchy_core::poly::SparsePoly;
use cauchy_core::{LSPath, NNMatrix, Tableau};
use serde_json::Value;

fn run(args: &[&str]) -> Output {
    run_env(args, &[])
}

fn run_env(args: &[&str], env: &[(&str, &str)]) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_crystal-cauchy"));
    cmd.args(args);
    for (k, v) in env {
        cmd.env(k, v);
    }
    cmd.output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn json(o: &Output) -> Value {
    serde_json::from_str(&stdout(o)).expect("valid JSON")
}

#[test]
fn character_example() {
    let o = run(&["character", "--n", "2", "--lambda", "2,0", "--w", "s1", "--kind", "demazure"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "x1^2 + x1*x2 + x2^2\n");
}

#[test]
fn verify_cauchy_example() {
    let o = run(&["verify-cauchy", "--n", "2", "--degree", "4", "--variant", "lower"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).lines().next(), Some("ok"));
}

#[test]
fn rsk_example() {
    let o = run(&["rsk", "--n", "2", "--matrix", "0,0;1,0"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    let p: Tableau = serde_json::from_value(v["P"].clone()).unwrap();
    let q: Tableau = serde_json::from_value(v["Q"].clone()).unwrap();
    assert_eq!(p.rows()[0], vec![2]);
    assert_eq!(q.rows()[0], vec![1]);
    let m: NNMatrix = serde_json::from_value(v["matrix"].clone()).unwrap();
    assert_eq!(m, NNMatrix::parse("0,0;1,0").unwrap());
}

#[test]
fn json_round_trips_through_parsers() {
    let o = run(&["enumerate", "--n", "3", "--lambda", "2,1", "--w", "231", "--kind", "opposite"]);
    let v = json(&o);
    let elements: Vec<Tableau> = serde_json::from_value(v["elements"].clone()).unwrap();
    assert_eq!(elements.len() as u64, v["count"].as_u64().unwrap());

    let o = run(&["character", "--n", "3", "--lambda", "2,1", "--w", "s2*s1", "--kind", "atom", "--format", "json"]);
    let v = json(&o);
    let ch = SparsePoly::from_json(3, &v["character"]).unwrap();
    let table = stdout(&run(&["character", "--n", "3", "--lambda", "2,1", "--w", "s2*s1", "--kind", "atom"]));
    assert_eq!(format!("{ch}\n"), table);

    let o = run(&["path", "--n", "3", "--lambda", "2,1", "--ops", "f1,f2,f2"]);
    let v = json(&o);
    let _: LSPath = serde_json::from_value(v["path"].clone()).unwrap();
    let _: Tableau = serde_json::from_value(v["tableau"].clone()).unwrap();

    let o = run(&["continuous-check", "--matrix", "0,0,0;1/2,1/3,0;1,0,1/4", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["ok"], true);
    let _: PLPath = serde_json::from_value(v["first"].clone()).unwrap();
    let _: PLPath = serde_json::from_value(v["second"].clone()).unwrap();
}

#[test]
fn identical_flags_give_identical_output() {
    let args = ["verify-all", "--max-n", "2", "--max-degree", "4", "--seed", "9", "--format", "json"];
    let a = run(&args);
    let b = run_env(&args, &[("CRYSTAL_CAUCHY_THREADS", "1")]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let args = ["continuous-check", "--seed", "5", "--group-law", "50", "--commutation", "20", "--main2", "20"];
    assert_eq!(run(&args).stdout, run(&args).stdout);
}

#[test]
fn usage_errors_name_the_flag() {
    let cases: [(&[&str], &str); 5] = [
        (&["rsk", "--n", "2", "--matrix", "0,0;x,0"], "--matrix"),
        (&["character", "--n", "2", "--lambda", "0,2", "--w", "e"], "--lambda"),
        (&["character", "--n", "2", "--lambda", "2,0", "--w", "s5"], "--w"),
        (&["classify", "--n", "2", "--matrix", "0,1;0,0"], "--matrix"),
        (&["verify-cauchy", "--n", "2", "--degree", "2", "--variant", "upper"], "--variant"),
    ];
    for (args, flag) in cases {
        let o = run(args);
        assert_eq!(o.status.code(), Some(2), "{args:?}");
        assert!(stderr(&o).contains(flag), "{args:?}: {}", stderr(&o));
    }
    let o = run_env(&["verify-littlewood", "--n", "1", "--degree", "2"], &[("CRYSTAL_CAUCHY_THREADS", "many")]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("CRYSTAL_CAUCHY_THREADS"));
}

#[test]
fn verify_all_exit_status() {
    let o = run(&["verify-all", "--max-n", "0"]);
    assert_eq!(o.status.code(), Some(0));
    let o = run(&["verify-all", "--max-n", "2", "--max-degree", "4"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).lines().last(), Some("ok"));
    let o = run(&["verify-all", "--max-n", "2", "--max-degree", "4", "--inject-fault"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn out_flag_writes_file() {
    let dir = std::env::temp_dir().join(format!("crystal-cauchy-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("littlewood.json");
    let o = run(&["verify-littlewood", "--n", "2", "--degree", "4", "--format", "json", "--out", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["ok"], true);
    assert_eq!(v["variant"], "littlewood");
    std::fs::remove_dir_all(dir).unwrap();
}

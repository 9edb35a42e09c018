use std::io::Write;
use std::path::PathBuf;
use std::process::{Command, Output, Stdio};

use serde_json::Value;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_polymut"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().unwrap()
}

fn run_stdin(args: &[&str], input: &str) -> Output {
    let mut child = bin()
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(input.as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).unwrap_or_else(|e| {
        panic!("{e}: {}", String::from_utf8_lossy(&o.stderr))
    })
}

fn fixture(name: &str, body: &str) -> String {
    let dir = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join("cli");
    std::fs::create_dir_all(&dir).unwrap();
    let p = dir.join(name);
    std::fs::write(&p, body).unwrap();
    p.to_string_lossy().into_owned()
}

fn vertices(v: &Value) -> Vec<Vec<String>> {
    serde_json::from_value(v["vertices"].clone()).unwrap()
}

fn check_status(v: &Value, name: &str) -> String {
    v["checks"]
        .as_array()
        .unwrap()
        .iter()
        .find(|c| c["name"] == name)
        .unwrap_or_else(|| panic!("no check {name}"))["status"]
        .as_str()
        .unwrap()
        .to_owned()
}

const P: &str = r#"{"dim":2,"vertices":[["1","1"],["0","1"],["-1","-1"],["0","-1"]]}"#;

#[test]
fn gen_kinds() {
    let o = run(&["gen", "fflv-a", "--n", "1", "--lambda", "3"]);
    assert!(o.status.success());
    assert_eq!(vertices(&json(&o)), vec![vec!["0"], vec!["3"]]);

    let gt = json(&run(&["gen", "gt-a", "--n", "2", "--lambda", "2,2"]));
    assert_eq!(gt["dim"], 3);
    assert!(!gt["halfspaces"].as_array().unwrap().is_empty());

    let no = json(&run(&["gen", "sl4-nobody", "--lambda", "2,2,2"]));
    assert_eq!(no["dim"], 6);
}

#[test]
fn marked_poset_kinds() {
    let poset = fixture(
        "chain.json",
        r#"{"elements":["p","q","lo","hi"],"covers":[["lo","p"],["p","q"],["q","hi"]],"marked":{"lo":0,"hi":2}}"#,
    );
    let order = json(&run(&["gen", "marked-order", "--poset", &poset]));
    let chain = json(&run(&["gen", "marked-chain", "--poset", &poset]));
    assert_eq!(vertices(&order).len(), 3);
    assert_eq!(vertices(&chain).len(), 3);
    let mixed = run(&["gen", "marked-chain-order", "--poset", &poset, "--pi-prime", "q"]);
    assert!(mixed.status.success(), "{}", String::from_utf8_lossy(&mixed.stderr));
}

#[test]
fn mutate_sides() {
    let p = fixture("p.json", P);
    let d = fixture("d.json", r#"{"w":[0,-1],"F":{"dim":2,"vertices":[["0","0"],["1","0"]]}}"#);
    let n = json(&run(&["mutate", "--side", "N", "--datum", &d, "--polytope", &p]));
    assert_eq!(vertices(&n), vec![vec!["-1", "-1"], vec!["0", "1"], vec!["1", "-1"]]);

    let zero = fixture("z.json", r#"{"w":[0,-1],"F":{"dim":2,"vertices":[["0","0"]]}}"#);
    let same = json(&run_stdin(&["mutate", "--side", "N", "--datum", &zero], P));
    let v = |a: &str, b: &str| vec![a.to_owned(), b.to_owned()];
    assert_eq!(vertices(&same), vec![v("-1", "-1"), v("0", "-1"), v("0", "1"), v("1", "1")]);

    let bad = fixture("b.json", r#"{"w":[0,-1],"F":{"dim":2,"vertices":[["0","0"],["3","0"]]}}"#);
    let o = run(&["mutate", "--side", "N", "--datum", &bad, "--polytope", &p]);
    assert_eq!(o.status.code(), Some(3));
    assert_eq!(json(&o)["error"], "NotWellDefined");
}

#[test]
fn mutate_tropical_writes_the_seed() {
    let seed = fixture(
        "seed.json",
        r#"{"J":[1,2,3,4,5,6],"J_uf":[1,2,3],"epsilon":[[0,-1,1,0,0,0],[1,0,-1,-1,1,0],[-1,1,0,0,-1,1]]}"#,
    );
    let body = run(&["gen", "sl4-nobody"]);
    let out = fixture("seed2.json", "");
    let o = run_stdin(
        &["mutate", "--side", "tropical", "--seed", &seed, "--k", "2", "--seed-out", &out],
        &String::from_utf8(body.stdout).unwrap(),
    );
    assert!(o.status.success());
    let s: Value = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(s["epsilon"][1], serde_json::json!([-1, 0, 1, 1, -1, 0]));
    let frozen = run(&["mutate", "--side", "tropical", "--seed", &seed, "--k", "5", "--gen", "sl4-nobody"]);
    assert_eq!(frozen.status.code(), Some(2));
}

#[test]
fn check_reports() {
    let o = run(&["check", "interior", "--gen", "gt-a", "--n", "2", "--lambda", "2,2"]);
    assert!(o.status.success());
    let v = json(&o);
    assert_eq!(v["status"], "pass");
    let labeled = &v["checks"][0]["witness"]["labeled"];
    assert_eq!((&labeled["a1.1"], &labeled["a1.2"], &labeled["a2.1"]), (&3.into(), &1.into(), &2.into()));

    let o = run(&["check", "transfer-factorization", "--type", "A", "--n", "2", "--lambda", "2,2"]);
    assert!(o.status.success());

    let o = run(&["check", "counterexample"]);
    assert!(o.status.success());
    assert_eq!(check_status(&json(&o), "no-common-fixed-origin"), "pass");

    let o = run(&["check", "reflexive-dual", "--gen", "sl4-nobody"]);
    assert!(o.status.success());

    let o = run(&["check", "interior", "--gen", "gt-a", "--n", "2", "--lambda", "1,1"]);
    assert_eq!(o.status.code(), Some(3));
    assert_eq!(json(&o)["checks"][0]["witness"]["interior_points"], serde_json::json!([]));
}

#[test]
fn check_duality_and_equivalence() {
    let p = fixture("p2.json", P);
    let d = fixture("d2.json", r#"{"w":[0,-1],"F":{"dim":2,"vertices":[["0","0"],["1","0"]]}}"#);
    let o = run(&["check", "duality", "--polytope", &p, "--datum", &d]);
    assert!(o.status.success());

    let q = fixture("q.json", r#"{"dim":2,"vertices":[["3","2"],["2","2"],["1","0"],["2","0"]]}"#);
    let o = run(&["check", "equivalent", "--polytope", &p, "--other", &q]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stdout));

    let o = run(&["check", "equivalent", "--polytope", &p, "--other", &q, "--frame-budget", "0"]);
    assert_eq!(o.status.code(), Some(4));

    let o = run(&["check", "ehrhart-dual-invariance", "--polytope", &p, "--datum", &d]);
    assert!(o.status.success());
}

#[test]
fn explore_reports() {
    let o = run(&["explore", "--depth", "0"]);
    assert!(o.status.success());
    let v = json(&o);
    assert_eq!(v["data"]["unique_nodes"], 1);

    let o = run(&["explore", "--depth", "2", "--k-max", "2"]);
    let v = json(&o);
    assert_eq!(check_status(&v, "unique-interior-lattice-point"), "pass");
    assert_eq!(check_status(&v, "lattice-duals"), "pass");
    assert_eq!(check_status(&v, "constant-payload-ehrhart"), "pass");

    let o = run(&["explore", "--depth", "7"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn output_is_independent_of_thread_count() {
    let args = ["explore", "--depth", "2", "--k-max", "1"];
    let one = bin().args(args).env("POLYMUT_THREADS", "1").output().unwrap();
    let many = bin().args(args).env("POLYMUT_THREADS", "6").output().unwrap();
    assert_eq!(one.stdout, many.stdout);
    let bad = bin().args(args).env("POLYMUT_THREADS", "0").output().unwrap();
    assert_eq!(bad.status.code(), Some(2));
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(run(&["gen", "gt-a"]).status.code(), Some(2));
    assert_eq!(run(&["gen", "gt-a", "--n", "2", "--lambda", "1"]).status.code(), Some(2));
    assert_eq!(run(&["gen", "gt-a", "--n", "2", "--lambda", "1,-1"]).status.code(), Some(2));
}

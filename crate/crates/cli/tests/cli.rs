use std::path::Path;
use std::process::{Command, Output};

use tempfile::TempDir;

fn ctsp(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ctsp")).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn gen(dir: &Path, n: usize, m: usize, seed: u64) -> String {
    let p = dir.join(format!("g{n}-{m}-{seed}.gtsp"));
    let o = ctsp(&["gen", "--n", &n.to_string(), "--m", &m.to_string(), "--seed", &seed.to_string(), "-o", p.to_str().unwrap()]);
    assert!(o.status.success(), "{o:?}");
    p.to_str().unwrap().to_string()
}

fn exact_cost(inst: &str, extra: &[&str]) -> i64 {
    let mut args = vec!["exact", inst];
    args.extend(extra);
    let o = ctsp(&args);
    assert!(o.status.success(), "{o:?}");
    stdout(&o).trim().strip_prefix("cost ").unwrap().parse().unwrap()
}

#[test]
fn exact_agrees_through_transformation() {
    let dir = TempDir::new().unwrap();
    let inst = gen(dir.path(), 9, 3, 4);
    assert_eq!(exact_cost(&inst, &[]), exact_cost(&inst, &["--via-tsp"]));
}

#[test]
fn solve_writes_tours_and_log() {
    let dir = TempDir::new().unwrap();
    let inst = gen(dir.path(), 30, 4, 2);
    let out = dir.path().join("tours");
    let log = dir.path().join("log.jsonl");
    let o = ctsp(&[
        "solve", &inst, "--pop", "20", "--offspring", "5", "--runs", "2", "--seed", "7",
        "--out-dir", out.to_str().unwrap(), "--log", log.to_str().unwrap(),
    ]);
    assert!(o.status.success(), "{o:?}");
    let tours: Vec<_> = std::fs::read_dir(&out).unwrap().flatten().collect();
    assert_eq!(tours.len(), 2);
    for t in tours {
        let v = ctsp(&["validate", &inst, "--tour", t.path().to_str().unwrap()]);
        assert!(v.status.success(), "{v:?}");
    }
    let text = std::fs::read_to_string(&log).unwrap();
    let first: serde_json::Value = serde_json::from_str(text.lines().next().unwrap()).unwrap();
    for key in ["run", "seed", "generation", "best", "average", "elapsed"] {
        assert!(first.get(key).is_some(), "missing {key}");
    }
    assert_eq!(first["seed"], 7);
}

#[test]
fn validate_rejects_broken_tour() {
    let dir = TempDir::new().unwrap();
    let inst = gen(dir.path(), 8, 2, 1);
    let bad = dir.path().join("bad.tour");
    std::fs::write(&bad, "TOUR_SECTION\n1\n2\n2\n-1\nEOF\n").unwrap();
    assert_eq!(ctsp(&["validate", &inst, "--tour", bad.to_str().unwrap()]).status.code(), Some(2));
}

#[test]
fn exit_codes() {
    let dir = TempDir::new().unwrap();
    assert_eq!(ctsp(&["validate", "/no/such/file"]).status.code(), Some(1));
    assert_eq!(ctsp(&["frobnicate"]).status.code(), Some(1));
    let junk = dir.path().join("junk.gtsp");
    std::fs::write(&junk, "NAME : x\nDIMENSION : oops\n").unwrap();
    assert_eq!(ctsp(&["validate", junk.to_str().unwrap()]).status.code(), Some(2));
    let big = gen(dir.path(), 30, 3, 1);
    assert_eq!(ctsp(&["exact", &big]).status.code(), Some(3));
    assert!(ctsp(&["--help"]).status.success());
}

#[test]
fn export_model_formulations() {
    let dir = TempDir::new().unwrap();
    let inst = gen(dir.path(), 6, 2, 3);
    for f in ["mtz", "mcf"] {
        let o = ctsp(&["export-model", &inst, "--formulation", f]);
        assert!(o.status.success());
        let text = stdout(&o);
        assert!(text.starts_with('\\') && text.trim_end().ends_with("End"));
    }
    assert_eq!(ctsp(&["export-model", &inst, "--formulation", "dfj"]).status.code(), Some(1));
}

#[test]
fn transform_carries_big_m() {
    let dir = TempDir::new().unwrap();
    let inst = gen(dir.path(), 10, 3, 5);
    let o = ctsp(&["transform", &inst]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert!(text.contains("EDGE_WEIGHT_TYPE : EXPLICIT") && text.contains("big-M"), "{text}");
}

#[test]
fn bench_then_profile() {
    let dir = TempDir::new().unwrap();
    let a = gen(dir.path(), 20, 3, 1);
    let b = gen(dir.path(), 25, 4, 2);
    let manifest = dir.path().join("set.txt");
    let name = |p: &str| Path::new(p).file_name().unwrap().to_str().unwrap().to_string();
    std::fs::write(&manifest, format!("# two instances\n{}\n{} 100000\n", name(&a), name(&b))).unwrap();
    let csv = dir.path().join("r.csv");
    let eax = dir.path().join("eax.json");
    let ls = dir.path().join("ls.json");
    let m = manifest.to_str().unwrap();
    let o = ctsp(&["bench", m, "--pop", "10", "--offspring", "3", "--runs", "2", "--csv", csv.to_str().unwrap(), "--archive", eax.to_str().unwrap()]);
    assert!(o.status.success(), "{o:?}");
    assert!(stdout(&o).starts_with("Instance"));
    assert_eq!(std::fs::read_to_string(&csv).unwrap().lines().count(), 3);
    let o = ctsp(&["bench", m, "--algo", "ls", "--runs", "2", "--archive", ls.to_str().unwrap()]);
    assert!(o.status.success(), "{o:?}");
    let o = ctsp(&["profile", eax.to_str().unwrap(), ls.to_str().unwrap(), "--metric", "time"]);
    assert!(o.status.success(), "{o:?}");
    let text = stdout(&o);
    assert!(text.starts_with("algorithm,tau,rho"));
    assert!(text.contains("GA-EAX,") && text.contains("LS,"));
}

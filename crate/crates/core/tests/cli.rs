use std::fs;
use std::process::{Command, Output};

use tempfile::TempDir;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_treedepth")).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn write(dir: &TempDir, name: &str, text: &str) -> String {
    let p = dir.path().join(name);
    fs::write(&p, text).unwrap();
    p.to_str().unwrap().to_string()
}

#[test]
fn gen_is_deterministic_and_parses() {
    let dir = TempDir::new().unwrap();
    let a = dir.path().join("a.txt");
    let b = dir.path().join("b.txt");
    for p in [&a, &b] {
        let o = run(&["gen", "--model", "gnp", "--n", "30", "--c", "2", "--seed", "7", "-o", p.to_str().unwrap()]);
        assert!(o.status.success());
    }
    let text = fs::read_to_string(&a).unwrap();
    assert_eq!(text, fs::read_to_string(&b).unwrap());
    assert!(text.starts_with("30 "));
    let o = run(&["gen", "--model", "regular", "--n", "10", "--d", "3"]);
    assert!(o.status.success());
    assert!(stdout(&o).starts_with("10 15\n"));
}

#[test]
fn solve_reports_values_and_witnesses() {
    let dir = TempDir::new().unwrap();
    let path = write(&dir, "p15.txt", &treedepth::Graph::path(15).to_edge_list());
    let o = run(&["solve", "td", "exact", &path]);
    assert!(o.status.success());
    let out = stdout(&o);
    assert!(out.starts_with("td 4\n"));
    let forest = treedepth::elimination::EliminationForest::parse_text(out.split_once('\n').unwrap().1).unwrap();
    assert_eq!(forest.height(), 4);

    let k4 = write(&dir, "k4.txt", "4 6\n0 1\n0 2\n0 3\n1 2\n1 3\n2 3\n");
    assert!(stdout(&run(&["solve", "tw", "exact", &k4])).starts_with("tw 3\n"));
    let bounds = stdout(&run(&["solve", "td", "bounds", &k4]));
    assert!(bounds.starts_with("td_lower 3\ntd_upper 4\n"), "{bounds}");
    assert!(stdout(&run(&["solve", "tw", "bounds", &k4])).starts_with("tw_upper 3\n"));
}

#[test]
fn census_expand_and_separate() {
    let dir = TempDir::new().unwrap();
    let g = write(&dir, "g.txt", "8 8\n0 1\n0 4\n1 2\n2 3\n3 4\n5 6\n6 7\n5 7\n");
    let census = stdout(&run(&["census", &g, "--seed", "3", "--c", "2"]));
    assert_eq!(census, "seed,n,c,k,ell,count\n3,8,2,3,0,1\n3,8,2,5,0,1\n");

    let pet = write(&dir, "pet.txt", &treedepth::Graph::petersen().to_edge_list());
    let expand = stdout(&run(&["expand", &pet]));
    assert!(expand.contains("lambda2 1"), "{expand}");
    assert!(expand.lines().any(|l| l.starts_with("phi_witness ")));

    let p7 = write(&dir, "p7.txt", &treedepth::Graph::path(7).to_edge_list());
    assert!(stdout(&run(&["separate", &p7, "1"])).starts_with("found k=1\n"));
    let k7 = write(&dir, "k7.txt", &treedepth::Graph::complete(7).to_edge_list());
    assert_eq!(stdout(&run(&["separate", &k7, "2"])), "absent k=2\n");
}

#[test]
fn experiment_output_is_reproducible() {
    let dir = TempDir::new().unwrap();
    let cfg = write(&dir, "cfg.txt", "regime = dense\np = 0.5\nn = 6, 8\ntrials = 3\nseed = 1\n");
    let a = dir.path().join("a.csv");
    let b = dir.path().join("b.csv");
    for p in [&a, &b] {
        assert!(run(&["experiment", &cfg, "-o", p.to_str().unwrap()]).status.success());
    }
    let csv = fs::read_to_string(&a).unwrap();
    assert_eq!(csv, fs::read_to_string(&b).unwrap());
    assert!(csv.starts_with("# schema=1\nregime,n,trial,"));
    assert_eq!(csv.lines().count(), 2 + 6);
}

#[test]
fn verify_passes() {
    let o = run(&["verify", "--seed", "3", "--graphs", "20", "--max-n", "8"]);
    assert!(o.status.success());
    assert!(!stdout(&o).contains("FAIL"));
}

#[test]
fn usage_errors_exit_with_two() {
    let dir = TempDir::new().unwrap();
    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(run(&["solve", "td", "exact"]).status.code(), Some(2));
    assert_eq!(run(&["solve", "td", "exact", "/nonexistent/graph"]).status.code(), Some(2));
    let bad = write(&dir, "bad.txt", "3 1\n0 0\n");
    assert_eq!(run(&["solve", "td", "exact", &bad]).status.code(), Some(2));
    let cfg = write(&dir, "cfg.txt", "regime = dense\nn = 5\n");
    assert_eq!(run(&["experiment", &cfg]).status.code(), Some(2));
    let big = write(&dir, "big.txt", &treedepth::Graph::path(30).to_edge_list());
    assert_eq!(run(&["solve", "td", "exact", &big]).status.code(), Some(2));
    assert_eq!(run(&["gen", "--model", "regular", "--n", "5", "--d", "3"]).status.code(), Some(2));
}

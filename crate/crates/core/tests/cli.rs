use std::process::{Command, Output};

use cyclecover::graph::parse_cg;
use cyclecover::harness::{generate, GeneratorKind, GeneratorSpec};
use cyclecover::Rational;

fn run(args: &[&str], dir: &std::path::Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cyclecover"))
        .args(args)
        .current_dir(dir)
        .output()
        .unwrap()
}

fn text(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn gen_gnp_matches_library() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(&["gen", "gnp", "--n", "9", "--p", "1/2", "--q", "1/3", "--seed", "5"], dir.path());
    assert_eq!(out.status.code(), Some(0));
    let g = parse_cg(&text(&out)).unwrap();
    let spec = GeneratorSpec {
        kind: GeneratorKind::Gnp {
            n: 9,
            p: Rational::new(1, 2),
            q: Rational::new(1, 3),
        },
        seed: 5,
    };
    assert_eq!(g, generate(&spec).unwrap());
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let g = run(&["gen", "gkm", "--k", "1", "--m", "2"], dir.path());
    std::fs::write(dir.path().join("g.cg"), &g.stdout).unwrap();

    let fail = run(&["partition", "g.cg", "--k", "2"], dir.path());
    assert_eq!(fail.status.code(), Some(1));
    assert!(text(&fail).starts_with("none"));

    let pass = run(&["partition", "g.cg", "--k", "3"], dir.path());
    assert_eq!(pass.status.code(), Some(0));
    assert_eq!(text(&pass).lines().filter(|l| l.starts_with("cycle ")).count(), 3);

    assert_eq!(run(&["check", "g.cg", "--posa", "1/2", "1/4", "-1"], dir.path()).status.code(), Some(1));
    assert_eq!(run(&["check", "missing.cg", "--ore", "0"], dir.path()).status.code(), Some(2));
    assert_eq!(run(&["check", "g.cg", "--ore", "x/y"], dir.path()).status.code(), Some(2));
    assert_eq!(run(&["check", "g.cg"], dir.path()).status.code(), Some(2));

    std::fs::write(dir.path().join("bad.cg"), "p cg 2 2\ne 1 2 r\ne 1 2 b\n").unwrap();
    let bad = run(&["components", "bad.cg"], dir.path());
    assert_eq!(bad.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&bad.stderr).contains("line 3"));
}

#[test]
fn cap_env_limits_partition_search() {
    let dir = tempfile::tempdir().unwrap();
    let g = run(&["gen", "gkm", "--k", "1", "--m", "2"], dir.path());
    std::fs::write(dir.path().join("g.cg"), &g.stdout).unwrap();
    let out = Command::new(env!("CARGO_BIN_EXE_cyclecover"))
        .args(["maxcover", "g.cg", "--k", "2"])
        .current_dir(dir.path())
        .env("CYCLECOVER_CAP", "6")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}

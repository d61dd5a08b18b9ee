use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use multipers::report::parse_report;

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_multipers"));
    c.env("MULTIPERS_THREADS", "2");
    c
}

fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(name)
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn example31_experiment() {
    let o = run(&["experiment", "example31"]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let r = parse_report(&stdout(&o)).unwrap();
    assert_eq!(r.get("d0_sampled"), Some("0/1 (0.000000)"));
    assert_eq!(r.get("d_I_upper"), Some("1/1 (1.000000)"));
    assert_eq!(r.get("status"), Some("PASS"));
}

#[test]
fn match_dist_to_itself_is_zero() {
    let n = fixture("example31_N.fpres");
    let o = run(&["match-dist", s(&n), s(&n)]);
    assert_eq!(o.status.code(), Some(0));
    let r = parse_report(&stdout(&o)).unwrap();
    assert_eq!(r.get("value"), Some("0/1 (0.000000)"));
}

#[test]
fn match_dist_is_deterministic() {
    let n = fixture("example31_N.fpres");
    let o = fixture("example31_O.fpres");
    let args = [
        "match-dist",
        s(&n),
        s(&o),
        "--lines",
        "16",
        "--adaptive",
        "2",
        "--seed",
        "42",
        "--emit-argmax",
    ];
    let a = run(&args);
    let b = run(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let r = parse_report(&stdout(&a)).unwrap();
    assert!(r.get("argmax").unwrap().starts_with("direction ("));
    assert_eq!(r.get("seed"), Some("42"));
}

#[test]
fn verify_accepts_fixture_and_rejects_corruption() {
    let n = fixture("example31_N.fpres");
    let o = fixture("example31_O.fpres");
    let w = fixture("example31_witness.txt");
    let ok = run(&["verify", s(&n), s(&o), s(&w)]);
    assert_eq!(ok.status.code(), Some(0));
    assert_eq!(parse_report(&stdout(&ok)).unwrap().get("result"), Some("accepted"));

    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.txt");
    std::fs::write(&bad, "witness 1/2\nf 0 -> 1:0\nf 1 -> 1:1\ng 0 -> 1:0\ng 1 -> 1:1\ng 2 -> 1:0\n").unwrap();
    let rejected = run(&["verify", s(&n), s(&o), s(&bad)]);
    assert_eq!(rejected.status.code(), Some(2));
    let r = parse_report(&stdout(&rejected)).unwrap();
    assert_eq!(r.get("result"), Some("rejected"));
    assert!(r.get("reason").is_some());
}

#[test]
fn input_errors_exit_one() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.fpres");
    std::fs::write(&bad, "fpres 1\nfield 2\nparams 2\ngenerators 1\ng a 1 1\nrelations 1\nr 0 0 ; 1:0\n").unwrap();
    let o = run(&["minimize", s(&bad)]);
    assert_eq!(o.status.code(), Some(1));
    let err = String::from_utf8_lossy(&o.stderr);
    assert!(err.contains("line 7"), "{}", err);
    assert!(err.contains("relation 0"), "{}", err);

    assert_eq!(run(&["minimize", "/nonexistent.fpres"]).status.code(), Some(1));
    assert_eq!(run(&["frobnicate"]).status.code(), Some(1));
}

#[test]
fn module_commands() {
    let o = fixture("example31_O.fpres");
    let betti = run(&["betti", s(&o), "--format", "tabular"]);
    assert_eq!(betti.status.code(), Some(0));
    let r = parse_report(&stdout(&betti)).unwrap();
    assert_eq!(r.get("partial_complexity"), Some("8"));
    assert_eq!(r.get("controlling_constant"), Some("1/1 (1.000000)"));

    let h = run(&["hilbert", s(&o), "--at", "1,1", "--at", "5,5"]);
    let r = parse_report(&stdout(&h)).unwrap();
    let dims: Vec<&str> = r.entries.iter().map(|(_, v)| v.as_str()).collect();
    assert_eq!(dims, ["(1/1, 1/1) 2", "(5/1, 5/1) 2"]);

    let dir = tempfile::tempdir().unwrap();
    let min = dir.path().join("min.fpres");
    assert_eq!(run(&["minimize", s(&o), "-o", s(&min)]).status.code(), Some(0));
    let m = multipers::format::fpres::parse_fpres(&std::fs::read_to_string(&min).unwrap()).unwrap();
    assert_eq!(m.relations().len(), 5);

    for args in [
        vec!["simplify", s(&o), "--eps", "1/2"],
        vec!["merge", s(&o), "--delta", "1/4"],
        vec!["merge", s(&o), "--delta", "1/4", "--variant", "plus", "--raw"],
        vec!["restrict", s(&o), "--direction", "1,1", "--base", "0,0"],
        vec!["barcode", s(&o), "--direction", "1,1/2", "--base", "0,0", "--simplify", "1/2"],
        vec!["lower-bound", s(&o), s(&o), "--probe", "1,1"],
        vec!["interpolate", s(&o), "--from-translate", "1", "--t", "1/2"],
    ] {
        let out = run(&args);
        assert_eq!(out.status.code(), Some(0), "{:?}: {}", args, String::from_utf8_lossy(&out.stderr));
    }
}

#[test]
fn grid_align_writes_a_verifiable_witness() {
    let dir = tempfile::tempdir().unwrap();
    let grid = dir.path().join("grid.fpres");
    let input = dir.path().join("in.fpres");
    std::fs::write(&grid, "fpres 1\nfield 2\nparams 2\ngenerators 2\ng a 0 1\ng b 1 0\nrelations 2\nr 3 3 ; 1:0\nr 2 2 ; 1:1\n").unwrap();
    std::fs::write(&input, "fpres 1\nfield 2\nparams 2\ngenerators 2\ng a -1/64 1\ng b 1 0\nrelations 2\nr 3 3 ; 1:0\nr 2 2 ; 1:1\n").unwrap();
    let w = dir.path().join("w.txt");
    let out = dir.path().join("out.fpres");
    let o = run(&["grid-align", s(&input), "--grid-from", s(&grid), "--kappa-eps", "1/64", "--witness-out", s(&w), "-o", s(&out)]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let text = std::fs::read_to_string(&w).unwrap();
    assert!(text.starts_with("witness 17/32\n"));
    let aligned = std::fs::read_to_string(&out).unwrap();
    assert!(aligned.contains("g a 0/1 1/1"));
}

#[test]
fn bottleneck_and_path_length() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.bars");
    let b = dir.path().join("b.bars");
    std::fs::write(&a, "bar 0 4 1\nbar 1 inf 1\n").unwrap();
    std::fs::write(&b, "bar 1/2 4 1\nbar 1 inf 1\nbar 0 1 1\n").unwrap();
    let o = run(&["bottleneck", s(&a), s(&b)]);
    let r = parse_report(&stdout(&o)).unwrap();
    assert_eq!(r.get("value"), Some("1/2 (0.500000)"));

    let n = fixture("example31_N.fpres");
    let o = run(&["path-length", s(&n), "--from-translate", "1/2", "--lines", "8"]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    assert_eq!(parse_report(&stdout(&o)).unwrap().get("length"), Some("1/2 (0.500000)"));
}

#[test]
fn blocks_commands() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.blocks");
    let b = dir.path().join("b.blocks");
    std::fs::write(&a, "blocks 1\nblk oo 0 4\nblk cc 1 2\n").unwrap();
    std::fs::write(&b, "blocks 1\nblk oo 1/2 4\n").unwrap();
    let ext = run(&["blocks", "extend", s(&a)]);
    let r = parse_report(&stdout(&ext)).unwrap();
    assert_eq!(r.entries[0].1, "oo 0 4 -> rect -4/1 0/1 0/1 4/1 radius 2/1");
    let d = run(&["blocks", "dist", s(&a), s(&b)]);
    assert_eq!(d.status.code(), Some(0));
    let r = parse_report(&stdout(&d)).unwrap();
    assert_eq!(r.get("extended"), Some("inf"));
    let fp = run(&["blocks", "extend", s(&b), "--fpres"]);
    assert!(stdout(&fp).starts_with("fpres 1\n"));
}

#[test]
fn experiments_exit_codes() {
    let o = run(&["experiment", "sandwich", "--count", "10", "--seed", "3"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(parse_report(&stdout(&o)).unwrap().get("status"), Some("PASS"));

    let n = fixture("example31_N.fpres");
    let no = fixture("example31_O.fpres");
    let w = fixture("example31_witness.txt");
    let o = run(&["experiment", "local-equiv", s(&n), s(&no), "--kappa", "1/40", "--witness", s(&w)]);
    assert_eq!(o.status.code(), Some(0));
    let r = parse_report(&stdout(&o)).unwrap();
    assert_eq!(r.get("status"), Some("HYPOTHESIS-UNMET"));
    let o = run(&["experiment", "local-equiv", s(&n), s(&no), "--kappa", "1/34"]);
    assert_eq!(o.status.code(), Some(1));
}

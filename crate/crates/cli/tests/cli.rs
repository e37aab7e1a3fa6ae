// SPDX-License-Identifier: Apache-2.0

use std::path::PathBuf;
use std::process::{Command, Output};

fn sample(name: &str) -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "..", "..", "samples", name]
        .iter()
        .collect();
    p.to_str().unwrap().to_string()
}

fn karno(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_karno"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn ok(args: &[&str]) -> String {
    let out = karno(args);
    assert!(
        out.status.success(),
        "{args:?} failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

fn code(args: &[&str]) -> i32 {
    karno(args).status.code().unwrap()
}

#[test]
fn table_listings() {
    assert_eq!(ok(&["table", "AB"]), "A B\n00 0\n01 0\n10 0\n11 1\n");
    assert_eq!(ok(&["table", "A + B"]), "A B\n00 0\n01 1\n10 1\n11 1\n");
    assert_eq!(ok(&["table", "1"]), "-\n1\n");
    assert_eq!(
        ok(&["--order", "B,A", "table", "AB'"]),
        "B A\n00 0\n01 1\n10 0\n11 0\n"
    );
}

#[test]
fn minimize_expressions_and_files() {
    let out = ok(&["minimize", "A'B'C' + A'B'C + ABC' + AB'C'"]);
    assert_eq!(out.lines().next(), Some("A'B' + AC'"));
    assert_eq!(ok(&["minimize", &sample("majority.pla")]).lines().next(), Some("AB + AC + BC"));
    assert_eq!(ok(&["minimize", &sample("f.tt")]).lines().next(), Some("A'B' + AC'"));

    let pos = ok(&["minimize", "--form", "pos", "ABC + A'BC + AB'C'"]);
    let pos = pos.lines().next().unwrap();
    assert!(pos.starts_with('('));
    assert_eq!(ok(&["check", pos, "ABC + A'BC + AB'C'"]), "equivalent\n");

    let multi = ok(&["minimize", &sample("adder.fn")]);
    assert!(multi.starts_with("sum = A'B + AB'\ncarry = AB\n"));
}

#[test]
fn check_reports_counterexamples() {
    assert_eq!(ok(&["check", "A'BC + AB'C + ABC' + ABC", "AB + AC + BC"]), "equivalent\n");
    assert_eq!(ok(&["check", "A", "B"]), "not equivalent: A=1,B=0\n");
    assert_eq!(code(&["check", "ABCDEFGHIJKLMNOPQRSTUVWXY", "A"]), 1);
}

#[test]
fn kmap_and_parse() {
    let k = ok(&["kmap", "AB + AC + BC"]);
    assert!(k.starts_with("A\\BC | 00 01 11 10\n"));
    assert_eq!(ok(&["parse", "A.B + C'"]), "AB + C'\n");
    assert_eq!(ok(&["--order", "Qa,Qb", "parse", "Qa'Qb"]), "Qa'Qb\n");
    assert_eq!(code(&["parse", "A +"]), 1);
    assert_eq!(code(&["kmap", "A"]), 1);
}

#[test]
fn synth_targets() {
    let aoi = ok(&["synth", "--target", "aoi", "AB + AC + BC"]);
    let count = |kind: &str| {
        aoi.lines()
            .filter(|l| l.split_whitespace().nth(2) == Some(kind))
            .count()
    };
    assert_eq!((count("AND"), count("OR"), count("NOT")), (3, 1, 0));

    let pla = ok(&["synth", "--target", "pla", &sample("majority.pla")]);
    let terms = pla.lines().filter(|l| !l.starts_with('.')).count();
    assert_eq!(terms, 3);

    let mux = ok(&["synth", "--target", "mux", "AB"]);
    assert!(mux.contains("output F"));

    assert_eq!(
        code(&["synth", "--target", "pal", "--pal-terms", "2", &sample("majority.pla")]),
        1
    );
    assert_eq!(code(&["synth", "--target", "pla", "--pla-terms", "2", "AB + AC + BC"]), 1);
}

#[test]
fn fsm_and_simulation() {
    let dir = tempfile::tempdir().unwrap();
    let net = dir.path().join("counter.net");
    let dot = dir.path().join("counter.dot");
    let report = ok(&[
        "fsm",
        &sample("counter.st"),
        "--ff",
        "d",
        "--out",
        net.to_str().unwrap(),
        "--dot",
        dot.to_str().unwrap(),
    ]);
    assert_eq!(
        report,
        "Da = Qa'QbQc + QaQb' + QaQc'\nDb = Qb'Qc + QbQc'\nDc = Qc'\n"
    );
    assert!(std::fs::read_to_string(&dot).unwrap().starts_with("digraph"));

    let wave = ok(&["sim", net.to_str().unwrap(), "--cycles", "8", "--reset", "000"]);
    assert_eq!(
        wave,
        "Qa,Qb,Qc\n0,0,1\n0,1,0\n0,1,1\n1,0,0\n1,0,1\n1,1,0\n1,1,1\n0,0,0\n"
    );
    assert_eq!(ok(&["sim", net.to_str().unwrap(), "--cycles", "0"]), "Qa,Qb,Qc\n");

    let toggler = ok(&["fsm", &sample("toggler.st"), "--ff", "jk"]);
    assert!(toggler.starts_with("# Ja = 1\n# Ka = 1\n"));
}

#[test]
fn simulation_with_stimuli() {
    let wave = ok(&[
        "sim",
        &sample("rs.net"),
        "--cycles",
        "4",
        "--stimuli",
        &sample("rs_stimuli.csv"),
    ]);
    assert_eq!(wave, "Q\n1\n1\n0\nX\n");
    assert_eq!(code(&["sim", &sample("rs.net"), "--cycles", "1"]), 1);
}

#[test]
fn input_errors_exit_one() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.st");
    std::fs::write(&bad, "states 3\n000 -> 01\n").unwrap();
    let out = karno(&["fsm", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 2"));
    assert_eq!(code(&["bogus"]), 1);
    assert_eq!(code(&["--help"]), 0);
}

#[test]
fn output_is_deterministic() {
    let args = ["synth", "--target", "mux", "--order", "C,A,B", "AB + AC + BC"];
    assert_eq!(ok(&args), ok(&args));
}

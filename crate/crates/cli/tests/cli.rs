use std::path::PathBuf;
use std::process::{Command, Output};

fn fixture(name: &str) -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "fixtures", name]
        .iter()
        .collect();
    p.to_string_lossy().into_owned()
}

fn teachdim(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_teachdim"))
        .args(args)
        .output()
        .unwrap()
}

fn stdout(args: &[&str]) -> String {
    let out = teachdim(args);
    assert!(
        out.status.success(),
        "{args:?}: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

/// Report lines that are not `#` comments.
fn data(text: &str) -> Vec<&str> {
    text.lines().filter(|l| !l.starts_with('#')).collect()
}

#[test]
fn counts_up_to_four_states() {
    let out = stdout(&["count", "--k-max", "4"]);
    assert_eq!(data(&out), ["1     2", "2    24", "3  1028", "4 56014"]);
}

#[test]
fn staircase_pairs() {
    for k in 2..=6 {
        let out = stdout(&[
            "distinguish",
            &fixture(&format!("staircase-k{k}-a.dfa")),
            &fixture(&format!("staircase-k{k}-b.dfa")),
        ]);
        let want = format!("{}{}", "0".repeat(k - 1), "1".repeat(k - 1));
        assert_eq!(data(&out), [want.as_str()]);
    }
}

#[test]
fn header_carries_version_and_config() {
    let out = stdout(&["elias", "encode", "5", "--seed", "3"]);
    let mut lines = out.lines();
    assert_eq!(
        lines.next().unwrap(),
        format!("# teachdim {}", env!("CARGO_PKG_VERSION"))
    );
    assert!(out.contains("Encode { values: [5] }"));
    assert!(out.contains("seed: 3"));
    assert!(out.ends_with("5      5 00101\n"));
}

#[test]
fn reports_are_reproducible() {
    let args = [
        "mc-expected-btd",
        "--dist",
        &fixture("geometric-r1.dist"),
        "--samples",
        "300",
        "--k-cap",
        "2",
    ];
    assert_eq!(stdout(&args), stdout(&args));
    let other = stdout(&[&args[..], &["--seed", "1"]].concat());
    assert_ne!(stdout(&args), other);
}

#[test]
fn exit_statuses() {
    assert_eq!(teachdim(&["no-such-command"]).status.code(), Some(2));
    assert_eq!(
        teachdim(&["count", "--k-max", "2", "--bogus"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        teachdim(&["minimize", "/definitely/missing.dfa"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(teachdim(&["enumerate", "--k", "5"]).status.code(), Some(3));
    let out = teachdim(&[
        "kt-teach",
        "--dfa",
        &fixture("staircase-k2-a.dfa"),
        "--budget",
        "6",
    ]);
    assert_eq!(out.status.code(), Some(4));
    assert!(String::from_utf8_lossy(&out.stdout).contains("status failed"));
    let out = teachdim(&[
        "kt-learn",
        "--examples",
        &fixture("starts-with-one.ex"),
        "--budget",
        "5",
    ]);
    assert_eq!(out.status.code(), Some(4));
}

#[test]
fn taught_witness_is_learned_back() {
    let dir = tempfile::tempdir().unwrap();
    let witness = dir.path().join("w.ex");
    let w = witness.to_str().unwrap();
    stdout(&[
        "teach",
        "--dfa",
        &fixture("staircase-k3-b.dfa"),
        "--output",
        w,
    ]);
    let learned = stdout(&["learn", "--examples", w, "--k-max", "3"]);
    assert!(learned.contains("# outcome identified"));
    let learned_path = dir.path().join("l.dfa");
    std::fs::write(&learned_path, learned).unwrap();
    let eq = stdout(&[
        "equiv",
        learned_path.to_str().unwrap(),
        &fixture("staircase-k3-b.dfa"),
    ]);
    assert_eq!(data(&eq), ["equivalent yes"]);
}

#[test]
fn minimize_collapses_redundant_states() {
    let out = stdout(&["minimize", &fixture("redundant.dfa")]);
    assert_eq!(
        data(&out),
        ["dfa 1", "states 2", "start 0", "accept 1", "t 0 0 1", "t 1 0 1"]
    );
}

#[test]
fn tabular_walkthrough() {
    let out = stdout(&[
        "posterior",
        "--class",
        &fixture("seven-instances.class"),
        "--examples",
        &fixture("seven-instances.examples"),
    ]);
    let exact: Vec<&str> = out.lines().skip_while(|l| *l != "# exact values").collect();
    assert!(exact[4]
        .split_whitespace()
        .eq(["2", "-x3", "3/100", "9/100", "0", "0", "0", "5/9", "1/9", "0"]));
    let out = stdout(&[
        "btd-tabular",
        "--class",
        &fixture("seven-instances.class"),
        "--csv",
    ]);
    let dims: Vec<&str> = data(&out)[1..]
        .iter()
        .map(|l| l.rsplit(',').next().unwrap())
        .collect();
    assert_eq!(dims, ["0", "1", "1", "2", "1", "1"]);
}

#[test]
fn custom_distribution_with_enumerated_batches() {
    let out = stdout(&[
        "expected-btd",
        "--dist",
        &fixture("mid-heavy.dist"),
        "--exact-k",
        "3",
        "--size-cap",
        "10",
        "--threshold",
        "22",
    ]);
    let bound = data(&out)
        .into_iter()
        .find(|l| l.starts_with("bound "))
        .unwrap();
    assert!(bound.ends_with("< 22"), "{bound}");
}

#[test]
fn kt_learner_recovers_the_hand_program() {
    let out = stdout(&[
        "kt-learn",
        "--examples",
        &fixture("starts-with-one.ex"),
        "--budget",
        "20",
        "--trace",
    ]);
    assert!(out.contains("status found"));
    assert!(out.contains("# trace on 11: accept after 2 steps"));
}

#[test]
fn long_help_documents_formats() {
    let out = stdout(&["--help"]);
    for needle in [
        "dfa 1",
        "+ 1",
        "instances x1",
        "dist custom",
        "101011111110",
        "EXIT STATUS",
    ] {
        assert!(out.contains(needle), "missing {needle}");
    }
}

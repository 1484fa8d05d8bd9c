use std::path::{Path, PathBuf};
use std::process::Command;

fn crate_dir() -> &'static Path {
    Path::new(env!("CARGO_MANIFEST_DIR"))
}

fn run(args: &[&str]) -> (String, String, i32) {
    let output = Command::new(env!("CARGO_BIN_EXE_mbqc"))
        .current_dir(crate_dir())
        .args(args)
        .output()
        .expect("mbqc runs");
    (
        String::from_utf8(output.stdout).unwrap(),
        String::from_utf8(output.stderr).unwrap(),
        output.status.code().unwrap(),
    )
}

/// Compares stdout against `tests/golden/<name>`; `UPDATE_GOLDEN=1`
/// rewrites the file instead.
fn golden(name: &str, args: &[&str]) {
    let (stdout, stderr, code) = run(args);
    assert_eq!(code, 0, "{args:?} failed: {stderr}");
    let (again, _, _) = run(args);
    assert_eq!(stdout, again, "output of {args:?} is not byte-stable");
    let path: PathBuf = crate_dir().join("tests/golden").join(name);
    if std::env::var_os("UPDATE_GOLDEN").is_some() {
        std::fs::write(&path, &stdout).unwrap();
        return;
    }
    let want = std::fs::read_to_string(&path).unwrap_or_else(|_| panic!("missing {}", path.display()));
    assert_eq!(stdout, want, "golden mismatch for {name}");
}

#[test]
fn analyze_reports() {
    for p in [
        "cluster3",
        "ghz3",
        "edge_ctc",
        "selfloop",
        "single",
        "combined_ctc",
    ] {
        golden(
            &format!("analyze_{p}.txt"),
            &["analyze", &format!("patterns/{p}.mbqc")],
        );
    }
    golden(
        "analyze_cluster3.json",
        &["analyze", "--json", "patterns/cluster3.mbqc"],
    );
}

#[test]
fn enumerate_reports() {
    for p in ["cluster3", "ghz3", "single"] {
        golden(
            &format!("enumerate_{p}.txt"),
            &["enumerate", &format!("patterns/{p}.mbqc")],
        );
    }
    golden(
        "enumerate_cluster3.json",
        &["enumerate", "--json", "patterns/cluster3.mbqc"],
    );
}

#[test]
fn transform_reports() {
    golden(
        "flip_cluster3_q2.txt",
        &["flip", "patterns/cluster3.mbqc", "--qubit", "2"],
    );
    golden(
        "lc_cluster3_q2.txt",
        &["lc", "patterns/cluster3.mbqc", "--qubit", "2"],
    );
    golden("orbit_cluster3.txt", &["orbit", "patterns/cluster3.mbqc"]);
}

#[test]
fn ctc_removal_reports() {
    for p in ["edge_ctc", "selfloop", "combined_ctc"] {
        golden(
            &format!("remove_ctc_{p}.txt"),
            &["remove-ctc", &format!("patterns/{p}.mbqc")],
        );
    }
    golden(
        "remove_ctc_edge_ctc.json",
        &["remove-ctc", "--json", "patterns/edge_ctc.mbqc"],
    );
}

#[test]
fn simulate_reports() {
    golden(
        "simulate_cluster3.txt",
        &["simulate", "patterns/cluster3.mbqc", "--compare-gauges"],
    );
    golden(
        "simulate_cluster3_angles.txt",
        &[
            "simulate",
            "patterns/cluster3_angles.mbqc",
            "--gauge",
            "1",
            "--compare-gauges",
        ],
    );
    golden(
        "simulate_ghz3.txt",
        &["simulate", "patterns/ghz3.mbqc", "--compare-gauges"],
    );
    golden(
        "simulate_cluster3_postselect.txt",
        &["simulate", "patterns/cluster3.mbqc", "--postselect", "1=0"],
    );
    golden(
        "simulate_cluster3_angles.json",
        &["simulate", "--json", "patterns/cluster3_angles.mbqc"],
    );
}

#[test]
fn dot_exports() {
    for p in ["cluster3", "edge_ctc", "combined_ctc", "single"] {
        golden(
            &format!("{p}.dot"),
            &["export-dot", &format!("patterns/{p}.mbqc")],
        );
    }
}

#[test]
fn key_facts_in_reports() {
    let (cluster, _, _) = run(&[
        "analyze",
        "patterns/cluster3.mbqc",
        "--igauge",
        "1",
        "--ocomp",
        "3",
    ]);
    assert!(cluster.contains("T 3x3\n  000\n  100\n  010\n"));
    assert!(cluster.contains("relation: strict-partial-order\n"));
    let (ghz, _, _) = run(&["analyze", "patterns/ghz3.mbqc"]);
    assert!(ghz.contains("T 3x3\n  000\n  000\n  000\n"));
    assert!(ghz.contains("I: {1, 2, 3}\nO: {1, 2, 3}\n"));
    let (edge, _, code) = run(&["analyze", "patterns/edge_ctc.mbqc"]);
    assert_eq!(code, 0);
    assert!(edge.contains("relation: ctc\n"));
    assert!(edge.contains("cycles: (1,2)\n"));
    let (dot, _, _) = run(&["export-dot", "patterns/cluster3.mbqc"]);
    let edges: Vec<&str> = dot.lines().filter(|l| l.contains("->")).collect();
    assert_eq!(edges, ["  1 -> 2;", "  2 -> 3;"]);
    let (sim, _, _) = run(&["simulate", "patterns/cluster3.mbqc", "--compare-gauges"]);
    assert!(sim.contains("gauge-independent: true\n"));
    let (removed, _, _) = run(&["remove-ctc", "patterns/edge_ctc.mbqc"]);
    assert!(removed.starts_with("step 1: cycle (1,2) flag o[2] = s2"));
    assert_eq!(removed.matches("step ").count(), 1);
}

#[test]
fn exit_codes() {
    let write = |text: &str| {
        let mut f = tempfile::NamedTempFile::new().unwrap();
        std::io::Write::write_all(&mut f, text.as_bytes()).unwrap();
        f
    };
    let bad = write("qubits 2\nedge 1 2\nstab XX\n");
    let (_, err, code) = run(&["analyze", bad.path().to_str().unwrap()]);
    assert_eq!(code, 1);
    assert!(err.contains("line 3"), "{err}");

    let anticommuting = write("qubits 2\nstab XI\nstab ZI\n");
    assert_eq!(run(&["analyze", anticommuting.path().to_str().unwrap()]).2, 1);

    let (_, err, code) = run(&[
        "analyze",
        "patterns/cluster3.mbqc",
        "--igauge",
        "1",
        "--ocomp",
        "2",
    ]);
    assert_eq!(code, 2, "{err}");
    assert_eq!(
        run(&[
            "analyze",
            "patterns/cluster3.mbqc",
            "--igauge",
            "4",
            "--ocomp",
            "3"
        ])
        .2,
        2
    );
    assert_eq!(run(&["analyze", "patterns/single.mbqc", "--igauge", "1"]).2, 2);
    assert_eq!(run(&["flip", "patterns/selfloop.mbqc", "--qubit", "1"]).2, 2);

    let (out, _, code) = run(&["analyze", "patterns/edge_ctc.mbqc", "--require-order"]);
    assert_eq!(code, 3);
    assert!(out.contains("relation: ctc"));
    assert_eq!(
        run(&["analyze", "patterns/cluster3.mbqc", "--require-order"]).2,
        0
    );
    assert_eq!(run(&["simulate", "patterns/edge_ctc.mbqc"]).2, 3);

    let words: Vec<String> = (0..15)
        .map(|r| (0..15).map(|c| if r == c { 'X' } else { 'I' }).collect())
        .collect();
    let big = write(&format!(
        "qubits 15\n{}",
        words.iter().map(|w| format!("stab {w}\n")).collect::<String>()
    ));
    let (_, err, code) = run(&["simulate", big.path().to_str().unwrap()]);
    assert_eq!(code, 4, "{err}");
}

#[test]
fn non_extremal_pair_warns() {
    let (out, err, code) = run(&["analyze", "patterns/ghz3.mbqc", "--igauge", "1", "--ocomp", "1,2"]);
    assert_eq!(code, 0, "{err}");
    assert!(
        err.starts_with("warning: igauge {1} ocomp {1, 2} is not an extremal pair"),
        "{err}"
    );
    assert!(out.contains("igauge: {1}\nocomp: {2}\n"));
}

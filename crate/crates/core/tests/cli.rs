use std::path::{Path, PathBuf};
use std::process::Command;

use iterdom::cli::run;
use iterdom::io::{verify_trace_document, write_game, TraceDocument};
use iterdom::{fixtures, Game};

fn write(dir: &Path, name: &str, g: &Game) -> PathBuf {
    let path = dir.join(name);
    std::fs::write(&path, write_game(g)).unwrap();
    path
}

fn invoke(args: &[&str]) -> (i32, String, String) {
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let mut full = vec!["iterdom"];
    full.extend_from_slice(args);
    let code = run(full, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

#[test]
fn reduce_prisoners_dilemma() {
    let dir = tempfile::tempdir().unwrap();
    let pd = write(dir.path(), "pd.game", &fixtures::prisoners_dilemma());
    let (code, out, _) = invoke(&["reduce", pd.to_str().unwrap(), "--relation", "strict-pure", "--policy", "fastest"]);
    assert_eq!(code, 0);
    assert_eq!(out, "player 1: D\nplayer 2: D\n");
}

#[test]
fn reduce_writes_a_verifiable_trace() {
    let dir = tempfile::tempdir().unwrap();
    let g = fixtures::mixed_dominance();
    let file = write(dir.path(), "mix.game", &g);
    let trace = dir.path().join("trace.json");
    let (code, out, _) =
        invoke(&["reduce", file.to_str().unwrap(), "--relation", "strict-mixed", "--trace", trace.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert_eq!(out, "player 1: U D\nplayer 2: L R\n");
    let doc = TraceDocument::from_json(&std::fs::read_to_string(&trace).unwrap()).unwrap();
    assert_eq!(doc.relation, "strict-mixed");
    assert_eq!(doc.steps.len(), 1);
    assert_eq!(doc.steps[0].removed[0].player, 1);
    assert_eq!(doc.steps[0].removed[0].strategy, "M");
    verify_trace_document(&g, &doc).unwrap();
}

#[test]
fn orders_reports_single_outcome() {
    let dir = tempfile::tempdir().unwrap();
    let file = write(dir.path(), "mix.game", &fixtures::mixed_dominance());
    let (code, out, _) = invoke(&["orders", file.to_str().unwrap(), "--relation", "strict-mixed"]);
    assert_eq!(code, 0);
    assert_eq!(out, "{U,D}×{L,R}\n");
}

#[test]
fn orders_budget_overflow() {
    let dir = tempfile::tempdir().unwrap();
    let file = write(dir.path(), "pd.game", &fixtures::prisoners_dilemma());
    let (code, _, err) = invoke(&["orders", file.to_str().unwrap(), "--relation", "strict-pure", "--budget", "1"]);
    assert_eq!(code, 5, "{err}");
}

#[test]
fn orders_with_intersection() {
    let dir = tempfile::tempdir().unwrap();
    let file = write(dir.path(), "pd.game", &fixtures::prisoners_dilemma());
    let (code, out, _) = invoke(&["orders", file.to_str().unwrap(), "--relation", "strict-pure,inherent"]);
    assert_eq!(code, 0);
    assert_eq!(out, "{D}×{D}\n");
}

#[test]
fn unsupported_belief_mode_on_three_players() {
    let dir = tempfile::tempdir().unwrap();
    let file = write(dir.path(), "three.game", &fixtures::three_player_coordination());
    let (code, _, err) = invoke(&["reduce", file.to_str().unwrap(), "--relation", "nbr", "--beliefs", "mixed"]);
    assert_eq!(code, 3, "{err}");
    let (code, _, _) = invoke(&["reduce", file.to_str().unwrap(), "--relation", "nbr", "--beliefs", "correlated"]);
    assert_eq!(code, 0);
}

#[test]
fn parse_and_usage_errors_exit_2() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.game");
    std::fs::write(&bad, "players 2\nlabels 1: A A\nlabels 2: X\npayoffs\n0 0\n").unwrap();
    let (code, _, err) = invoke(&["reduce", bad.to_str().unwrap(), "--relation", "strict-pure"]);
    assert_eq!(code, 2);
    assert!(err.contains("line 2"), "{err}");

    let good = write(dir.path(), "pd.game", &fixtures::prisoners_dilemma());
    assert_eq!(invoke(&["reduce", good.to_str().unwrap(), "--relation", "no-such"]).0, 2);
    assert_eq!(invoke(&["reduce", good.to_str().unwrap()]).0, 2);
    assert_eq!(invoke(&["frobnicate"]).0, 2);
    assert_eq!(invoke(&["reduce", dir.path().join("missing").to_str().unwrap(), "--relation", "strict-pure"]).0, 2);
    assert_eq!(invoke(&["ars", "--nodes", "4", "--edge-prob", "3/2", "--samples", "1", "--seed", "0"]).0, 2);
}

#[test]
fn check_monotonicity_split() {
    let dir = tempfile::tempdir().unwrap();
    let file = write(dir.path(), "pd.game", &fixtures::prisoners_dilemma());
    let (code, out, _) =
        invoke(&["check", file.to_str().unwrap(), "--property", "monotonic", "--relation", "strict-pure"]);
    assert_eq!(code, 4, "{out}");
    assert!(out.contains("witness: player"), "{out}");
    let (code, out, _) =
        invoke(&["check", file.to_str().unwrap(), "--property", "monotonic", "--relation", "global-strict-pure"]);
    assert_eq!(code, 0, "{out}");
}

#[test]
fn check_on_random_games() {
    for property in ["hereditary", "proof-shape", "monotonic"] {
        let (code, out, err) = invoke(&[
            "check",
            "--random",
            "10",
            "--seed",
            "3",
            "--property",
            property,
            "--relation",
            "global-nbr",
            "--beliefs",
            "correlated",
            "--samples",
            "50",
        ]);
        assert_eq!(code, 0, "{property}: {out}{err}");
        assert!(out.ends_with("no violation\n"), "{out}");
    }
}

#[test]
fn ars_experiment() {
    let args = ["ars", "--nodes", "8", "--edge-prob", "1/4", "--samples", "50", "--seed", "1"];
    let (code, out, _) = invoke(&args);
    assert_eq!(code, 0);
    assert!(out.contains("samples: 50\n"));
    assert!(out.contains("failures: 0\n"));
    assert_eq!(invoke(&args).1, out);
}

#[test]
fn binary_runs_end_to_end() {
    let dir = tempfile::tempdir().unwrap();
    let file = write(dir.path(), "pd.game", &fixtures::prisoners_dilemma());
    let run = || {
        Command::new(env!("CARGO_BIN_EXE_iterdom"))
            .args([
                "reduce",
                file.to_str().unwrap(),
                "--relation",
                "strict-pure",
                "--policy",
                "single-random",
                "--seed",
                "4",
            ])
            .output()
            .unwrap()
    };
    let (a, b) = (run(), run());
    assert!(a.status.success());
    assert_eq!(String::from_utf8_lossy(&a.stdout), "player 1: D\nplayer 2: D\n");
    assert_eq!(a.stdout, b.stdout);
    let help = Command::new(env!("CARGO_BIN_EXE_iterdom")).arg("--help").output().unwrap();
    assert!(help.status.success());
}

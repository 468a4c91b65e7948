use std::collections::BTreeSet;
use std::process::{Command, Output};

use serde_json::Value;

use hyperjac_verify::{manifest_claims, run, RunConfig, Status, Suite};

fn verify(args: &[&str], env: &[(&str, &str)]) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_verify"));
    cmd.args(args);
    for (k, v) in env {
        cmd.env(k, v);
    }
    cmd.output().expect("binary runs")
}

fn lines(out: &Output) -> Vec<Value> {
    String::from_utf8_lossy(&out.stdout)
        .lines()
        .map(|l| serde_json::from_str(l).expect("each line is JSON"))
        .collect()
}

fn strip_times(out: &Output) -> Vec<Value> {
    lines(out)
        .into_iter()
        .map(|mut v| {
            v.as_object_mut().unwrap().remove("wall_time_ms");
            v
        })
        .collect()
}

#[test]
fn full_run_covers_manifest_and_passes() {
    let reports = run(&RunConfig::with_suites(&[Suite::All])).unwrap();
    let produced: BTreeSet<&str> = reports.iter().map(|r| r.claim.as_str()).collect();
    let missing: Vec<&str> = manifest_claims()
        .into_iter()
        .filter(|c| !produced.contains(c))
        .collect();
    assert!(
        missing.is_empty(),
        "manifest claims without reports: {missing:?}"
    );
    assert_eq!(produced.len(), reports.len(), "claim ids are unique");
    let failing: Vec<&str> = reports
        .iter()
        .filter(|r| r.status != Status::Pass)
        .map(|r| r.claim.as_str())
        .collect();
    assert!(failing.is_empty(), "non-passing claims: {failing:?}");
    assert!(reports.windows(2).all(|w| w[0].claim < w[1].claim));
}

#[test]
fn genus_one_congruence_gives_six_passing_reports() {
    let out = verify(&["lemma31", "--g", "1"], &[]);
    assert_eq!(out.status.code(), Some(0));
    let reports = lines(&out);
    assert_eq!(reports.len(), 6);
    assert!(reports.iter().all(|r| r["status"] == "pass"));
}

#[test]
fn env_overrides_flags() {
    let out = verify(&["run", "--suite", "congruence"], &[("HYPERJAC_G", "1")]);
    assert_eq!(lines(&out).len(), 6);
    let out = verify(&["run"], &[("HYPERJAC_SUITE", "phi-kernel")]);
    assert_eq!(lines(&out).len(), 2);
}

#[test]
fn quick_run_skips_large_enumeration() {
    let out = verify(&["run", "--suite", "all", "--quick"], &[]);
    assert_eq!(out.status.code(), Some(0));
    let reports = lines(&out);
    let g2: Vec<&Value> = reports
        .iter()
        .filter(|r| r["claim"].as_str().unwrap().starts_with("congruence.g2."))
        .collect();
    assert_eq!(g2.len(), 3);
    assert!(g2.iter().all(|r| r["status"] == "skipped: capacity"));
    assert!(reports.iter().all(|r| r["status"] != "fail"));
}

#[test]
fn runs_are_deterministic() {
    let args = [
        "run",
        "--suite",
        "congruence,tower,eighth-roots,parity",
        "--quick",
    ];
    let a = strip_times(&verify(&args, &[]));
    let b = strip_times(&verify(&args, &[]));
    assert!(!a.is_empty());
    assert_eq!(
        serde_json::to_string(&a).unwrap(),
        serde_json::to_string(&b).unwrap()
    );
}

#[test]
fn empty_selection_is_empty_success() {
    let out = verify(&["run"], &[]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    assert!(run(&RunConfig::default()).unwrap().is_empty());
}

#[test]
fn exit_codes() {
    // degenerate roots: the structure claim fails, with a witness
    let out = verify(&["thm1", "--roots", "0,1,3"], &[]);
    assert_eq!(out.status.code(), Some(1));
    let failed: Vec<Value> = lines(&out)
        .into_iter()
        .filter(|r| r["status"] == "fail")
        .collect();
    assert!(!failed.is_empty());
    assert!(failed.iter().all(|r| r["witness"].is_object()));

    assert_eq!(
        verify(&["thm1", "--roots", "0,1,1"], &[]).status.code(),
        Some(2)
    );
    assert_eq!(verify(&["lemma32", "--g", "1"], &[]).status.code(), Some(2));
    assert_eq!(
        verify(&["run", "--suite", "tower", "--cap-elements", "0"], &[])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        verify(&["run", "--suite", "nonsense"], &[]).status.code(),
        Some(2)
    );
    assert_eq!(
        verify(&["curve-iso", "--d", "4"], &[]).status.code(),
        Some(0)
    );
}

#[test]
fn custom_roots_reach_the_tower_suites() {
    let out = verify(&["elliptic-4tors", "--roots", "-1,0,1/2"], &[]);
    assert_eq!(out.status.code(), Some(0));
    let reports = lines(&out);
    assert_eq!(reports.len(), 2);
    assert_eq!(
        reports[0]["witness"]["roots"],
        serde_json::json!(["-1", "0", "1/2"])
    );
}

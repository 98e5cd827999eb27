use std::process::{Command, Output};

use froberg_core::verifier::{record_from_json, record_to_json, Verdict};

fn froberg(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_froberg"))
        .args(args)
        .env_remove("FROBERG_PRIME")
        .env_remove("FROBERG_SEED")
        .env_remove("FROBERG_CACHE")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

#[test]
fn series_examples() {
    let o = froberg(&["series", "--n", "4", "--deg", "2x5"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).lines().next(), Some("1 + 4t + 5t^2"));
    assert_eq!(stdout(&o).lines().nth(1), Some("[1,4,5,0,0]"));

    let o = froberg(&["series", "--n", "3", "--deg", "14x26"]);
    assert!(stdout(&o).lines().next().unwrap().ends_with(" + 94t^14 + 58t^15"));

    let o = froberg(&["series", "--n", "2", "--deg", "2,2"]);
    assert_eq!(stdout(&o).lines().next(), Some("1 + 2t + t^2"));

    let o = froberg(&["series", "--n", "3", "--d", "2", "--m", "7", "--k", "45"]);
    assert!(stdout(&o).lines().next().unwrap().ends_with(" + 75t^14 + t^15"));
}

#[test]
fn verify_exit_codes() {
    let o = froberg(&["verify", "--n", "3", "--d", "2", "--m", "1", "--k", "4"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert!(stdout(&o).contains("Verified"));

    let o = froberg(&["verify", "--n", "3", "--d", "2", "--k", "4", "--degenerate"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stdout(&o).contains("NotAttained"));

    let o = froberg(&["verify", "--n", "3", "--d", "2", "--k", "99"]);
    assert_eq!(o.status.code(), Some(3));

    let o = froberg(&["verify", "--n", "3", "--d", "2", "--k", "4", "--matrix-budget", "5"]);
    assert_eq!(o.status.code(), Some(3));
    assert!(stdout(&o).contains("budget"));

    let o = froberg(&["verify", "--n", "3"]);
    assert_eq!(o.status.code(), Some(3));
    let o = froberg(&["verify", "--n", "3", "--d", "2", "--k", "4", "--prime", "91"]);
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn environment_overrides() {
    let o = Command::new(env!("CARGO_BIN_EXE_froberg"))
        .args(["verify", "--n", "3", "--d", "2", "--k", "5", "--json"])
        .env("FROBERG_SEED", "41")
        .env("FROBERG_PRIME", "1000003")
        .env_remove("FROBERG_CACHE")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(0));
    let rec = record_from_json(stdout(&o).lines().last().unwrap()).unwrap();
    assert_eq!((rec.spec.seed, rec.spec.prime), (41, 1_000_003));
}

#[test]
fn construct_listing() {
    let o = froberg(&["construct", "--n", "4", "--d", "2", "--l", "1"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.starts_with("10 generators\n"));
    assert!(out.contains("series: 1 + 4t\n"));
}

#[test]
fn search_reports_no_ideal() {
    let o = froberg(&["search", "--n", "4", "--d", "2", "--k", "5"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("no monomial ideal"));
    let o = froberg(&["search", "--n", "4", "--d", "2", "--k", "5", "--no-prune"]);
    assert!(stdout(&o).contains("enumerated 252"));
}

#[test]
fn cache_round_trip_and_reuse() {
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().join("records.jsonl");
    let cache = cache.to_str().unwrap();
    let args = ["--cache", cache, "verify", "--n", "4", "--d", "2", "--m", "2", "--k", "6"];

    let first = froberg(&args);
    assert_eq!(first.status.code(), Some(0));
    assert!(!stderr(&first).contains("rank computations: 0"));
    let text = std::fs::read_to_string(cache).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 1);
    let rec = record_from_json(lines[0]).unwrap();
    assert_eq!(rec.verdict, Verdict::Verified);
    assert_eq!(record_to_json(&rec), lines[0]);

    let second = froberg(&args);
    assert_eq!(second.status.code(), Some(0));
    assert!(stderr(&second).contains("rank computations: 0"), "{}", stderr(&second));
    assert_eq!(stdout(&first), stdout(&second));
    assert_eq!(std::fs::read_to_string(cache).unwrap().lines().count(), 1);

    // a different seed is a different case
    let third = froberg(&["--seed", "2", "--cache", cache, "verify", "--n", "4", "--d", "2", "--m", "2", "--k", "6"]);
    assert!(!stderr(&third).contains("rank computations: 0"));
    assert_eq!(std::fs::read_to_string(cache).unwrap().lines().count(), 2);
}

#[test]
fn not_attained_records_are_not_reused() {
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().join("c.jsonl");
    let cache = cache.to_str().unwrap();
    let args = ["--cache", cache, "verify", "--n", "3", "--d", "2", "--k", "4", "--degenerate"];
    assert_eq!(froberg(&args).status.code(), Some(2));
    let again = froberg(&args);
    assert_eq!(again.status.code(), Some(2));
    assert!(!stderr(&again).contains("rank computations: 0"));
}

#[test]
fn sweep_plan_and_run() {
    let o = froberg(&["sweep", "--n", "3", "--d", "2", "--m", "7", "--plan-only"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("26..=45 interval"), "{}", stdout(&o));

    let o = froberg(&["--trunc-cap", "16", "sweep", "--n", "3", "--d", "2", "--m", "2"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).contains("verified 15 of 15 counts"));
}

#[test]
fn interval_command() {
    let o = froberg(&["interval", "--n", "3", "--d", "2", "--m", "7", "--k-low", "26", "--k-high", "45"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert!(stdout(&o).contains("all k in 26..=45"));
    let o = froberg(&["interval", "--n", "3", "--d", "2", "--m", "2", "--k-low", "4", "--k-high", "15"]);
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn compare_command() {
    let o = froberg(&["compare", "--n", "2", "--d", "2", "--k", "2"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).trim_end().ends_with("equal"));
}

#[test]
fn table_small_budget() {
    let o = froberg(&["table", "--budget", "small"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let out = stdout(&o);
    let header = out.lines().next().unwrap();
    assert_eq!(header.split_whitespace().count(), 12);
    assert!(out.lines().any(|l| l.starts_with("dm ") && l.split_whitespace().skip(1).eq(["4", "6", "6", "8", "9", "4"])));
    assert_eq!(froberg(&["table", "--budget", "nonsense"]).status.code(), Some(3));
}

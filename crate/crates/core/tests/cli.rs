//! The `repcode` binary end to end.

use std::fs;
use std::process::{Command, Output};

fn repcode(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_repcode")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn bounds_goldens() {
    let o = repcode(&["bounds", "--n", "63", "--k", "14", "--l", "5"]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert!(text.contains("assignment2: 149"), "{text}");
    assert!(text.contains("assignment2: 199"));
    assert!(text.contains("lowrate_decreasing: 213"));
    let o = repcode(&["bounds", "--n", "63", "--k", "54", "--l", "5"]);
    let text = stdout(&o);
    assert!(text.contains("corollary: 74  [applies"), "{text}");
    assert!(text.contains("highrate: 50"));
}

#[test]
fn bounds_csv() {
    let o = repcode(&["bounds", "--n", "63", "--k", "40", "--l", "5", "--b", "3", "--format", "csv"]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert!(text.lines().any(|l| l.starts_with("assignment2,71,")), "{text}");
}

#[test]
fn encode_then_decode_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("word.txt");
    let o =
        repcode(&["encode", "--n", "15", "--k", "3", "--l", "5", "--message", "3,0,7", "--tau", "30", "--seed", "4"]);
    assert!(o.status.success());
    let word = stdout(&o);
    assert_eq!(word.lines().count(), 5);
    fs::write(&path, &word).unwrap();
    let o = repcode(&["decode", "--n", "15", "--k", "3", "--l", "5", "--input", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("message [3 0 7]"), "{text}");
    assert!(text.contains("distance 30"));
}

#[test]
fn decode_reports_empty_list_with_exit_code_two() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("word.txt");
    fs::write(&path, "0 1 2 3 4 5 6\n1 2 3 4 5 6 7\n2 3 4 5 6 7 1\n").unwrap();
    let args = ["decode", "--n", "7", "--k", "2", "--l", "3", "--strategy", "threshold", "--b", "3", "--input"];
    let o = repcode(&[&args[..], &[path.to_str().unwrap()]].concat());
    assert_eq!(o.status.code(), Some(2));
    assert!(stdout(&o).contains("candidates: 0"));
}

#[test]
fn verbose_decode_shows_interpolation_sizes() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("word.txt");
    fs::write(&path, "0 0 0\n0 0 0\n0 0 1\n0 1 1\n0 2 2\n").unwrap();
    let p = path.to_str().unwrap();
    let o = repcode(&[
        "decode", "--field", "3", "--n", "3", "--k", "1", "--l", "5", "--points", "0,1,2", "--input", p, "-v",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("N = 31"), "{text}");
    assert!(text.contains("distance 5 score 10"));
}

#[test]
fn simulate_csv_header_and_rows() {
    let o = repcode(&[
        "simulate", "--n", "15", "--k", "3", "--l", "3", "--tau", "5,10", "--trials", "10", "--seed", "1", "--format",
        "csv",
    ]);
    assert!(o.status.success());
    let text = stdout(&o);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("tau,successes,trials,rate,mean_list,p50_decode_us"));
    assert!(lines.next().unwrap().starts_with("5,10,10,1.0000,"));
    assert!(lines.next().unwrap().starts_with("10,"));
}

#[test]
fn simulate_is_reproducible_across_thread_counts() {
    let run = |threads: &str| {
        let o = repcode(&[
            "simulate",
            "--n",
            "15",
            "--k",
            "3",
            "--l",
            "5",
            "--tau",
            "40",
            "--trials",
            "40",
            "--seed",
            "8",
            "--threads",
            threads,
            "--format",
            "csv",
        ]);
        assert!(o.status.success());
        // Drop the timing column.
        stdout(&o).lines().map(|l| l.rsplit_once(',').unwrap().0.to_string()).collect::<Vec<_>>()
    };
    assert_eq!(run("1"), run("4"));
}

#[test]
fn simulate_requires_a_seed() {
    let o = repcode(&["simulate", "--n", "15", "--k", "3", "--l", "3", "--tau", "5"]);
    assert!(!o.status.success());
}

#[test]
fn config_file_overrides_flags() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("run.toml");
    fs::write(&path, "n = 7\nk = 2\nl = 3\n").unwrap();
    let o = repcode(&[
        "simulate",
        "--config",
        path.to_str().unwrap(),
        "--n",
        "15",
        "--k",
        "3",
        "--l",
        "5",
        "--tau",
        "4",
        "--trials",
        "3",
        "--seed",
        "2",
    ]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    assert!(stdout(&o).contains("n=7,k=2] l=3"), "{}", stdout(&o));
}

#[test]
fn table_smoke_runs() {
    for id in ["1", "2", "3"] {
        let o = repcode(&["table", "--id", id, "--trials", "2", "--seed", "1", "--format", "csv"]);
        assert!(o.status.success(), "table {id}");
        assert!(stdout(&o).contains("tau,successes,trials,rate,mean_list,p50_decode_us"));
    }
    assert!(!repcode(&["table", "--id", "10", "--trials", "2", "--seed", "1"]).status.success());
}

#[test]
fn bad_input_is_an_error() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("word.txt");
    fs::write(&path, "0 1\n").unwrap();
    let o = repcode(&["decode", "--n", "7", "--k", "2", "--l", "3", "--input", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).starts_with("error:"));
}

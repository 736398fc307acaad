use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use tempfile::TempDir;

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_nativeness"));
    c.env("RUST_LOG", "warn");
    c
}

fn run(dir: &Path, args: &[&str]) -> Output {
    bin().current_dir(dir).args(args).output().unwrap()
}

fn code(out: &Output) -> i32 {
    out.status.code().unwrap()
}

/// A temp dir holding a 300-word synthetic list and its labels.
fn fixture() -> TempDir {
    let dir = TempDir::new().unwrap();
    let out = run(
        dir.path(),
        &[
            "synth",
            "--words",
            "300",
            "--output-words",
            "w.txt",
            "--output-labels",
            "l.tsv",
        ],
    );
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    dir
}

fn read(dir: &Path, name: &str) -> String {
    fs::read_to_string(dir.join(name)).unwrap()
}

#[test]
fn score_is_byte_identical_across_runs() {
    let d = fixture();
    let p = d.path();
    for tag in ["a", "b"] {
        let out = run(
            p,
            &[
                "score",
                "--input",
                "w.txt",
                "--script",
                "malayalam",
                "--n",
                "1",
                "--alpha",
                "1.0",
                "--rho",
                "3",
                "--output",
                &format!("{tag}.tsv"),
                "--report",
                &format!("{tag}.json"),
            ],
        );
        assert_eq!(code(&out), 0);
        assert!(out.stdout.is_empty());
    }
    assert_eq!(read(p, "a.tsv"), read(p, "b.tsv"));
    assert_eq!(read(p, "a.json"), read(p, "b.json"));
    let tsv = read(p, "a.tsv");
    assert_eq!(tsv.lines().count(), 300);
    let scores: Vec<f64> = tsv
        .lines()
        .map(|l| l.split('\t').nth(1).unwrap().parse().unwrap())
        .collect();
    assert!(scores.windows(2).all(|w| w[0] >= w[1]));
}

#[test]
fn score_writes_to_stdout_for_every_method() {
    let d = fixture();
    for method in ["uns", "init", "gen"] {
        let out = run(
            d.path(),
            &[
                "score", "--method", method, "--input", "w.txt", "--script", "ml",
            ],
        );
        assert_eq!(code(&out), 0, "{method}");
        assert_eq!(String::from_utf8(out.stdout).unwrap().lines().count(), 300);
    }
}

#[test]
fn corpus_input_and_model_dump() {
    let d = fixture();
    let p = d.path();
    let words = read(p, "w.txt");
    let text = words.lines().collect::<Vec<_>>().join(", ") + ".\n" + &words;
    fs::write(p.join("corpus.txt"), text).unwrap();
    let out = run(
        p,
        &[
            "score",
            "--input",
            "corpus.txt",
            "--format",
            "corpus",
            "--script",
            "ml",
            "--output",
            "s.tsv",
            "--dump-models",
            "m",
        ],
    );
    assert_eq!(code(&out), 0);
    assert_eq!(read(p, "s.tsv").lines().count(), 300);
    let native: serde_json::Value = serde_json::from_str(&read(p, "m/native.json")).unwrap();
    assert_eq!(native["role"], "native");
    assert!(p.join("m/loanword.json").exists());
}

#[test]
fn evaluate_reports_and_exit_codes() {
    let d = fixture();
    let p = d.path();
    // Perfect scores straight from the labels.
    let perfect: String = read(p, "l.tsv")
        .lines()
        .map(|l| {
            let (w, label) = l.split_once('\t').unwrap();
            format!("{w}\t{}\n", if label == "native" { 1.0 } else { 0.0 })
        })
        .collect();
    fs::write(p.join("perfect.tsv"), perfect).unwrap();
    let out = run(
        p,
        &[
            "evaluate",
            "--scores",
            "perfect.tsv",
            "--labels",
            "l.tsv",
            "--k",
            "10,50",
            "--json",
            "e.json",
        ],
    );
    assert_eq!(code(&out), 0);
    let table = String::from_utf8(out.stdout).unwrap();
    assert!(table.contains("1.000     1.000        1.000"), "{table}");
    let json: serde_json::Value = serde_json::from_str(&read(p, "e.json")).unwrap();
    assert_eq!(json["clustering"]["weighted"], 1.0);
    assert_eq!(json["end_precisions"][1]["k"], 50);

    let out = run(
        p,
        &[
            "evaluate",
            "--scores",
            "perfect.tsv",
            "--labels",
            "l.tsv",
            "--k",
            "301",
        ],
    );
    assert_eq!(code(&out), 3);

    let partial: String = read(p, "perfect.tsv")
        .lines()
        .skip(1)
        .map(|l| format!("{l}\n"))
        .collect();
    fs::write(p.join("partial.tsv"), partial).unwrap();
    let out = run(
        p,
        &["evaluate", "--scores", "partial.tsv", "--labels", "l.tsv"],
    );
    assert_eq!(code(&out), 2);
    assert!(String::from_utf8_lossy(&out.stderr).contains("no score"));
}

#[test]
fn trace_rows_follow_the_report() {
    let d = fixture();
    let p = d.path();
    let out = run(
        p,
        &[
            "score",
            "--input",
            "w.txt",
            "--script",
            "ml",
            "--full-trace",
            "--output",
            "s.tsv",
            "--report",
            "r.json",
        ],
    );
    assert_eq!(code(&out), 0);
    let out = run(p, &["trace", "--report", "r.json"]);
    assert_eq!(code(&out), 0);
    let csv = String::from_utf8(out.stdout).unwrap();
    assert_eq!(csv.lines().next(), Some("iteration,o_max,o_min"));
    assert_eq!(csv.lines().count(), 101);

    let out = run(
        p,
        &[
            "score",
            "--input",
            "w.txt",
            "--script",
            "ml",
            "--max-iters",
            "0",
            "--output",
            "s0.tsv",
            "--report",
            "r0.json",
        ],
    );
    assert_eq!(code(&out), 0);
    let out = run(p, &["trace", "--report", "r0.json"]);
    assert_eq!(
        String::from_utf8(out.stdout).unwrap(),
        "iteration,o_max,o_min\n"
    );

    fs::write(p.join("bad.json"), "{\"trace\": [1, 2]}").unwrap();
    assert_eq!(code(&run(p, &["trace", "--report", "bad.json"])), 2);
    assert_eq!(code(&run(p, &["trace", "--report", "absent.json"])), 2);
}

#[test]
fn sweep_grid_shape() {
    let d = fixture();
    let out = run(
        d.path(),
        &[
            "sweep",
            "--input",
            "w.txt",
            "--script",
            "ml",
            "--labels",
            "l.tsv",
            "--n",
            "1,2",
            "--alpha",
            "0,0.5,1.0",
            "--rho",
            "3,5",
        ],
    );
    assert_eq!(code(&out), 0);
    let csv = String::from_utf8(out.stdout).unwrap();
    let rows: Vec<&str> = csv.lines().collect();
    assert_eq!(
        rows[0],
        "method,n,alpha,rho,tau,stem_length,native,loanword,weighted"
    );
    assert_eq!(rows.len(), 11);
    assert_eq!(rows.iter().filter(|r| r.contains("N/A")).count(), 2);
}

#[test]
fn sweep_with_baselines_and_tau_grid() {
    let d = fixture();
    let out = run(
        d.path(),
        &[
            "sweep",
            "--input",
            "w.txt",
            "--script",
            "ml",
            "--labels",
            "l.tsv",
            "--tau",
            "5,10,20,50,100",
            "--baselines",
        ],
    );
    assert_eq!(code(&out), 0);
    let csv = String::from_utf8(out.stdout).unwrap();
    assert_eq!(csv.lines().filter(|l| l.starts_with("uns,")).count(), 5);
    assert_eq!(csv.lines().filter(|l| l.starts_with("init,")).count(), 5);
    assert_eq!(csv.lines().filter(|l| l.starts_with("gen,")).count(), 1);
}

#[test]
fn config_errors_exit_three() {
    let d = fixture();
    let p = d.path();
    fs::write(p.join("empty.toml"), "tau = []\n").unwrap();
    let out = run(
        p,
        &[
            "sweep",
            "--input",
            "w.txt",
            "--script",
            "ml",
            "--labels",
            "l.tsv",
            "--config",
            "empty.toml",
        ],
    );
    assert_eq!(code(&out), 3);

    fs::write(p.join("typo.toml"), "alpah = 1.0\n").unwrap();
    assert_eq!(
        code(&run(
            p,
            &[
                "score",
                "--input",
                "w.txt",
                "--script",
                "ml",
                "--config",
                "typo.toml"
            ]
        )),
        3
    );
    assert_eq!(
        code(&run(
            p,
            &["score", "--input", "w.txt", "--script", "ml", "--rho", "0"]
        )),
        3
    );
    assert_eq!(
        code(&run(
            p,
            &["score", "--input", "w.txt", "--script", "klingon"]
        )),
        3
    );
    assert_eq!(code(&run(p, &["score", "--input", "w.txt"])), 3);
    assert_eq!(code(&run(p, &["frobnicate"])), 3);
}

#[test]
fn flags_override_config_file() {
    let d = fixture();
    let p = d.path();
    fs::write(p.join("c.toml"), "alpha = 0.5\nrho = 0\n").unwrap();
    // rho = 0 in the file is invalid unless the flag replaces it.
    assert_eq!(
        code(&run(
            p,
            &["score", "--input", "w.txt", "--script", "ml", "--config", "c.toml"]
        )),
        3
    );
    let out = run(
        p,
        &[
            "score", "--input", "w.txt", "--script", "ml", "--config", "c.toml", "--rho", "4",
            "--report", "r.json", "--output", "s.tsv",
        ],
    );
    assert_eq!(code(&out), 0);
    let report: serde_json::Value = serde_json::from_str(&read(p, "r.json")).unwrap();
    assert_eq!(report["hyperparams"]["alpha"], 0.5);
    assert_eq!(report["hyperparams"]["rho"], 4);
}

#[test]
fn ingestion_errors_exit_two() {
    let d = fixture();
    let p = d.path();
    assert_eq!(
        code(&run(
            p,
            &["score", "--input", "missing.txt", "--script", "ml"]
        )),
        2
    );
    fs::write(p.join("latin.txt"), "hello\nworld\n").unwrap();
    let out = run(p, &["score", "--input", "latin.txt", "--script", "ml"]);
    assert_eq!(code(&out), 2);
    assert!(out.stdout.is_empty());
}

#[test]
fn lexicon_dump() {
    let d = TempDir::new().unwrap();
    let p: PathBuf = d.path().into();
    fs::write(p.join("w.txt"), "പുറമേ\nപുറപ്പാട്\nപോലീസ്\n").unwrap();
    let out = run(&p, &["lexicon", "--input", "w.txt", "--script", "ml"]);
    assert_eq!(code(&out), 0);
    let dump = String::from_utf8(out.stdout).unwrap();
    assert!(dump.contains("പുറപ്പാട്\tപു|റ|പ്പാ|ട്\t2\n"), "{dump}");
}

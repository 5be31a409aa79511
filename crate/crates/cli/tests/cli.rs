use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use tempfile::TempDir;

fn bin() -> Command {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_mantel4"));
    cmd.env_remove("MANTEL4_THREADS").env("RUST_LOG", "error");
    cmd
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn write(dir: &TempDir, name: &str, text: &str) -> PathBuf {
    let path = dir.path().join(name);
    fs::write(&path, text).unwrap();
    path
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

/// Table rows of a CSV artifact, header block stripped.
fn table(path: &Path) -> Vec<csv::StringRecord> {
    let text = fs::read_to_string(path).unwrap();
    let body: String = text.lines().filter(|l| !l.starts_with('#')).map(|l| format!("{l}\n")).collect();
    csv::Reader::from_reader(body.as_bytes()).records().map(|r| r.unwrap()).collect()
}

fn header(path: &Path) -> csv::StringRecord {
    let text = fs::read_to_string(path).unwrap();
    let line = text.lines().find(|l| !l.starts_with('#')).unwrap();
    csv::Reader::from_reader(format!("{line}\n").as_bytes()).headers().unwrap().clone()
}

fn column(path: &Path, name: &str) -> Vec<String> {
    let i = header(path).iter().position(|h| h == name).unwrap();
    table(path).iter().map(|r| r[i].to_string()).collect()
}

#[test]
fn phase_on_complete_host() {
    let dir = TempDir::new().unwrap();
    let cfg = write(&dir, "c.toml", "n = [8]\np = { absolute = [1.0] }\ntrials = 3\n");
    let out = dir.path().join("o.csv");
    assert!(run(&["phase", s(&cfg), "--out", s(&out)]).status.success());
    let rows: Vec<_> = column(&out, "row").into_iter().zip(column(&out, "q_value")).collect();
    assert_eq!(rows.iter().filter(|(r, _)| r == "trial").count(), 3);
    assert!(rows.iter().filter(|(r, _)| r == "trial").all(|(_, q)| q == "16"));
    let tf = column(&out, "tfree_value");
    assert_eq!(&tf[..3], ["35", "35", "35"]);
    let text = fs::read_to_string(&out).unwrap();
    assert!(text.starts_with("# schema: mantel4-phase/1\n# build: "));
    assert!(text.contains("# config: {"));
    assert!(text.contains("# constants: {"));
    assert!(out.with_extension("csv.timing.csv").exists());
}

#[test]
fn phase_on_empty_host() {
    let dir = TempDir::new().unwrap();
    let cfg = write(&dir, "c.toml", "n = [8]\np = { absolute = [0.0] }\ntrials = 2\n");
    let out = dir.path().join("o.csv");
    assert!(run(&["phase", s(&cfg), "--out", s(&out)]).status.success());
    for name in ["edges", "q_value", "tfree_value"] {
        assert_eq!(&column(&out, name)[..2], ["0", "0"], "{name}");
    }
    assert_eq!(&column(&out, "tfree_partite")[..2], ["yes", "yes"]);
}

#[test]
fn reruns_identical_across_thread_counts() {
    let dir = TempDir::new().unwrap();
    let configs = [
        ("phase", "n = [9, 10]\np = { absolute = [0.3, 0.5] }\ntrials = 3\nseed = 11\n"),
        ("phase", "n = [16]\np = { log_scaled = [1.0, 2.0] }\ntrials = 2\ntier = \"heuristic\"\n"),
        ("concentration", "n = [20]\np = { absolute = [0.5] }\ntrials = 4\nseed = 3\n"),
        ("audit", "n = [9]\np = { absolute = [0.4, 0.6] }\ntrials = 2\n[constants]\ngamma = \"formula\"\n"),
        ("turan-table", "k = 3\nn = [5, 6]\n"),
    ];
    for (i, (kind, text)) in configs.iter().enumerate() {
        let cfg = write(&dir, &format!("c{i}.toml"), text);
        let mut outputs = Vec::new();
        for threads in ["1", "3", "3"] {
            let out = dir.path().join(format!("o{i}_{threads}_{}.csv", outputs.len()));
            let res = run(&["--threads", threads, kind, s(&cfg), "--out", s(&out)]);
            assert!(res.status.success(), "{kind}: {}", String::from_utf8_lossy(&res.stderr));
            let json = fs::read(out.with_extension("json")).ok();
            outputs.push((fs::read(&out).unwrap(), json));
        }
        assert_eq!(outputs[0], outputs[1], "{kind}");
        assert_eq!(outputs[1], outputs[2], "{kind}");
        if *kind == "audit" {
            assert!(outputs[0].1.is_some());
        }
    }
}

#[test]
fn thread_count_from_environment() {
    let dir = TempDir::new().unwrap();
    let cfg = write(&dir, "c.toml", "n = [9]\np = { absolute = [0.5] }\ntrials = 3\n");
    let a = bin().args(["phase", s(&cfg)]).env("MANTEL4_THREADS", "2").output().unwrap();
    let b = bin().args(["phase", s(&cfg), "--threads", "1"]).output().unwrap();
    assert!(a.status.success() && b.status.success());
    assert_eq!(a.stdout, b.stdout);
    assert!(!a.stdout.is_empty());
}

#[test]
fn seed_override_changes_samples() {
    let dir = TempDir::new().unwrap();
    let cfg = write(&dir, "c.toml", "n = [10]\np = { absolute = [0.5] }\ntrials = 2\nseed = 1\n");
    let a = run(&["phase", s(&cfg), "--seed", "2"]);
    let b = run(&["phase", s(&cfg), "--seed", "2"]);
    let c = run(&["phase", s(&cfg)]);
    assert_eq!(a.stdout, b.stdout);
    assert_ne!(a.stdout, c.stdout);
}

#[test]
fn skipped_trials_give_partial_exit() {
    let dir = TempDir::new().unwrap();
    let cfg = write(
        &dir,
        "c.toml",
        "n = [8]\np = { absolute = [0.0, 0.5] }\ntrials = 1\n[constants]\ngamma = \"formula\"\n",
    );
    let out = dir.path().join("o.csv");
    let res = run(&["audit", s(&cfg), "--out", s(&out)]);
    assert_eq!(res.status.code(), Some(2));
    assert_eq!(column(&out, "row"), ["skip", "trial"]);
}

#[test]
fn config_errors_fail_before_any_trial() {
    let dir = TempDir::new().unwrap();
    let cases = [
        ("phase", "n = [8]\np = { absolute = [] }\n"),
        ("phase", "n = []\np = { absolute = [0.5] }\n"),
        ("phase", "n = [8]\np = { absolute = [0.5] }\ntrials = 0\n"),
        ("phase", "n = [8]\np = { absolute = [1.5] }\n"),
        ("phase", "n = [8]\np = { absolute = [0.5] }\ncolour = 3\n"),
        ("audit", "n = [8]\np = { absolute = [0.5] }\n"),
        ("concentration", "kind = \"phase\"\nn = [8]\np = { absolute = [0.5] }\n"),
        ("turan-table", "n = [12]\n"),
        ("phase", "n = [8]\np = { absolute = [0.5] }\n[constants]\neps1 = \"-1/2\"\n"),
    ];
    for (i, (kind, text)) in cases.iter().enumerate() {
        let cfg = write(&dir, &format!("c{i}.toml"), text);
        let out = dir.path().join(format!("o{i}.csv"));
        let res = run(&[kind, s(&cfg), "--out", s(&out)]);
        assert_eq!(res.status.code(), Some(1), "case {i}");
        assert!(!out.exists(), "case {i}");
    }
    let res = run(&["phase", s(&dir.path().join("missing.toml"))]);
    assert_eq!(res.status.code(), Some(1));
    let cfg = write(&dir, "ok.toml", "n = [8]\np = { absolute = [0.5] }\n");
    assert_eq!(run(&["--threads", "0", "phase", s(&cfg)]).status.code(), Some(1));
}

#[test]
fn generate_solve_and_round_trip() {
    let dir = TempDir::new().unwrap();
    let g = dir.path().join("g.txt");
    let res = run(&["generate", "--n", "9", "--p", "0.4", "--seed", "5", "--index", "2", "--out", s(&g)]);
    assert!(res.status.success());
    let again = run(&["generate", "--n", "9", "--p", "0.4", "--seed", "5", "--index", "2"]);
    assert_eq!(again.stdout, fs::read(&g).unwrap());
    let bern = run(&["generate", "--n", "9", "--p", "0.4", "--seed", "5", "--generator", "bernoulli"]);
    assert!(bern.status.success());

    let canon = dir.path().join("canon.txt");
    assert!(run(&["fmt-roundtrip", s(&g), "--out", s(&canon)]).status.success());
    assert_eq!(fs::read(&g).unwrap(), fs::read(&canon).unwrap());

    let text = fs::read_to_string(&g).unwrap();
    let mut lines: Vec<&str> = text.lines().collect();
    lines[1..].reverse();
    let shuffled = write(&dir, "shuffled.txt", &(lines.join("\n") + "\n"));
    let out = run(&["fmt-roundtrip", s(&shuffled)]);
    assert!(out.status.success());
    assert_eq!(out.stdout, fs::read(&g).unwrap());

    let bad = write(&dir, "bad.txt", "this is not a hypergraph\n");
    assert_eq!(run(&["fmt-roundtrip", s(&bad)]).status.code(), Some(1));

    let out = dir.path().join("solve.csv");
    assert!(run(&["solve", s(&g), "--out", s(&out)]).status.success());
    assert_eq!(column(&out, "q_optimal"), ["true"]);
    assert_eq!(column(&out, "tfree_optimal"), ["true"]);
    let witness: serde_json::Value = serde_json::from_slice(&fs::read(out.with_extension("json")).unwrap()).unwrap();
    assert_eq!(witness["cut_labels"].as_array().unwrap().len(), 9);
    let kept = witness["tfree_edges"].as_array().unwrap().len().to_string();
    assert_eq!(column(&out, "tfree_value"), [kept]);

    let heur = dir.path().join("heur.csv");
    assert!(run(&["solve", s(&g), "--tier", "heuristic", "--out", s(&heur)]).status.success());
    assert_eq!(column(&heur, "q_optimal"), ["false"]);
}

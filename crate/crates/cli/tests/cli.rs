use std::path::Path;
use std::process::{Command, Output};

fn cubictsp(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cubictsp"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf-8 output")
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let path = dir.join(name);
    std::fs::write(&path, text).unwrap();
    path.to_string_lossy().into_owned()
}

fn generated(dir: &Path, args: &[&str], name: &str) -> String {
    let path = dir.join(name).to_string_lossy().into_owned();
    let mut full = vec!["gen"];
    full.extend_from_slice(args);
    full.extend_from_slice(&["--out", &path]);
    assert!(cubictsp(&full).status.success());
    path
}

#[test]
fn solve_petersen_as_cubic_graph() {
    let dir = tempfile::tempdir().unwrap();
    let p = generated(dir.path(), &["named", "petersen"], "petersen.txt");
    let out = cubictsp(&["solve", &p, "--mode", "cubic", "--oracle", "--verify"]);
    assert!(out.status.success());
    let text = stdout(&out);
    for line in [
        "length 11",
        "bound 83/7 (11.857143)",
        "verify ok",
        "oracle_tsp 11",
        "ratio 1 (1.000000)",
    ] {
        assert!(text.lines().any(|l| l == line), "missing `{line}` in\n{text}");
    }
}

#[test]
fn solve_reads_graph6() {
    let dir = tempfile::tempdir().unwrap();
    let k4 = write(dir.path(), "k4.g6", "C~\n");
    let text = stdout(&cubictsp(&["solve", &k4]));
    assert!(text.contains("mode cubic"));
    assert!(text.contains("length 4"));
}

#[test]
fn solve_k23_within_bound() {
    let dir = tempfile::tempdir().unwrap();
    let g = generated(dir.path(), &["named", "k23"], "k23.txt");
    let text = stdout(&cubictsp(&["solve", &g, "--trace"]));
    assert!(text.contains("length 6"));
    assert!(text.contains("bound 44/7"));
}

#[test]
fn exact_oracles() {
    let dir = tempfile::tempdir().unwrap();
    let p = generated(dir.path(), &["named", "petersen"], "petersen.txt");
    assert_eq!(stdout(&cubictsp(&["oracle", "tsp", &p])).trim(), "11");
    assert_eq!(stdout(&cubictsp(&["oracle", "minexc", &p])).trim(), "3");
}

#[test]
fn generated_families_have_the_expected_size() {
    let text = stdout(&cubictsp(&["gen", "qrepl", "1"]));
    assert_eq!(text.lines().find(|l| !l.starts_with('#')), Some("16 24"));
    let text = stdout(&cubictsp(&["gen", "drepl", "2"]));
    assert_eq!(text.lines().find(|l| !l.starts_with('#')), Some("11 14"));
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let bad = write(dir.path(), "bad.txt", "3 2\n0 1\n");
    assert_eq!(cubictsp(&["solve", &bad]).status.code(), Some(1));
    let k23 = generated(dir.path(), &["named", "k23"], "k23.txt");
    assert_eq!(cubictsp(&["solve", &k23, "--mode", "cubic"]).status.code(), Some(2));
    let path = write(dir.path(), "path.txt", "3 2\n0 1\n1 2\n");
    assert_eq!(cubictsp(&["solve", &path]).status.code(), Some(2));
    let cube = generated(dir.path(), &["named", "cube"], "cube.txt");
    assert_eq!(
        cubictsp(&["oracle", "tsp", &cube, "--limit", "6"]).status.code(),
        Some(2)
    );
}

#[test]
fn reduce_writes_one_file_set_per_step() {
    let dir = tempfile::tempdir().unwrap();
    let prism = generated(dir.path(), &["named", "prism"], "prism.txt");
    let steps = dir.path().join("steps");
    let out = cubictsp(&["reduce", &prism, "--out", steps.to_str().unwrap()]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert_eq!(text.lines().filter(|l| l.starts_with("step ")).count(), 2);
    assert!(text.contains("terminal basic n 4 n2 2"));
    for file in [
        "step-000-before.dot",
        "step-001-after.txt",
        "terminal.txt",
        "trace.json",
    ] {
        assert!(steps.join(file).exists(), "{file}");
    }
    let trace: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(steps.join("trace.json")).unwrap()).unwrap();
    assert_eq!(trace["steps"].as_array().unwrap().len(), 2);
}

#[test]
fn bench_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let manifest = write(
        dir.path(),
        "corpus.manifest",
        "# small corpus\nnamed k4\ndrepl 1\nsubcubic 20 n2=4 seed=3\nbridged 4,4 seed=1\n",
    );
    let first = cubictsp(&["bench", &manifest, "--jobs", "2"]);
    assert!(first.status.success());
    assert_eq!(stdout(&first), stdout(&cubictsp(&["bench", &manifest])));
    let lines: Vec<serde_json::Value> = stdout(&first)
        .lines()
        .map(|l| serde_json::from_str(l).unwrap())
        .collect();
    assert_eq!(lines.len(), 4);
    assert!(lines.iter().all(|r| r["within_bound"] == true));
    let bad = write(dir.path(), "bad.manifest", "foo 1\n");
    assert_eq!(cubictsp(&["bench", &bad]).status.code(), Some(1));
}

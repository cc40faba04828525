use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn ksnake(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ksnake")).args(args).output().unwrap()
}

fn generate(dir: &Path, n: &str, construction: &str) -> String {
    let out = dir.join(format!("{construction}{n}.snake"));
    let out = out.to_str().unwrap().to_string();
    let o = ksnake(&["generate", "--n", n, "--construction", construction, "--out", &out]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    out
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn generate_then_verify() {
    let dir = tempfile::tempdir().unwrap();
    for (n, c, size) in [("2", "he", 57), ("3", "he", 2515), ("4", "he", 181433), ("3", "extended", 2517)] {
        let path = generate(dir.path(), n, c);
        let text = fs::read_to_string(&path).unwrap();
        assert!(text.starts_with("snake v1\n"));
        assert!(text.lines().nth(1).unwrap().ends_with(&format!("construction={c} size={size}")));
        let o = ksnake(&["verify", &path]);
        assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    }
}

#[test]
fn full_mode_counts_pairs() {
    let dir = tempfile::tempdir().unwrap();
    let path = generate(dir.path(), "2", "he");
    let o = ksnake(&["verify", "--mode", "full", &path]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("pairs checked: 1596"));
}

#[test]
fn even_transition_fails_verification() {
    let dir = tempfile::tempdir().unwrap();
    let path = generate(dir.path(), "2", "he");
    let text = fs::read_to_string(&path).unwrap();
    let mut lines: Vec<String> = text.lines().map(String::from).collect();
    let mut ts: Vec<&str> = lines[3].split(' ').collect();
    ts[0] = "4";
    lines[3] = ts.join(" ");
    fs::write(&path, lines.join("\n") + "\n").unwrap();
    let o = ksnake(&["verify", &path]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("FAIL  odd-indices-even-codewords: transition #0 is t4"));
}

#[test]
fn parse_failure_exits_1() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.snake");
    fs::write(&path, "snake v2\n").unwrap();
    assert_eq!(ksnake(&["verify", path.to_str().unwrap()]).status.code(), Some(1));
}

#[test]
fn invalid_arguments_exit_2() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("x.snake");
    let out = out.to_str().unwrap();
    assert_eq!(ksnake(&["generate", "--n", "1", "--out", out]).status.code(), Some(2));
    assert_eq!(ksnake(&["generate", "--n", "2", "--construction", "extended", "--out", out]).status.code(), Some(2));
    assert_eq!(ksnake(&["generate", "--n", "3", "--construction", "bogus", "--out", out]).status.code(), Some(2));
    assert_eq!(ksnake(&["frobnicate"]).status.code(), Some(2));
}

#[test]
fn stats_output() {
    let dir = tempfile::tempdir().unwrap();
    let he = generate(dir.path(), "3", "he");
    let o = stdout(&ksnake(&["stats", &he]));
    assert!(o.contains("transitions: t5:"));
    assert!(o.contains(" t7:"));
    assert!(o.contains("missing: 5"));
    let ext = generate(dir.path(), "3", "extended");
    let o = stdout(&ksnake(&["stats", &ext]));
    assert!(o.contains("transitions: t3:"));
    assert!(o.contains("missing: 3"));
    let s5 = generate(dir.path(), "2", "he");
    assert!(stdout(&ksnake(&["stats", &s5])).contains("missing: 3"));
}

#[test]
fn dumps() {
    let dir = tempfile::tempdir().unwrap();
    let tree = dir.path().join("tree.txt");
    let graph = dir.path().join("graph.txt");
    let out = dir.path().join("s.snake");
    let o = ksnake(&[
        "generate", "--n", "3",
        "--out", out.to_str().unwrap(),
        "--dump-tree", tree.to_str().unwrap(),
        "--dump-graph", graph.to_str().unwrap(),
    ]);
    assert!(o.status.success());
    assert_eq!(fs::read_to_string(tree).unwrap().lines().count(), 20);
    assert!(fs::read_to_string(graph).unwrap().contains("M[6]"));
}

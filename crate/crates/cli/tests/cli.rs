use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use pizono_cli::{GraphFile, Loaded};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_pizono"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn write(dir: &Path, name: &str, text: &str) -> PathBuf {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p
}

fn fixtures() -> (tempfile::TempDir, PathBuf, PathBuf, PathBuf) {
    let dir = tempfile::tempdir().unwrap();
    let k4 = write(
        dir.path(),
        "k4.json",
        r#"{"vertices": 4, "edges": [[1,2],[1,3],[1,4],[2,3],[2,4],[3,4]]}"#,
    );
    let cube = write(
        dir.path(),
        "cube.json",
        r#"{"vertices": 4, "edges": [[1,2],[2,3],[3,4]]}"#,
    );
    let out = run(&["generate", "k2dm1", "--d", "5"]);
    assert!(out.status.success());
    let k2d5 = write(dir.path(), "k2d5.json", &stdout(&out));
    (dir, k4, cube, k2d5)
}

#[test]
fn documented_examples() {
    let (_dir, k4, cube, k2d5) = fixtures();
    let o = run(&["belt-diameter", k4.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "2");

    let o = run(&["symmetric", "distance", k2d5.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "2");

    let o = run(&[
        "belt-distance",
        cube.to_str().unwrap(),
        "--from",
        "1|2,3,4",
        "--to",
        "1,2|3,4",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "1");
    assert_eq!(lines[1], "1|2,3,4 -> 1,2|3,4");
}

#[test]
fn info_and_facets() {
    let (_dir, k4, cube, _) = fixtures();
    let o = run(&["info", cube.to_str().unwrap()]);
    assert_eq!(stdout(&o), "vertices: 4\nedges: 3\ndimension: 3\ncomponents: 1\n");
    let o = run(&["facets", k4.to_str().unwrap()]);
    assert_eq!(stdout(&o).lines().count(), 14);
    let o = run(&["belts", k4.to_str().unwrap()]);
    let text = stdout(&o);
    assert!(text.lines().all(|l| l.contains("size 4") || l.contains("size 6")));
    assert!(text.lines().count() > 0);
}

#[test]
fn venkov_exports() {
    let (_dir, k4, _, _) = fixtures();
    let o = run(&["venkov", k4.to_str().unwrap(), "--dot"]);
    let dot = stdout(&o);
    assert!(dot.starts_with("graph venkov {"));
    assert_eq!(dot.matches("[label=").count(), 7);
    let o = run(&["venkov", k4.to_str().unwrap(), "--json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["nodes"].as_array().unwrap().len(), 7);
    assert_eq!(run(&["venkov", k4.to_str().unwrap(), "--json"]).stdout, o.stdout);
}

#[test]
fn dual_bound_check() {
    let (_dir, k4, _, _) = fixtures();
    let o = run(&["dual-diameter", k4.to_str().unwrap()]);
    assert_eq!(stdout(&o).trim(), "3");
    let o = run(&["dual-diameter", k4.to_str().unwrap(), "--check-bound"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("bound: holds"));
}

#[test]
fn symmetric_check_reports_failures() {
    let dir = tempfile::tempdir().unwrap();
    let bad = write(
        dir.path(),
        "bad.json",
        r#"{"vertices": 4, "edges": [[1,2,"r"],[3,4,"r"],[2,3,"b"]]}"#,
    );
    let o = run(&["symmetric", "check", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["conjugate"], false);
    let o = run(&["symmetric", "distance", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    let plain = write(dir.path(), "plain.json", r#"{"vertices": 2, "edges": [[1,2]]}"#);
    assert_eq!(
        run(&["symmetric", "check", plain.to_str().unwrap()]).status.code(),
        Some(2)
    );
}

#[test]
fn usage_errors_exit_2() {
    let (dir, _, cube, _) = fixtures();
    let cube = cube.to_str().unwrap();
    assert_eq!(
        run(&["belt-distance", cube, "--from", "1,3|2,4", "--to", "1|2,3,4"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(run(&["no-such-command"]).status.code(), Some(2));
    assert_eq!(run(&["info", "/nonexistent.json"]).status.code(), Some(2));
    let dup = write(dir.path(), "dup.json", r#"{"vertices": 3, "edges": [[1,2],[2,1]]}"#);
    assert_eq!(run(&["info", dup.to_str().unwrap()]).status.code(), Some(2));
    assert_eq!(run(&["sweep", "--max-n", "9"]).status.code(), Some(2));
    assert_eq!(
        run(&["sweep", "--max-n", "4", "--checks", "bogus"]).status.code(),
        Some(2)
    );
}

#[test]
fn generate_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    for (family, arg, val) in [
        ("k2dm1", "--d", "6"),
        ("paper-odd", "--n", "2"),
        ("paper-even", "--d", "10"),
        ("permutahedron", "--d", "3"),
    ] {
        let path = dir.path().join(format!("{}.json", family));
        let o = run(&["generate", family, arg, val, "--out", path.to_str().unwrap()]);
        assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
        let text = std::fs::read_to_string(&path).unwrap();
        let loaded = GraphFile::parse(&text).unwrap();
        let again = match &loaded {
            Loaded::Plain(g) => GraphFile::from_graph(g),
            Loaded::Colored(cg) => GraphFile::from_colored(cg),
        };
        assert_eq!(GraphFile::parse(&again.to_json()).unwrap(), loaded);
        if family.starts_with("paper") {
            let report: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
            assert_eq!(report["red_blue_distance"], 3);
            assert_eq!(report["common_leaf"], serde_json::Value::Null);
        }
    }
    assert_eq!(run(&["generate", "paper-odd", "--d", "8"]).status.code(), Some(2));
}

#[test]
fn sweep_writes_csv() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("s.csv");
    let o = run(&[
        "sweep",
        "--max-n",
        "5",
        "--checks",
        "belt_bound,dual_bound",
        "--csv",
        csv.to_str().unwrap(),
        "--jobs",
        "2",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let text = std::fs::read_to_string(&csv).unwrap();
    assert_eq!(
        text.lines().collect::<Vec<_>>(),
        [
            "d,instances,max_belt_diameter,max_dual_diameter,violations",
            "2,2,1,3,0",
            "3,6,2,3,0",
            "4,21,2,3,0"
        ]
    );
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["rows"].as_array().unwrap().len(), 3);
}

#[test]
fn searches() {
    let o = run(&["search", "extremal", "--d", "7"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["outcome"], "found");
    assert_eq!(v["witness"]["red_blue_distance"], 3);

    let o = run(&["search", "extremal", "--d", "6"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["outcome"], "none");

    let o = run(&["search", "extremal", "--d", "8", "--max-nodes", "2"]);
    assert_eq!(o.status.code(), Some(3));

    let o = run(&["search", "d8"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["witness"]["distance"], 3);
    assert_eq!(v["witness"]["belt_diameter"], 3);
    assert_eq!(v["witness"]["from"], "1,2,3,4,5|6,7,8,9");
}

#[test]
fn oracle_verify() {
    let (_dir, k4, cube, _) = fixtures();
    for f in [k4, cube] {
        let o = run(&["oracle", "verify", f.to_str().unwrap()]);
        assert_eq!(o.status.code(), Some(0));
        assert!(stdout(&o).contains("dual graph: agree"));
    }
}

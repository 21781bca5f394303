use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use sgkit::format::parse_graph;
use sgkit_cli::SolveReport;

fn sgkit(args: &[&str], budget: Option<&str>) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_sgkit"));
    cmd.args(args).env_remove("SGKIT_BUDGET");
    if let Some(b) = budget {
        cmd.env("SGKIT_BUDGET", b);
    }
    cmd.output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn write_graph(dir: &Path, name: &str, text: &str) -> String {
    let path = dir.join(name);
    fs::write(&path, text).unwrap();
    path.to_str().unwrap().to_string()
}

const C4: &str = "p edge 4 4\ne 1 2\ne 2 3\ne 3 4\ne 4 1\n";

#[test]
fn exact_on_small_files() {
    let dir = tempfile::tempdir().unwrap();
    for (name, text, k) in [
        ("c4", C4, 3),
        ("k2", "p edge 2 1\ne 1 2\n", 2),
        ("k1", "p edge 1 0\n", 1),
    ] {
        let file = write_graph(dir.path(), name, text);
        let o = sgkit(&["exact", &file, "--json"], None);
        assert_eq!(o.status.code(), Some(0), "{name}");
        let r: SolveReport = serde_json::from_str(&stdout(&o)).unwrap();
        assert_eq!(r.k, k, "{name}");
        assert_eq!(r.meta.certificate_verified, Some(true));
    }
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let bad = write_graph(dir.path(), "bad", "p edge 2 1\ne 1 3\n");
    assert_eq!(sgkit(&["exact", &bad], None).status.code(), Some(2));
    assert_eq!(sgkit(&["exact", "/nonexistent/graph"], None).status.code(), Some(2));
    assert_eq!(sgkit(&["bipartite", "0", "1"], None).status.code(), Some(2));
    assert_eq!(sgkit(&["multipartite", "1,x"], None).status.code(), Some(2));

    let c6 = write_graph(
        dir.path(),
        "c6",
        "p edge 6 6\ne 1 2\ne 2 3\ne 3 4\ne 4 5\ne 5 6\ne 6 1\n",
    );
    assert_eq!(sgkit(&["exact", &c6], Some("1")).status.code(), Some(3));
    assert_eq!(sgkit(&["exact", &c6], Some("zero")).status.code(), Some(2));
    assert_eq!(sgkit(&["exact", &c6], Some("100000")).status.code(), Some(0));

    let parts: Vec<String> = (1..=24).map(|s| s.to_string()).collect();
    let mut args = vec!["multipartite"];
    args.extend(parts.iter().map(String::as_str));
    assert_eq!(sgkit(&args, None).status.code(), Some(3));

    let big = write_graph(dir.path(), "p20", &{
        let mut s = String::from("p edge 20 19\n");
        for v in 1..20 {
            s += &format!("e {v} {}\n", v + 1);
        }
        s
    });
    assert_eq!(sgkit(&["exact", &big], None).status.code(), Some(3));
}

#[test]
fn multipartite_reports() {
    let o = sgkit(&["multipartite", "1", "2", "3", "--bounds", "--json"], None);
    let r: SolveReport = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(r.k, 3);
    assert!(r.is_consistent());
    let o = sgkit(&["multipartite", "2^3"], None);
    assert!(stdout(&o).starts_with("k = 4\n"));
    let o = sgkit(&["multipartite", "3", "3"], None);
    assert!(stdout(&o).starts_with("k = 3\n"));
}

#[test]
fn bipartite_certificate_json() {
    let o = sgkit(&["bipartite", "4", "7", "--certificate", "--json"], None);
    let r: SolveReport = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(r.k, 5);
    assert_eq!(r.meta.certificate_verified, Some(true));
    let again = serde_json::to_string(&r).unwrap();
    assert_eq!(again.trim(), stdout(&o).trim());
}

#[test]
fn output_is_deterministic() {
    let a = sgkit(&["conjecture", "30", "--json"], None);
    let b = sgkit(&["conjecture", "30", "--json", "--threads", "3"], None);
    let c = sgkit(&["conjecture", "30", "--json", "--threads", "1"], None);
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(a.stdout, c.stdout);
    let t = sgkit(&["table", "15"], None);
    assert_eq!(t.stdout, sgkit(&["table", "15"], None).stdout);
}

#[test]
fn conjecture_text() {
    let o = sgkit(&["conjecture", "10"], None);
    assert!(stdout(&o).contains("max e = 1.094"));
}

#[test]
fn levelset_grid_shape() {
    let o = sgkit(&["levelset", "12", "--grid"], None);
    let text = stdout(&o);
    let marks = text.chars().filter(|&c| c == '#').count();
    assert_eq!(marks, 201);
    let width = text.lines().next().unwrap().len();
    assert!(text.lines().all(|l| l.len() == width));
}

#[test]
fn reduce_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let p4 = write_graph(dir.path(), "p4", "p edge 4 3\ne 1 2\ne 2 3\ne 3 4\n");
    let o = sgkit(&["reduce", &p4, "2", "--verify"], None);
    assert_eq!(o.status.code(), Some(0));
    let parsed = parse_graph(&stdout(&o)).unwrap();
    assert_eq!(parsed.graph.n(), 10);
    assert!(parsed.comments.iter().any(|c| c.contains("gamma=2 sg'=6") && c.ends_with("holds")));
    let roles = parsed.comments.iter().filter(|c| c.starts_with("role ")).count();
    assert_eq!(roles, 10);

    let tri = write_graph(dir.path(), "tri", "p edge 3 3\ne 1 2\ne 2 3\ne 1 3\n");
    assert_eq!(sgkit(&["reduce", &tri, "1"], None).status.code(), Some(2));
}

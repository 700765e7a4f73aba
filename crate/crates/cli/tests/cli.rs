use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use knot_core::lattice::{verify_embedding, Embedding, GramLattice};
use knot_core::SliceReport;

fn knot(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_knot")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    fs::write(&p, text).unwrap();
    p.to_str().unwrap().to_owned()
}

fn generated(args: &[&str]) -> String {
    let o = knot(args);
    assert!(o.status.success());
    stdout(&o)
}

#[test]
fn info_human() {
    let o = knot(&["info", "--m", "0", "--n", "0"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    for needle in ["107/28", "sigma = -2", "det = 107", "12a255", "[3,1,4,1,1,2]"] {
        assert!(out.contains(needle), "{needle} missing from\n{out}");
    }
}

#[test]
fn info_json_round_trips_byte_for_byte() {
    let o = knot(&["info", "--m", "1", "--n", "2", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let report = SliceReport::from_json(&text).unwrap();
    assert_eq!(report.fraction.to_string(), "283/48");
    assert_eq!(report.to_json() + "\n", text);
}

#[test]
fn bad_flags_exit_one() {
    let o = knot(&["info", "--m", "-1", "--n", "0"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("m must be >= 0"));
    assert_eq!(knot(&["info", "--m", "x", "--n", "0"]).status.code(), Some(1));
    assert_eq!(knot(&["verify", "--m-max", "0"]).status.code(), Some(1));
    assert_eq!(knot(&["verify", "--m-max", "0", "--n-max", "-2"]).status.code(), Some(1));
    assert_eq!(knot(&["nonsense"]).status.code(), Some(1));
    assert_eq!(knot(&["--jobs", "0", "info", "--m", "0", "--n", "0"]).status.code(), Some(1));
    assert_eq!(knot(&["--help"]).status.code(), Some(0));
}

#[test]
fn verify_single_row() {
    let o = knot(&["verify", "--m-max", "0", "--n-max", "0"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert_eq!(out.lines().count(), 2, "{out}");
    assert!(out.contains("12a255"));
}

#[test]
fn verify_csv() {
    let o = knot(&["verify", "--m-max", "0", "--n-max", "0", "--format", "csv"]);
    assert_eq!(o.status.code(), Some(0));
    let mut rdr = csv::Reader::from_reader(o.stdout.as_slice());
    let headers = rdr.headers().unwrap().clone();
    assert_eq!(&headers[0], "m");
    let rows: Vec<_> = rdr.records().map(|r| r.unwrap()).collect();
    assert_eq!(rows.len(), 1);
    let col = |name: &str| headers.iter().position(|h| h == name).unwrap();
    assert_eq!(&rows[0][col("fraction")], "107/28");
    assert_eq!(&rows[0][col("gtop")], "1");
    assert_eq!(&rows[0][col("gsm")], "2");
    assert_eq!(&rows[0][col("embeddable")], "no");
}

#[test]
fn verify_json_round_trips() {
    let o = knot(&["verify", "--m-max", "1", "--n-max", "0", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let rows: Vec<SliceReport> = serde_json::from_str(&text).unwrap();
    assert_eq!(rows.len(), 2);
    assert_eq!(serde_json::to_string_pretty(&rows).unwrap() + "\n", text);
}

#[test]
fn verify_exhausted_budget_exits_two() {
    let o = knot(&["verify", "--m-max", "0", "--n-max", "0", "--embed-max-nodes", "5"]);
    assert_eq!(o.status.code(), Some(2), "{}", stdout(&o));
}

#[test]
fn jobs_do_not_change_results() {
    let one = knot(&["--jobs", "1", "verify", "--m-max", "1", "--n-max", "1", "--format", "json"]);
    let four = knot(&["verify", "--m-max", "1", "--n-max", "1", "--format", "json", "--jobs", "4"]);
    assert_eq!(one.status.code(), Some(0));
    assert_eq!(stdout(&one), stdout(&four));
}

#[test]
fn lattice_command() {
    let dir = tempfile::tempdir().unwrap();
    let q = write(dir.path(), "q.txt", &generated(&["matrix", "--m", "0", "--n", "0"]));

    let o = knot(&["lattice", &q, "--dim", "10"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "NOT EMBEDDABLE dim=10");

    let o = knot(&["lattice", &q, "--dim", "11"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    let mut lines = out.lines();
    assert_eq!(lines.next(), Some("EMBEDDABLE dim=11"));
    let vectors: Vec<Vec<i64>> = lines.map(|l| l.split_whitespace().map(|x| x.parse().unwrap()).collect()).collect();
    assert_eq!(vectors.len(), 8);
    assert!(vectors.iter().all(|v| v.len() == 11));
    let g = GramLattice::parse_text(&fs::read_to_string(&q).unwrap()).unwrap();
    assert!(verify_embedding(&g, &Embedding::new(vectors, 11).unwrap()).unwrap());

    let a2 = write(dir.path(), "a2.txt", "2\n2 -1\n-1 2\n");
    let o = knot(&["lattice", &a2, "--mindim", "--cap", "5"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).lines().next(), Some("MINDIM=3"));

    let o = knot(&["lattice", &a2, "--dim", "3", "--seconds", "0.0000001"]);
    assert!(matches!(o.status.code(), Some(0 | 2)));

    let bad = write(dir.path(), "bad.txt", "2\n1 2\n2 1\n");
    let o = knot(&["lattice", &bad, "--dim", "3"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("leading principal minor 2"), "{}", stderr(&o));

    let garbage = write(dir.path(), "garbage.txt", "2\n1 x\n");
    assert_eq!(knot(&["lattice", &garbage, "--dim", "3"]).status.code(), Some(1));
    assert_eq!(knot(&["lattice", &a2]).status.code(), Some(1));
}

#[test]
fn seifert_command() {
    let dir = tempfile::tempdir().unwrap();
    let s = write(dir.path(), "s.txt", &generated(&["matrix", "--m", "0", "--n", "0", "--kind", "seifert"]));
    assert_eq!(stdout(&knot(&["seifert", &s, "--sig"])).trim(), "-2");
    assert_eq!(stdout(&knot(&["seifert", &s, "--det"])).trim(), "107");
    assert_eq!(stdout(&knot(&["seifert", &s, "--alex"])).trim(), "6t^2 - 27t + 41 - 27t^-1 + 6t^-2");
    let all = stdout(&knot(&["seifert", &s]));
    assert_eq!(all.lines().count(), 3);

    let garbage = write(dir.path(), "garbage.txt", "3\n1 2\n");
    assert_eq!(knot(&["seifert", &garbage, "--sig"]).status.code(), Some(1));
    assert_eq!(knot(&["seifert", "/nonexistent/file", "--sig"]).status.code(), Some(1));
}

#[test]
fn curve_command() {
    let o = knot(&["curve", "--m", "0", "--n", "0", "--bound", "3"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).lines().next(), Some("a = (1, 0, 0, 1) ; b = (1, 1, 0, 2) ; form = [[-1, 1], [0, 0]]"));

    let o = knot(&["curve", "--m", "2", "--n", "0"]);
    assert!(stdout(&o).lines().next().unwrap().ends_with("form = [[0, 1], [0, -3]]"));

    let o = knot(&["curve", "--m", "0", "--n", "0", "--bound", "3", "--search"]);
    assert_eq!(stdout(&o).lines().next(), Some("a = (0, 0, 1, 0) ; b = (-1, -1, -3, -2) ; form = [[-1, 3], [4, -12]]"));

    assert_eq!(knot(&["curve", "--m", "0", "--n", "0", "--bound", "0"]).status.code(), Some(1));
    assert_eq!(knot(&["curve"]).status.code(), Some(1));

    // the trefoil has no Alexander-trivial genus-one subsurface to find
    let dir = tempfile::tempdir().unwrap();
    let trefoil = write(dir.path(), "trefoil.txt", "2\n-1 1\n0 -1\n");
    let o = knot(&["curve", "--matrix", &trefoil, "--bound", "2"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "NONE within bound 2");
}

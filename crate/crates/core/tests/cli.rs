mod common;

use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use surfcut::balance::parse_rational;
use surfcut::cli::Report;
use surfcut::generate;

fn surfcut(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_surfcut"))
        .args(args)
        .output()
        .unwrap()
}

fn write_graph(dir: &Path, name: &str, g: &surfcut::EmbeddedGraph) -> String {
    let path = dir.join(name);
    fs::write(&path, g.to_text()).unwrap();
    path.to_string_lossy().into_owned()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn k4_quotient_agrees_with_oracle() {
    let dir = tempfile::tempdir().unwrap();
    let k4 = write_graph(dir.path(), "K4.emb", &generate::k4_planar());
    let out = surfcut(&["run", &k4, "--f", "quotient", "--oracle"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("value: 8/1"), "{text}");
    assert!(text.contains("oracle: AGREE"), "{text}");
}

#[test]
fn k2_density() {
    let dir = tempfile::tempdir().unwrap();
    let k2 = write_graph(dir.path(), "K2.emb", &generate::path(2));
    let out = surfcut(&["run", &k2, "--f", "density", "--json"]);
    assert_eq!(out.status.code(), Some(0));
    let report: Report = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(report.value, "4/1");
    assert_eq!(report.balance, "1/2");
    assert_eq!(report.side, vec![0]);
}

#[test]
fn broken_input_exits_with_one() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("broken.emb");
    fs::write(&path, "vertices 2\nedge 0 1\nrot 0: 0 0\nrot 1: 1\n").unwrap();
    let out = surfcut(&["run", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("error"));

    let missing = dir.path().join("missing.emb");
    assert_eq!(
        surfcut(&["run", missing.to_str().unwrap()]).status.code(),
        Some(1)
    );
}

#[test]
fn bad_flags_exit_with_one() {
    let dir = tempfile::tempdir().unwrap();
    let k4 = write_graph(dir.path(), "K4.emb", &generate::k4_planar());
    assert_eq!(
        surfcut(&["run", &k4, "--f", "cheeger"]).status.code(),
        Some(1)
    );
    assert_eq!(surfcut(&["run", &k4, "--root", "9"]).status.code(), Some(1));
    let bad_f = dir.path().join("convex.f");
    fs::write(&bad_f, "0 0\n1/4 1/8\n1/2 1/2\n").unwrap();
    let choice = format!("custom:{}", bad_f.display());
    assert_eq!(
        surfcut(&["run", &k4, "--f", &choice]).status.code(),
        Some(1)
    );
}

#[test]
fn oracle_cap_exceeded_exits_with_one() {
    let dir = tempfile::tempdir().unwrap();
    let big = write_graph(dir.path(), "c17.emb", &generate::cycle(17));
    assert_eq!(surfcut(&["run", &big, "--oracle"]).status.code(), Some(1));
    assert_eq!(surfcut(&["run", &big]).status.code(), Some(0));
}

#[test]
fn text_and_json_report_the_same_values() {
    let dir = tempfile::tempdir().unwrap();
    let custom = dir.path().join("f.txt");
    fs::write(&custom, common::CUSTOM_F).unwrap();
    let custom_choice = format!("custom:{}", custom.display());
    for entry in common::load_corpus()
        .into_iter()
        .filter(|e| e.graph.vertex_count() <= 6)
    {
        let input = entry.path.to_str().unwrap();
        for f in ["quotient", "density", "expansion", custom_choice.as_str()] {
            let json = surfcut(&["run", input, "--f", f, "--json", "--oracle"]);
            assert_eq!(json.status.code(), Some(0), "{} {f}", entry.name);
            let report: Report = serde_json::from_str(&stdout(&json)).unwrap();
            assert_eq!(report.agree, Some(true));
            assert_eq!(report.oracle_value.as_deref(), Some(report.value.as_str()));

            // rationals survive the JSON round trip exactly
            let again: Report =
                serde_json::from_str(&serde_json::to_string(&report).unwrap()).unwrap();
            assert_eq!(again, report);
            for r in [&report.value, &report.balance, &report.expansion] {
                assert!(parse_rational(r).is_some(), "{r}");
            }

            let text = stdout(&surfcut(&["run", input, "--f", f, "--oracle"]));
            let n = entry.graph.vertex_count();
            assert_eq!(text, report.to_text(n), "{} {f}", entry.name);
        }
    }
}

#[test]
fn expansion_states_the_quotient_identity() {
    let dir = tempfile::tempdir().unwrap();
    let c6 = write_graph(dir.path(), "c6.emb", &generate::cycle(6));
    let text = stdout(&surfcut(&["run", &c6, "--f", "expansion"]));
    assert!(text.contains("expansion: 2/3"), "{text}");
    assert!(
        text.contains("quotient = n * expansion: 4/1 = 6 * 2/3"),
        "{text}"
    );
}

#[test]
fn walk_dump_is_written() {
    let dir = tempfile::tempdir().unwrap();
    let k4 = write_graph(dir.path(), "K4.emb", &generate::k4_planar());
    let dump = dir.path().join("walks.txt");
    let out = surfcut(&["run", &k4, "--dump-walks", dump.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let walks = fs::read_to_string(&dump).unwrap();
    assert!(walks.lines().count() > 1);
    let again = dir.path().join("walks2.txt");
    surfcut(&["run", &k4, "--dump-walks", again.to_str().unwrap()]);
    assert_eq!(walks, fs::read_to_string(&again).unwrap());
}

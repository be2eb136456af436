//! End-to-end checks of the command-line interface: golden CSV/JSON output,
//! determinism, file parsing, and exit codes.

use std::path::PathBuf;
use std::process::{Command, Output};

fn twins() -> Command {
    Command::new(env!("CARGO_BIN_EXE_twins"))
}

fn run(args: &[&str]) -> Output {
    twins().args(args).output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf8 output")
}

fn fixture(name: &str, contents: &str) -> PathBuf {
    let dir = std::env::temp_dir().join("twins-cli-tests");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::write(&path, contents).unwrap();
    path
}

const HEXAGON: &str = "dimension: 2\nvertices:\n-1 0\n0 -1\n-1 1\n0 1\n1 0\n1 -1\n";
const SQUARE: &str = "dimension: 2\nvertices:\n-1 -1\n-1 1\n1 -1\n1 1\n";
const SIMPLEX: &str = "dimension: 2\nvertices:\n-1 -1\n2 -1\n-1 2\n";
const FAMILY: &str = "type: calabi\nalpha1: 1\nalpha2: 2\nbeta1: 0\nbeta2: 1\n\
c_alpha1: 1\nc_alpha2: -1/4\nc_beta1: -2/11\nc_beta2: 2/11\n";

#[test]
fn scan_golden_csv() {
    let out = run(&[
        "hirzebruch",
        "scan",
        "--n",
        "1",
        "--range",
        "1/3..2/3",
        "--step",
        "1/6",
    ]);
    assert!(out.status.success());
    let expect = "\
# command: hirzebruch scan --n 1 --range 1/3..2/3 --step 1/6
s,x,a,b,bifurcation,a1_zero_a,a1_zero_b,cscs_root,a_is_cscs
2[exact],1/3[exact],0[exact],1/19[exact],false,false,false,0.105572809000\u{b1}4.6e-13[interval],false
2[exact],1/2[exact],0[exact],1/4[exact],false,false,false,0.131482908179\u{b1}4.6e-13[interval],false
2[exact],2/3[exact],0[exact],22/43[exact],false,false,false,0.126245645967\u{b1}4.6e-13[interval],false
";
    assert_eq!(stdout(&out), expect);
}

#[test]
fn scan_is_deterministic() {
    let args = [
        "hirzebruch",
        "scan",
        "--n",
        "2",
        "--range",
        "1/5..4/5",
        "--step",
        "3/10",
        "--a-range",
        "-1/2..1/2",
        "--a-step",
        "1/2",
    ];
    let first = run(&args);
    let second = run(&args);
    assert!(first.status.success());
    assert_eq!(first.stdout, second.stdout);
}

#[test]
fn scan_empty_range_is_success() {
    let out = run(&["hirzebruch", "scan", "--n", "1", "--range", "2..3", "--step", "1"]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("empty scan range"));
}

#[test]
fn scan_json_mirrors_csv() {
    let out = run(&[
        "hirzebruch",
        "scan",
        "--n",
        "1",
        "--range",
        "1/2..1/2",
        "--step",
        "1",
        "--format",
        "json",
    ]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).expect("valid json");
    let rows = v["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 1);
    assert_eq!(rows[0]["b"]["tag"], "exact");
    assert_eq!(rows[0]["b"]["value"], "1/4");
    assert_eq!(rows[0]["cscs_root"]["tag"], "interval");
}

#[test]
fn twin_row_values() {
    let out = run(&["hirzebruch", "twin", "--n", "1", "--x", "1/2", "--a", "0"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("1/4[exact]"));
    assert!(text.contains("exact-zero"));
}

#[test]
fn cscs_intervals_and_bifurcation() {
    let out = run(&["hirzebruch", "cscs", "--n", "1", "--x", "1/2"]);
    let text = stdout(&out);
    assert!(text.contains("3c^2 - 8c + 1"));
    assert!(text.contains("none"));
    assert!(text.contains("\u{b1}"));
    let out = run(&["hirzebruch", "cscs", "--n", "1", "--x", "1/3"]);
    let text = stdout(&out);
    assert!(text.contains("5c^2 - 10c + 1"));
    assert!(!text.contains("none"));
}

#[test]
fn polytope_verdicts() {
    let hex = fixture("hexagon.poly", HEXAGON);
    let out = run(&["polytope", "check", hex.to_str().unwrap()]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("only-diagonal: no twin"));

    let square = fixture("square.poly", SQUARE);
    let out = run(&["polytope", "check", square.to_str().unwrap()]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("2 solution line(s)"));
    assert!(text.contains("w2 = w0"));
    assert!(text.contains("w1 = w0"));

    let simplex = fixture("simplex.poly", SIMPLEX);
    let out = run(&["polytope", "check", simplex.to_str().unwrap()]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("empty system: full Sasaki cone"));
}

#[test]
fn polytope_parse_error_exits_two() {
    let bad = fixture("bad.poly", "dimension: 2\nvertices:\n1 oops\n");
    let out = run(&["polytope", "check", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("line 3"));
}

#[test]
fn quad_fit_and_twin() {
    let path = fixture("family.ansatz", FAMILY);
    let out = run(&["quad", "fit", path.to_str().unwrap()]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("extremal"));
    assert!(text.contains("boundary conditions hold exactly"));

    let out = run(&["quad", "twin", path.to_str().unwrap()]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("-2/3[exact],1[exact],0[exact],true,true"));
}

#[test]
fn quad_family_and_lebrun() {
    let out = run(&["quad", "cscs-family", "--alpha1", "1", "--alpha2", "2", "--c", "1"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("36[exact]"));
    assert!(text.contains("(-2,11,-2,11)"));

    let out = run(&["quad", "lebrun", "--alpha", "1", "--beta", "6", "--c", "1"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("12816943/4071[exact]"));
    assert!(text.contains("389240/4071[exact]"));

    let out = run(&["quad", "lebrun", "--alpha", "1", "--beta", "4", "--c", "1"]);
    assert!(stdout(&out).contains("no constant-scalar values"));
}

#[test]
fn genus_commands() {
    let out = run(&["genus", "twin", "--genus", "3", "--n", "2", "--x", "1/10"]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("-2/7[exact]"));

    let out = run(&["genus", "join", "--w1", "51", "--w2", "50", "--l1", "3"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("1/101[exact]"));
    assert!(text.contains("true"));

    let out = run(&["genus", "join", "--w1", "9", "--w2", "3", "--l1", "1"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn verify_section_five() {
    let out = run(&["verify", "s5"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("PASS [s5] 09"));
    assert!(text.contains("PASS [s5] 10"));
    assert!(text.contains("verified 2 criteria, 0 failed"));
}

#[test]
fn verify_unknown_selector_exits_two() {
    let out = run(&["verify", "s9"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn usage_error_exits_two() {
    let out = run(&["hirzebruch", "twin", "--no-such-flag"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn out_flag_writes_file() {
    let dir = std::env::temp_dir().join("twins-cli-tests");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("scan.csv");
    let out = run(&[
        "hirzebruch",
        "scan",
        "--n",
        "1",
        "--range",
        "1/2..1/2",
        "--step",
        "1",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    let written = std::fs::read_to_string(&path).unwrap();
    assert!(written.contains("1/4[exact]"));
}

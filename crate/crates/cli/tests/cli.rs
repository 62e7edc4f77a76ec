use std::path::PathBuf;
use std::process::{Command, Output};

use reflexive_cli::{DegreeRecord, Report};

fn data(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../data").join(name)
}

fn reflexive(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_reflexive")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn machine(args: &[&str]) -> (Report, i32) {
    let mut all = args.to_vec();
    all.extend(["--format", "machine"]);
    let o = reflexive(&all);
    let report: Report = serde_json::from_str(&stdout(&o)).expect("machine report parses");
    (report, o.status.code().unwrap())
}

#[test]
fn integer_ground_ring_table() {
    let o = reflexive(&["compute", "--ring", "Z", "--sign", "plus", "--max-degree", "4"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    let rows: Vec<&str> = out.lines().skip(2).take(5).map(str::trim).collect();
    assert_eq!(rows, ["0  Z", "1  Z/2", "2  0", "3  Z/2", "4  0"]);
}

#[test]
fn integer_ground_ring_records() {
    let (r, code) = machine(&["compute", "--ring", "Z", "--sign", "minus", "--max-degree", "5", "--cross-check"]);
    assert_eq!(code, 0);
    let torsion: Vec<Vec<u64>> = r.sections[0].degrees.iter().map(|d| d.torsion.clone()).collect();
    assert_eq!(torsion, vec![vec![2], vec![], vec![2], vec![], vec![2], vec![]]);
    assert!(r.sections[0].degrees.iter().all(|d| d.free_rank == 0));
    assert!(r.checks.iter().any(|c| c.name == "closed form for the ground ring" && c.passed));
}

#[test]
fn perturbed_algebra_is_rejected_with_the_axiom_named() {
    let input = data("dual_numbers_broken.json");
    let o = reflexive(&["validate", "--input", input.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("involution squares to identity"));

    let (r, code) = machine(&["validate", "--input", input.to_str().unwrap()]);
    assert_eq!(code, 1);
    assert!(r.violations.iter().any(|v| v.axiom == "involution squares to identity"));
}

#[test]
fn valid_inputs_validate() {
    for name in ["dual_numbers.json", "gaussian.json", "c2.json", "s3.json", "bar_c2.json", "tensor_swap.json"] {
        let o = reflexive(&["validate", "--input", data(name).to_str().unwrap()]);
        assert_eq!(o.status.code(), Some(0), "{name}: {}", stdout(&o));
    }
}

#[test]
fn c2_decomposition_over_f2() {
    let input = data("c2.json");
    let o = reflexive(&["group", "--input", input.to_str().unwrap(), "--ring", "F2", "--max-degree", "3", "--decompose"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("decomposition verified"));
}

#[test]
fn c3_shortcut_is_reported_as_failing() {
    let input = data("c3.json");
    let (r, code) = machine(&["group", "--input", input.to_str().unwrap(), "--ring", "Q", "--max-degree", "2", "--decompose"]);
    assert_eq!(code, 1);
    let failing: Vec<&str> = r.checks.iter().filter(|c| !c.passed).map(|c| c.name.as_str()).collect();
    assert_eq!(failing.len(), 1);
    assert!(failing[0].starts_with("abelian shortcut"));
}

#[test]
fn parse_failures_exit_2() {
    let o = reflexive(&["compute", "--input", data("missing.json").to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    let o = reflexive(&["compute", "--ring", "F4"]);
    assert_eq!(o.status.code(), Some(2));
    let o = reflexive(&["compute", "--ring", "Z", "--method", "quotient"]);
    assert_eq!(o.status.code(), Some(2));
    let o = reflexive(&["compute", "--input", data("c2.json").to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn machine_reports_round_trip() {
    let input = data("gaussian.json");
    let args = ["compute", "--input", input.to_str().unwrap(), "--max-degree", "2", "--format", "machine"];
    let text = stdout(&reflexive(&args));
    let r: Report = serde_json::from_str(&text).unwrap();
    assert_eq!(r.machine(), text);
    assert_eq!(r.sections[0].degrees[0], DegreeRecord { n: 0, q: None, free_rank: 1, torsion: vec![2] });
}

#[test]
fn repeated_runs_are_byte_identical() {
    let input = data("tensor_swap.json");
    let args = ["tensor", "--input", input.to_str().unwrap(), "--max-weight", "2", "--cross-check", "--format", "machine"];
    let a = reflexive(&args);
    let b = reflexive(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn both_methods_agree_over_the_rationals() {
    let input = data("gaussian.json");
    let (r, code) = machine(&["compute", "--input", input.to_str().unwrap(), "--ring", "Q", "--method", "both", "--max-degree", "3"]);
    assert_eq!(code, 0);
    assert_eq!(r.sections.len(), 2);
    assert_eq!(r.sections[0].degrees, r.sections[1].degrees);
}

#[test]
fn reflexive_set_matches_group_command() {
    let (set, c1) = machine(&["compute", "--input", data("bar_c2.json").to_str().unwrap(), "--max-degree", "3"]);
    let (grp, c2) = machine(&["group", "--input", data("c2.json").to_str().unwrap(), "--ring", "F2", "--max-degree", "3"]);
    assert_eq!((c1, c2), (0, 0));
    assert_eq!(set.sections[0].degrees, grp.sections[0].degrees);
}

#[test]
fn morita_and_hyper_pass() {
    let (r, code) = machine(&["morita", "--ring", "Z", "--sign", "minus", "--max-degree", "2"]);
    assert_eq!(code, 0, "{:?}", r.checks);
    let input = data("dual_numbers.json");
    let (r, code) = machine(&["hyper", "--input", input.to_str().unwrap(), "--max-degree", "2"]);
    assert_eq!(code, 0, "{:?}", r.checks);
    assert_eq!(r.sections.len(), 3);
}

#[test]
fn single_criterion_runs() {
    let (r, code) = machine(&["suite", "--criterion", "1"]);
    assert_eq!(code, 0);
    assert_eq!(r.summary.as_deref(), Some("1 of 1 criteria passed"));
}

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use tempfile::TempDir;
use widthcalc::fixtures;
use widthcalc::{Complex, Move};

fn bin(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_widthcalc")).args(args).env_remove("WIDTHCALC_SEED").output().unwrap()
}

fn write(dir: &TempDir, name: &str, text: &str) -> PathBuf {
    let p = dir.path().join(name);
    std::fs::write(&p, text).unwrap();
    p
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

#[test]
fn validate_exit_codes() {
    let dir = TempDir::new().unwrap();
    let ok = write(&dir, "ok.json", &fixtures::diamond().to_json());
    let cyclic = write(&dir, "cyclic.json", &fixtures::two_cycle().to_json());
    let text = fixtures::diamond().to_json();
    let truncated = write(&dir, "trunc.json", &text[..text.len() / 3]);

    let o = bin(&["validate", s(&ok)]);
    assert_eq!(o.status.code(), Some(0));
    let o = bin(&["validate", s(&cyclic)]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("closed flow line"), "{}", stdout(&o));
    let o = bin(&["validate", s(&truncated)]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("parse error"), "{}", stderr(&o));
    let o = bin(&["validate", "/nonexistent/file.json"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn complexity_reports() {
    let dir = TempDir::new().unwrap();
    let one = write(&dir, "one.json", &fixtures::one_bridge_sphere().to_json());
    let o = bin(&["complexity", s(&one)]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert_eq!(out.lines().last().unwrap(), "[8]");
    assert!(out.contains("mu_up"));

    let left = write(&dir, "left.json", &fixtures::spherical_untelescoping().to_json());
    let o = bin(&["complexity", "--quiet", s(&left)]);
    assert_eq!(stdout(&o).trim(), "[24]");

    let empty = write(&dir, "empty.json", r#"{"thick": [], "thin": [], "boundary": [], "cbs": []}"#);
    let o = bin(&["complexity", s(&empty)]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("invalid complex"), "{}", stderr(&o));

    let o = bin(&["complexity", "--format", "dot", s(&one)]);
    assert!(stdout(&o).starts_with("digraph"));
}

#[test]
fn apply_consolidation_decreases() {
    let dir = TempDir::new().unwrap();
    let c = write(&dir, "pair.json", &fixtures::consolidation_pair().to_json());
    let m = Move::Consolidate { thick: "J".into(), thin: "F".into(), tangle: None };
    let mv = write(&dir, "move.json", &m.to_json());
    let o = bin(&["apply", s(&c), "--move", s(&mv)]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let out = Complex::from_json(&stdout(&o)).unwrap();
    assert!(widthcalc::validate(&out).is_valid());
    assert!(stderr(&o).contains("(24,18) -> (24)"), "{}", stderr(&o));
}

#[test]
fn apply_bad_certificate_names_the_check() {
    let dir = TempDir::new().unwrap();
    let c = write(&dir, "pair.json", &fixtures::consolidation_pair().to_json());
    let m = Move::Consolidate { thick: "H".into(), thin: "F".into(), tangle: None };
    let o = bin(&["apply", s(&c), "--move", &m.to_json()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("`precondition`"), "{}", stderr(&o));

    let sphere = write(&dir, "sphere.json", &fixtures::one_bridge_sphere().to_json());
    let o = bin(&["apply", s(&sphere), "--move", &Move::stab("H").to_json()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("genus >= 1 required"));
}

#[test]
fn chained_moves_apply_in_order() {
    let dir = TempDir::new().unwrap();
    let c = write(&dir, "h.json", &fixtures::heegaard(2).to_json());
    let stab = Move::stab("H").to_json();
    let o = bin(&["apply", s(&c), "--move", &stab, "--move", &stab]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let out = Complex::from_json(&stdout(&o)).unwrap();
    assert_eq!(out.thick[0].surface.genus, 0);
    let log = stderr(&o);
    let first = log.find("(24) -> (12)").unwrap();
    let second = log.find("(12) -> (0)").unwrap();
    assert!(first < second, "{log}");

    // A third stabilization fails, so order matters.
    let o = bin(&["apply", s(&c), "--move", &stab, "--move", &stab, "--move", &stab]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn embedded_moves_run_first() {
    let dir = TempDir::new().unwrap();
    let mut v: serde_json::Value = serde_json::from_str(&fixtures::heegaard(2).to_json()).unwrap();
    v["moves"] = serde_json::json!([serde_json::from_str::<serde_json::Value>(&Move::stab("H").to_json()).unwrap()]);
    let c = write(&dir, "h.json", &v.to_string());
    let o = bin(&["apply", s(&c), "--move", &Move::stab("H").to_json()]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(Complex::from_json(&stdout(&o)).unwrap().thick[0].surface.genus, 0);
}

#[test]
fn thin_with_cap_zero() {
    let dir = TempDir::new().unwrap();
    let c = write(&dir, "pair.json", &fixtures::consolidation_pair().to_json());
    let o = bin(&["thin", "--cap", "0", s(&c)]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("cap reached"), "{}", stderr(&o));
}

#[test]
fn thin_trace_is_json_lines() {
    let dir = TempDir::new().unwrap();
    let mut v: serde_json::Value = serde_json::from_str(&fixtures::spherical_untelescoping().to_json()).unwrap();
    v["moves"] = serde_json::json!([serde_json::from_str::<serde_json::Value>(
        &Move::ThinningSequence(fixtures::spherical_thinning_move()).to_json()
    )
    .unwrap()]);
    let c = write(&dir, "left.json", &v.to_string());
    let o = bin(&["thin", "--scripted", s(&c)]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let lines: Vec<serde_json::Value> = stdout(&o).lines().map(|l| serde_json::from_str(l).unwrap()).collect();
    let summary = lines.last().unwrap();
    assert_eq!(summary["initial"], serde_json::json!([24]));
    assert_eq!(summary["steps"], 1);
    assert_eq!(lines[0]["vector"], serde_json::json!([18, 18]));
}

#[test]
fn explore_diamond_gives_a_dot_dag() {
    let dir = TempDir::new().unwrap();
    let c = write(&dir, "diamond.json", &fixtures::diamond().to_json());
    let o = bin(&["explore", "--budget", "30", s(&c)]);
    assert_eq!(o.status.code(), Some(0));
    let dot = stdout(&o);
    assert!(dot.starts_with("digraph rewrites"));
    assert!(dot.contains("(30,30,24,24)"), "{dot}");
    assert!(dot.contains("->"));
}

#[test]
fn gen_is_reproducible() {
    let a = bin(&["gen", "--seed", "5"]);
    let b = bin(&["gen", "--seed", "5"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(stdout(&a), stdout(&b));
    assert!(stderr(&a).contains("seed: 5"));
    let c = Complex::from_json(&stdout(&a)).unwrap();
    assert!(widthcalc::validate(&c).is_valid());

    let env = Command::new(env!("CARGO_BIN_EXE_widthcalc"))
        .args(["gen", "--seed", "1"])
        .env("WIDTHCALC_SEED", "5")
        .output()
        .unwrap();
    assert_eq!(stdout(&env), stdout(&a));
}

#[test]
fn selftest_passes() {
    let o = bin(&["selftest", "--samples", "20"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).lines().all(|l| l.starts_with("PASS")));
}

#[test]
fn bad_flag_is_a_usage_error() {
    assert_eq!(bin(&["complexity", "--policy", "nope", "x.json"]).status.code(), Some(2));
    assert_eq!(bin(&["--help"]).status.code(), Some(0));
}

#[test]
fn run_writes_to_the_given_streams() {
    let dir = TempDir::new().unwrap();
    let c = write(&dir, "one.json", &fixtures::one_bridge_sphere().to_json());
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let code = widthcalc::cli::run(["widthcalc", "validate", s(&c)], &mut out, &mut err);
    assert_eq!(code, 0);
    assert_eq!(String::from_utf8(out).unwrap().trim(), "valid");
    assert!(err.is_empty());
}

use std::path::PathBuf;
use std::process::{Command, Output};

fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures").join(name)
}

fn sfh(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_sfh")).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn disk_has_rank_one() {
    let o = sfh(&["homology", fixture("disk.json").to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "rank 1 (1 Spin^c class)\n");
}

#[test]
fn torus_algebra_table() {
    let o = sfh(&["algebra", "--arc-diagram", "Z2", "--table"]);
    let s = stdout(&o);
    assert!(s.starts_with("A(Z2) summand ranks [1, 5, 3]"));
    for line in ["ρ1 · ρ2 = ρ12", "ι2 · ρ1 = ρ1", "ρ1 · ι1 = ρ1", "ι1 · ρ2 = ρ2"] {
        assert!(s.lines().any(|l| l == line), "{line}");
    }
    assert!(!s.contains("ρ2 · ρ1"));
    assert_eq!(sfh(&["algebra", "--arc-diagram", "Z9"]).status.code(), Some(1));
}

#[test]
fn equivalence_report_passes_and_catches_a_fault() {
    let (stab, plan) = (fixture("stab.json"), fixture("plan.json"));
    let args = ["verify-equivalence", stab.to_str().unwrap(), "--handles", plan.to_str().unwrap()];
    let o = sfh(&args);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    assert!(stdout(&o).ends_with("result: pass\n"));
    assert_eq!(stdout(&o), stdout(&sfh(&args)));

    let mut bad = args.to_vec();
    bad.push("--wrong-x0");
    let o = sfh(&bad);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("repro:"));
}

#[test]
fn rejections_exit_with_one() {
    assert_eq!(sfh(&["examples", "nope"]).status.code(), Some(1));
    let o = sfh(&["homology", fixture("two_circles.json").to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("not admissible"));
    assert_eq!(sfh(&["validate", "/no/such/file.json"]).status.code(), Some(1));
}

#[test]
fn checked_in_fixtures_match_the_catalog() {
    let names = stdout(&sfh(&["examples"]));
    assert!(names.lines().count() >= 17);
    for n in names.lines() {
        let emitted = stdout(&sfh(&["examples", n]));
        let on_disk = std::fs::read_to_string(fixture(&format!("{n}.json"))).unwrap();
        assert_eq!(emitted, on_disk, "{n}");
        let d = sfh_core::surface::from_json(&on_disk).unwrap();
        assert_eq!(sfh_core::surface::to_json(&d), on_disk, "{n} does not round-trip");
    }
}

#[test]
fn attach_then_glue() {
    let o = sfh(&["--format", "json", "attach", fixture("disk.json").to_str().unwrap(), "--handle", "two"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["table"][0], format!("∅ ↦ {{{}}}", v["x0"].as_str().unwrap()));
    let o = sfh(&["glue", fixture("stab.json").to_str().unwrap(), "--handle", "one"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("Ψ1 = σ1: true"));
    let o = sfh(&["glue", fixture("disk.json").to_str().unwrap(), "--handle", "bypass+"]);
    assert!(stdout(&o).contains("H5 identity over 1 cycles: true"));
}

#[test]
fn bordered_az2() {
    let o = sfh(&["--format", "json", "bordered", fixture("AZ2.json").to_str().unwrap(), "--kind", "aa"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let gens: Vec<&str> = v["generators"].as_array().unwrap().iter().map(|g| g.as_str().unwrap()).collect();
    for z in ["z1", "z2", "z3", "z4", "z5"] {
        assert!(gens.contains(&z));
    }
    assert!(v["violations"].as_array().unwrap().is_empty());
}

#[test]
fn generators_and_validate() {
    let o = sfh(&["generators", fixture("handle2_UW.json").to_str().unwrap()]);
    assert_eq!(stdout(&o), "{U:c,W:w}  class 0\n");
    let o = sfh(&["validate", fixture("stab.json").to_str().unwrap()]);
    assert_eq!(stdout(&o), "valid\nnice\nadmissible\n");
}

use std::path::PathBuf;
use std::process::Command;

use ellbundle_cli::report::Report;
use ellbundle_cli::sweep::Sweep;
use ellbundle_cli::{build, parse_job, sections};
use ellbundle_core::stability::{kernel_dimension, splitting_type};

fn job(name: &str) -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "jobs", name].iter().collect();
    p.to_string_lossy().into_owned()
}

fn run(args: &[&str]) -> (i32, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_ellbundle")).args(args).output().unwrap();
    (out.status.code().unwrap(), String::from_utf8(out.stdout).unwrap())
}

fn write_tmp(name: &str, text: &str) -> String {
    let p = std::env::temp_dir().join(format!("ellbundle-{}-{name}", std::process::id()));
    std::fs::write(&p, text).unwrap();
    p.to_string_lossy().into_owned()
}

fn analyze_json(file: &str) -> (i32, Report) {
    let (code, out) = run(&["analyze", file, "--json"]);
    let rep: Report = serde_json::from_str(&out).unwrap();
    // the machine form round-trips
    assert_eq!(serde_json::from_str::<Report>(&serde_json::to_string(&rep).unwrap()).unwrap(), rep);
    (code, rep)
}

#[test]
fn fully_split_fixture() {
    let (code, rep) = analyze_json(&job("split_rank2.job"));
    assert_eq!(code, 0);
    assert_eq!(rep.mark, "inf");
    assert_eq!(rep.fully_split, Some(true));
    assert_eq!(rep.fully_split_test, "fully_split");
    assert_eq!(rep.splitting_label(), "F_1 at (4,1) + F_1 at (5,0)");
    assert_eq!(rep.spectral.unwrap().degree, 2);
}

#[test]
fn unstable_fixture() {
    let (code, rep) = analyze_json(&job("unstable.job"));
    assert_eq!(code, 2);
    assert_eq!(rep.reason.as_deref(), Some("TopWedgeVanishes"));
    assert!(rep.spectral.is_none());
    let (code, out) = run(&["spectral", &job("unstable.job")]);
    assert_eq!(code, 2);
    assert!(out.contains("TopWedgeVanishes"));
}

#[test]
fn monad_fixture_reports_both_divisors() {
    let (code, rep) = analyze_json(&job("monad.job"));
    assert_eq!(code, 0);
    let m = rep.monad.unwrap();
    assert_eq!(m.s, 1);
    assert_eq!(m.difference.as_deref(), Some("1*inf"));
    assert_eq!(m.shift_holds, Some(true));
    assert!(m.kernel_spectral.is_some() && m.cohomology_spectral.is_some());
    // support over F_49
    assert!(rep.spectral.unwrap().split_field.starts_with("F_7^2"));
}

#[test]
fn f2_fixture_agrees_with_kernel_dimension() {
    let (code, rep) = analyze_json(&job("f2_kernel.job"));
    assert_eq!(code, 0);
    assert_eq!(rep.shape(), "2");
    assert_eq!(rep.fully_split, Some(false));
    assert!(rep.fully_split_test.starts_with("not_fully_split"));
    let p = &rep.places[0];
    assert!(p.kernel_dimension < p.multiplicity as usize);
}

#[test]
fn general_twist_option() {
    let f = job("split_rank2.job");
    let (code, out) = run(&["analyze", &f, "--json", "--twist", "1*inf + 1*(5,0) + 1*(6,1)"]);
    assert_eq!(code, 0);
    let rep: Report = serde_json::from_str(&out).unwrap();
    let t = rep.twist.unwrap();
    assert_eq!(t.dim_g, 2);
    assert_eq!(t.agrees, Some(true));
    // twists that miss the mark are rejected
    let (code, out) = run(&["analyze", &f, "--json", "--twist", "1*(5,0) + 1*(6,1)"]);
    assert_eq!(code, 1);
    assert!(out.contains("\"error\""));
}

#[test]
fn rr_basis_listing() {
    let (code, out) = run(&["rr", &job("split_rank2.job")]);
    assert_eq!(code, 0);
    assert!(out.contains("dim 3"));
    assert_eq!(out.lines().count(), 5);
}

#[test]
fn parse_errors_and_semantic_errors_differ() {
    let bad = write_tmp("bad.job", "curve p=5 a=-1 b=0\nmark inf\nsummand 2*(0 0)\n");
    let (code, out) = run(&["analyze", &bad, "--json"]);
    assert_eq!(code, 1);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["error"]["kind"], "ParseError");
    assert!(v["error"]["message"].as_str().unwrap().contains("line 3, column 14"));

    let text = std::fs::read_to_string(job("monad.job")).unwrap().replace("f 5\n", "f 6\n");
    let broken = write_tmp("broken.job", &text);
    let (code, out) = run(&["analyze", &broken, "--json"]);
    assert_eq!(code, 1);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["error"]["kind"], "InvalidJob");
}

#[test]
fn sweep_row_count() {
    let t = write_tmp("one.job", "curve p=5 a=1 b=1\nmark inf\nsummand 1*(0,1) - 1*inf\ntwist 1*inf\n");
    let (code, out) = run(&["sweep", &t, "--slot", "c=0..4", "--json"]);
    // no slot in the template
    assert_eq!(code, 1);
    assert!(out.contains("Usage"));
    let t = write_tmp("slot.job", "curve p=5 a=$c b=1\nmark inf\nsummand 1*(0,1) - 1*inf\n");
    let (code, out) = run(&["sweep", &t, "--slot", "c=0..4", "--json"]);
    assert_eq!(code, 0);
    let sw: Sweep = serde_json::from_str(&out).unwrap();
    assert!(sw.rows.len() <= 5);
    assert!(sw.rows.iter().enumerate().all(|(i, r)| r.index == i));
    // (0,1) is on the curve only for some a; the rest are skipped
    assert!(sw.summary.skipped > 0 && sw.summary.analyzed > 0);
}

#[test]
fn degenerate_sweep() {
    let t = write_tmp("degenerate.job", "curve p=5 a=1 b=1\nmark inf\nambient 1*inf\ntarget 1*inf\ng $c*x^5\n");
    let (code, out) = run(&["sweep", &t, "--slot", "c=all", "--json"]);
    assert_eq!(code, 0);
    let sw: Sweep = serde_json::from_str(&out).unwrap();
    assert_eq!(sw.summary.rows, 5);
    assert_eq!(sw.summary.skipped, 5);
    assert!(sw.summary.verdicts.is_empty());
}

#[test]
fn rank_two_sweep_finds_both_types() {
    let file = job("sweep_rank2.job");
    let (code, out) = run(&["sweep", &file, "--slot", "c=all", "--json"]);
    assert_eq!(code, 0);
    let sw: Sweep = serde_json::from_str(&out).unwrap();
    assert!(sw.summary.shapes.contains_key("1+1"));
    assert!(sw.summary.shapes.contains_key("2"));
    // confirm each F_2 row with the kernel-dimension oracle
    let template = std::fs::read_to_string(&file).unwrap();
    let mut confirmed = 0;
    for row in sw.rows.iter().filter(|r| r.shape.as_deref() == Some("2")) {
        let values = row.assignment.iter().cloned().collect();
        let job = parse_job(&ellbundle_cli::sweep::substitute(&template, &values)).unwrap();
        let ss = sections(&build(&job).unwrap()).unwrap();
        let rep = splitting_type(&ss).unwrap();
        let rec = rep.record().unwrap();
        assert!(rec.spectral_divisor.all_rational());
        for (t, mult) in rec.spectral_divisor.terms() {
            assert!((kernel_dimension(&ss, t).unwrap().d as i64) < mult);
            confirmed += 1;
        }
    }
    assert!(confirmed > 0);
}

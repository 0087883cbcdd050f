//! The binary's exit-status contract.

use std::io::Write;
use std::process::{Command, Stdio};

fn sullivan(args: &[&str], stdin: Option<&str>) -> (i32, String, String) {
    let mut child = Command::new(env!("CARGO_BIN_EXE_sullivan"))
        .args(args)
        .current_dir(concat!(env!("CARGO_MANIFEST_DIR"), "/../.."))
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    if let Some(text) = stdin {
        child.stdin.take().unwrap().write_all(text.as_bytes()).unwrap();
    }
    drop(child.stdin.take());
    let out = child.wait_with_output().unwrap();
    (
        out.status.code().unwrap(),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

#[test]
fn refusal_exits_one() {
    let (code, out, _) = sullivan(&["classify", "models/non_noetherian.model"], None);
    assert_eq!(code, 1);
    assert!(out.contains("summary: not sci; obstruction at w (dw=v*x)"), "{out}");
}

#[test]
fn duality_exits_zero() {
    let (code, out, _) = sullivan(&["duality", "models/squares_fibration.model", "--max-codegree", "30"], None);
    assert_eq!(code, 0);
    assert!(out.contains("summary: defect 1, r=1, a=-4, delta=t^-2"), "{out}");
}

#[test]
fn unravel_exits_zero() {
    let (code, out, _) = sullivan(&["unravel", "models/triple_product.model"], None);
    assert_eq!(code, 0);
    assert!(out.contains("length bound 5"), "{out}");
}

#[test]
fn input_errors_exit_two() {
    let (code, _, err) = sullivan(&["cohomology", "-"], Some("algebra X\ngen v 2\ngen w 3\nd w = 2*v*\n"));
    assert_eq!(code, 2);
    assert!(err.contains("4:11: expected generator name, found end of line"), "{err}");
    let (code, _, err) = sullivan(&["cohomology", "models/missing.model"], None);
    assert_eq!(code, 2);
    assert!(err.contains("missing.model"), "{err}");
    let (code, _, _) = sullivan(&["frobnicate", "models/two_sphere.model"], None);
    assert_eq!(code, 2);
    let (code, _, _) = sullivan(&["hilbert", "models/two_sphere.model", "--denominator", "0"], None);
    assert_eq!(code, 2);
}

#[test]
fn machine_reports_are_byte_identical_across_runs() {
    let args = ["verify", "models/twisted_triple_product.model", "--format", "machine", "--seed", "11"];
    let (c1, a, _) = sullivan(&args, None);
    let (c2, b, _) = sullivan(&args, None);
    assert_eq!((c1, c2), (0, 0));
    assert_eq!(a, b);
    let report = sullivan_cli::parse_machine(&a).unwrap();
    assert_eq!(report.results["self_tests"]["seed"], 11);
}

use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use har_core::circuit::bool_signature;
use har_core::format::read_har;
use har_core::{iso_eq, Har, Signature};

fn data(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("tests/data")
        .join(name)
}

fn har(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_har"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn ok(args: &[&str]) -> String {
    let out = har(args);
    assert!(
        out.status.success(),
        "har {args:?} failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

fn path(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn example_sig() -> Signature {
    Signature::parse(&fs::read_to_string(data("example.sig")).unwrap()).unwrap()
}

#[test]
fn eval_identity() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("id2.har");
    ok(&[
        "eval",
        "--expr",
        "id 2",
        "--sig",
        path(&data("bool.sig")),
        "-o",
        path(&out),
    ]);
    let h = read_har(&fs::read_to_string(&out).unwrap(), &bool_signature()).unwrap();
    assert_eq!(h, Har::identity(2));
}

#[test]
fn eval_reads_term_file_and_records_signature() {
    let dir = tempfile::tempdir().unwrap();
    let term = dir.path().join("t.term");
    fs::write(&term, "(and * id 1) ; (not * id 1)\n").unwrap();
    let sig = dir.path().join("gates.sig");
    fs::copy(data("bool.sig"), &sig).unwrap();
    let text = ok(&["eval", path(&term), "--sig", path(&sig)]);
    let h = read_har(&text, &bool_signature()).unwrap();
    assert_eq!((h.dom(), h.cod(), h.box_count()), (3, 2, 2));

    let out = dir.path().join("t.har");
    ok(&["eval", path(&term), "--sig", path(&sig), "-o", path(&out)]);
    assert!(fs::read_to_string(&out)
        .unwrap()
        .contains("\nsig gates.sig\n"));
    // the recorded reference is enough to validate the output
    ok(&["validate", path(&out)]);
}

#[test]
fn compose_nots() {
    let not = data("not.har");
    let text = ok(&["compose", path(&not), path(&not)]);
    let h = read_har(&text, &bool_signature()).unwrap();
    assert_eq!(h.size(), 5);
    h.validate(&bool_signature()).unwrap();
}

#[test]
fn tensor_nots() {
    let not = data("not.har");
    let h = read_har(&ok(&["tensor", path(&not), path(&not)]), &bool_signature()).unwrap();
    assert_eq!((h.dom(), h.cod(), h.size()), (2, 2, 6));
}

#[test]
fn compose_rejects_boundary_mismatch() {
    let out = har(&[
        "compose",
        path(&data("not.har")),
        path(&data("golden.har")),
        "--sig",
        path(&data("bool.sig")),
    ]);
    assert!(!out.status.success());
}

#[test]
fn validate_golden() {
    let text = ok(&["validate", path(&data("golden.har"))]);
    assert!(text.contains("valid, 2 -> 2, 9 nodes"));
}

#[test]
fn validate_names_the_broken_clause() {
    let dir = tempfile::tempdir().unwrap();
    fs::copy(data("example.sig"), dir.path().join("example.sig")).unwrap();
    let golden = fs::read_to_string(data("golden.har")).unwrap();
    // gamma's second input now carries label 3, leaving a gap after 1
    let corrupted = golden.replace("\n6 4 2\n", "\n6 4 3\n");
    assert_ne!(corrupted, golden);
    let file = dir.path().join("bad.har");
    fs::write(&file, corrupted).unwrap();
    let out = har(&["validate", path(&file)]);
    assert!(!out.status.success());
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("box incoming labels not contiguous"), "{err}");
    assert!(err.contains("BoxIncomingLabels"), "{err}");
}

#[test]
fn validate_reports_format_errors() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("junk.har");
    fs::write(&file, "har-v2\n").unwrap();
    let out = har(&["validate", path(&file), "--sig", path(&data("bool.sig"))]);
    assert!(!out.status.success());
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 1"));
}

#[test]
fn missing_signature_is_reported() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("golden.har");
    fs::copy(data("golden.har"), &file).unwrap();
    let out = har(&["validate", path(&file)]);
    assert!(!out.status.success());
    assert!(String::from_utf8_lossy(&out.stderr).contains("example.sig"));
}

#[test]
fn canon_is_equivalent_and_idempotent() {
    let dir = tempfile::tempdir().unwrap();
    let once = dir.path().join("once.har");
    ok(&[
        "canon",
        path(&data("golden.har")),
        "--sig",
        path(&data("example.sig")),
        "-o",
        path(&once),
    ]);
    let twice = ok(&["canon", path(&once)]);
    let body = |text: &str| {
        text.lines()
            .filter(|l| !l.starts_with("sig "))
            .collect::<Vec<_>>()
            .join("\n")
    };
    assert_eq!(body(&fs::read_to_string(&once).unwrap()), body(&twice));
    let sig = example_sig();
    let golden = read_har(&fs::read_to_string(data("golden.har")).unwrap(), &sig).unwrap();
    assert!(iso_eq(&golden, &read_har(&twice, &sig).unwrap()));
}

#[test]
fn hypergraph_conversions_roundtrip() {
    let dir = tempfile::tempdir().unwrap();
    let hyp = dir.path().join("g.hyp");
    ok(&[
        "to-hyp",
        path(&data("golden.har")),
        "--sig",
        path(&data("example.sig")),
        "-o",
        path(&hyp),
    ]);
    let back = ok(&["from-hyp", path(&hyp)]);
    let sig = example_sig();
    let golden = read_har(&fs::read_to_string(data("golden.har")).unwrap(), &sig).unwrap();
    assert!(iso_eq(&golden, &read_har(&back, &sig).unwrap()));

    let from_fixture = ok(&["from-hyp", path(&data("golden.hyp"))]);
    assert!(iso_eq(&golden, &read_har(&from_fixture, &sig).unwrap()));
}

#[test]
fn decompose_evaluates_back() {
    let dir = tempfile::tempdir().unwrap();
    let term = dir.path().join("golden.term");
    ok(&["decompose", path(&data("golden.har")), "-o", path(&term)]);
    let text = ok(&["eval", path(&term), "--sig", path(&data("example.sig"))]);
    let sig = example_sig();
    let golden = read_har(&fs::read_to_string(data("golden.har")).unwrap(), &sig).unwrap();
    assert!(iso_eq(&golden, &read_har(&text, &sig).unwrap()));
}

#[test]
fn bench_writes_csv_and_fits() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("tensor.csv");
    let script = dir.path().join("tensor.gp");
    ok(&[
        "bench",
        "tensor",
        "--max-k",
        "3",
        "--seed",
        "9",
        "-o",
        path(&csv),
        "--gnuplot",
        path(&script),
    ]);
    let text = fs::read_to_string(&csv).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "har-v1 bench family=tensor seed=9");
    assert_eq!(lines[1], "k,K,reps,mean_ns,min_ns,max_ns,omitted");
    assert_eq!(lines.len(), 5);
    let sizes: Vec<&str> = lines[2..]
        .iter()
        .map(|l| l.split(',').nth(1).unwrap())
        .collect();
    assert_eq!(sizes, ["8", "16", "32"]);
    assert!(lines[2..].iter().all(|l| l.split(',').nth(2) == Some("10")));
    assert!(fs::read_to_string(&script).unwrap().contains(path(&csv)));

    let fit = ok(&["slope", path(&csv)]);
    assert!(
        fit.starts_with("slope ") && fit.contains("points 3"),
        "{fit}"
    );
}

#[test]
fn slope_of_synthetic_quadratic() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("q.csv");
    let mut text =
        String::from("har-v1 bench family=tensor seed=0\nk,K,reps,mean_ns,min_ns,max_ns,omitted\n");
    for k in 1..=8u32 {
        let size = 1u64 << (k + 2);
        let t = 3 * size * size;
        text.push_str(&format!("{k},{size},10,{t},{t},{t},0\n"));
    }
    fs::write(&csv, text).unwrap();
    let fit = ok(&["slope", path(&csv), "--k-min", "3"]);
    let slope: f64 = fit.split_whitespace().nth(1).unwrap().parse().unwrap();
    assert!((slope - 2.0).abs() < 0.01, "{fit}");
}

#[test]
fn unknown_family_fails() {
    assert!(!har(&["bench", "or"]).status.success());
}

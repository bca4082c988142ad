//! Acceptance suite for the process boundary: the Catalan identity through
//! the binary, and the determinism / runtime contract.

use std::process::{Command, Output};
use std::time::Instant;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_fuss-catalan"))
        .args(args)
        .output()
        .expect("binary runs")
}

/// Catalan numbers by the convolution recurrence, exact in u64.
fn catalan_oracle(n: usize) -> Vec<u64> {
    let mut c: Vec<u64> = vec![1];
    for k in 0..n {
        c.push((0..=k).map(|i| c[i] * c[k - i]).sum());
    }
    c
}

#[test]
fn criterion_01_catalan_sequence_via_cli() {
    let out = run(&["numbers", "--p", "2", "--r", "1", "--n", "20"]);
    assert!(out.status.success());
    let payload = String::from_utf8(out.stdout).unwrap();
    let marker = "\"values\":[";
    let start = payload.find(marker).unwrap() + marker.len();
    let end = payload[start..].find(']').unwrap() + start;
    let values: Vec<f64> = payload[start..end]
        .split(',')
        .map(|t| t.parse().unwrap())
        .collect();
    let expected = catalan_oracle(20);
    assert_eq!(values.len(), 21);
    for (k, (&v, &c)) in values.iter().zip(expected.iter()).enumerate() {
        assert_eq!(v, c as f64, "A_{k}(2,1) from the CLI");
        assert_eq!(v.fract(), 0.0, "integer output at k = {k}");
    }
    println!("criterion 01 (CLI Catalan identity, 21 exact integers): PASS");
}

#[test]
fn criterion_11_determinism_and_verify_runtime() {
    // byte-identical repeated invocations across the command surface
    for args in [
        vec!["numbers", "--p", "3.3", "--r", "1.7", "--n", "15"],
        vec!["cumulants", "--p", "2", "--r", "2", "--n", "10"],
        vec![
            "density", "--p", "2", "--r", "1.7", "--grid", "500", "--format", "csv",
        ],
        vec!["density", "--p", "3", "--r", "2", "--x", "1.5"],
        vec!["classify", "--p", "2.5", "--r", "1.1"],
        vec!["modes", "--p", "2", "--r", "1.9"],
        vec!["transition", "--p", "2", "--method", "a-root"],
        vec!["verify", "--suite", "moment-cumulant"],
    ] {
        let a = run(&args);
        let b = run(&args);
        assert_eq!(a.stdout, b.stdout, "output differs across reruns: {args:?}");
        assert_eq!(a.stderr, b.stderr);
        assert_eq!(a.status.code(), b.status.code());
    }

    // the full battery exits 0 well inside the time budget
    let start = Instant::now();
    let out = run(&["verify", "--suite", "all"]);
    let elapsed = start.elapsed();
    assert!(out.status.success(), "verify --suite all must exit 0");
    assert!(
        elapsed.as_secs() < 60,
        "verify --suite all took {elapsed:?}"
    );
    let payload = String::from_utf8(out.stdout).unwrap();
    assert!(payload.contains("\"failed\":0"));
    println!(
        "criterion 11 (byte-identical reruns; verify all in {:.2?} < 60 s): PASS",
        elapsed
    );
}

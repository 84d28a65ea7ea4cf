//! End-to-end tests against the compiled binary: output contracts, exit
//! codes, exact/float routing, and determinism of repeated runs.

use std::process::{Command, Output};

fn trijac(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_trijac"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout_of(args: &[&str]) -> String {
    let out = trijac(args);
    assert!(
        out.status.success(),
        "command {args:?} failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).expect("utf8 output")
}

#[test]
fn constant_member_evaluates_to_one() {
    let got = stdout_of(&["eval", "--family", "e", "--n", "0", "--k", "0", "--at", "0.2,0.3"]);
    assert_eq!(got, "1\n");
}

#[test]
fn rational_inputs_produce_rational_output() {
    let got = stdout_of(&[
        "eval", "--a", "1/2", "--b", "1/3", "--c", "3/4", "--family", "pi", "--n", "2", "--k",
        "1", "--at", "1/5,2/7",
    ]);
    let v = got.trim();
    assert!(
        v.contains('/') || v.parse::<i64>().is_ok(),
        "expected a p/q literal, got {v:?}"
    );
    assert!(!v.contains('.'), "rational output must not be a decimal: {v:?}");
}

#[test]
fn decimal_inputs_produce_float_output() {
    let got = stdout_of(&[
        "eval", "--a", "0.5", "--b", "0.3", "--c", "1.7", "--family", "e", "--n", "2", "--k",
        "1", "--at", "0.2,0.3",
    ]);
    let v = got.trim();
    v.parse::<f64>().unwrap_or_else(|_| panic!("expected a float, got {v:?}"));
}

#[test]
fn reflected_family_flips_sign_with_member_parity() {
    let base: Vec<String> = ["--a", "1/2", "--b", "1/3", "--c", "3/4", "--at", "1/5,2/7"]
        .iter()
        .map(|s| s.to_string())
        .collect();
    for (n, k) in [(2u32, 1u32), (3, 2), (4, 4)] {
        let run = |fam: &str| {
            let mut args = vec![
                "eval".to_string(),
                "--family".into(),
                fam.into(),
                "--n".into(),
                n.to_string(),
                "--k".into(),
                k.to_string(),
            ];
            args.extend(base.clone());
            let refs: Vec<&str> = args.iter().map(String::as_str).collect();
            stdout_of(&refs).trim().to_string()
        };
        let e = run("e");
        let tau = run("tau");
        if k % 2 == 0 {
            assert_eq!(tau, e, "even k must leave the value unchanged");
        } else {
            let expected = e.strip_prefix('-').map_or_else(|| format!("-{e}"), String::from);
            assert_eq!(tau, expected, "odd k must flip the sign");
        }
    }
}

#[test]
fn swap_family_matches_base_family_at_reflected_point() {
    // At (x, y) = (1/5, 2/7) the reflected abscissa is 1 - x - y = 18/35.
    let pi = stdout_of(&[
        "eval", "--a", "1", "--b", "2", "--c", "3", "--family", "pi", "--n", "3", "--k", "2",
        "--at", "1/5,2/7",
    ]);
    let e = stdout_of(&[
        "eval", "--a", "3", "--b", "2", "--c", "1", "--family", "e", "--n", "3", "--k", "2",
        "--at", "18/35,2/7",
    ]);
    assert_eq!(pi, e);
}

#[test]
fn degree_zero_connection_is_the_identity() {
    let got = stdout_of(&["connection", "--n", "0", "--a", "0.5", "--b", "0.3", "--c", "1.7"]);
    let mut lines = got.lines();
    assert_eq!(lines.next(), Some("l/m,0"));
    let row = lines.next().expect("one data row");
    let (label, value) = row.split_once(',').expect("label,value");
    assert_eq!(label, "0");
    assert_eq!(value.parse::<f64>().expect("float entry"), 1.0);
    assert_eq!(lines.next(), None);
}

fn parse_matrix(csv: &str, n: usize) -> Vec<Vec<f64>> {
    let mut lines = csv.lines();
    let header = lines.next().expect("header row");
    let cols: Vec<&str> = header.split(',').collect();
    assert_eq!(cols[0], "l/m");
    let labels: Vec<String> = (0..=n).map(|m| m.to_string()).collect();
    assert_eq!(cols[1..], labels, "header must list the source indices 0..=n");
    let rows: Vec<Vec<f64>> = lines
        .map(|line| {
            let cells: Vec<&str> = line.split(',').collect();
            cells[1..]
                .iter()
                .map(|c| c.parse::<f64>().expect("float entry"))
                .collect()
        })
        .collect();
    assert_eq!(rows.len(), n + 1, "one row per target index");
    rows
}

#[test]
fn connection_csv_rows_are_orthonormal() {
    let n = 5usize;
    for fam in ["pi", "sigma"] {
        let csv = stdout_of(&[
            "connection", "--n", "5", "--family", fam, "--a", "0.5", "--b", "0.3", "--c",
            "1.7",
        ]);
        let m = parse_matrix(&csv, n);
        for i in 0..=n {
            for j in 0..=n {
                let dot: f64 = (0..=n).map(|l| m[l][i] * m[l][j]).sum();
                let want = f64::from(u8::from(i == j));
                assert!(
                    (dot - want).abs() < 1e-11,
                    "{fam}: column product ({i},{j}) = {dot}"
                );
            }
        }
    }
}

#[test]
fn verify_reports_are_byte_identical_across_runs() {
    let args = ["verify", "racah", "--N", "4"];
    let first = stdout_of(&args);
    let second = stdout_of(&args);
    assert_eq!(first, second);
    let report: serde_json::Value = serde_json::from_str(&first).expect("valid json");
    let checks = report["checks"].as_array().expect("checks array");
    assert!(!checks.is_empty());
    for c in checks {
        assert_eq!(c["passed"], serde_json::Value::Bool(true), "check {}", c["id"]);
        for key in ["id", "paper_ref", "passed", "residual", "detail"] {
            assert!(c.get(key).is_some(), "check missing field {key}");
        }
    }
    assert!(report.get("version").is_some());
    assert!(report.get("config").is_some());
}

#[test]
fn passing_suite_exits_zero() {
    let out = trijac(&["verify", "subalgebras", "--seed", "3"]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn usage_errors_exit_two() {
    for args in [
        vec!["eval", "--family", "nope", "--at", "0,0"],
        vec!["eval", "--n", "1", "--k", "2", "--at", "0,0"],
        vec!["eval", "--at", "0.2"],
        vec!["table", "--at", "0,0", "--format", "yaml"],
        vec!["frobnicate"],
    ] {
        let out = trijac(&args);
        assert_eq!(out.status.code(), Some(2), "args {args:?}");
    }
}

#[test]
fn table_covers_the_full_degree_window() {
    let got = stdout_of(&["table", "--nmax", "3", "--at", "1/5,2/7", "--format", "csv"]);
    let mut lines = got.lines();
    assert_eq!(lines.next(), Some("n,k,value"));
    let pairs: Vec<(u32, u32)> = lines
        .map(|l| {
            let mut f = l.split(',');
            let n = f.next().unwrap().parse().unwrap();
            let k = f.next().unwrap().parse().unwrap();
            (n, k)
        })
        .collect();
    let expected: Vec<(u32, u32)> =
        (0..=3).flat_map(|n| (0..=n).map(move |k| (n, k))).collect();
    assert_eq!(pairs, expected);
}

#[test]
fn quadrature_weights_sum_to_the_weight_mass() {
    // With zero exponents the weight is 1, so the masses add to the
    // triangle's area 1/2.
    let got = stdout_of(&["quadrature", "--n", "6", "--format", "csv"]);
    let mut total = 0.0;
    for line in got.lines().skip(1) {
        let w: f64 = line.split(',').nth(2).expect("w column").parse().expect("float");
        total += w;
    }
    assert!((total - 0.5).abs() < 1e-12, "weights sum to {total}");
}

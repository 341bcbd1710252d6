use std::process::{Command, Output};

use fejer_schur::chaos::simulate;
use fejer_schur::rootfind::zero_set;
use fejer_schur::schur::margins_geometric;
use fejer_schur::trigpoly::optimal_coeffs;
use fejer_schur::{
    CoefficientVector, MapSpec, SearchReport, SimulationTrace, StabilityMargins, ZeroRecord,
};
use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_fejer-schur"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json(args: &[&str]) -> Value {
    let out = run(args);
    assert!(
        out.status.success(),
        "{args:?}: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).unwrap()
}

fn code(args: &[&str]) -> i32 {
    run(args).status.code().unwrap()
}

fn f(v: &Value) -> f64 {
    v.as_f64().unwrap()
}

#[test]
fn optimal_examples() {
    let v = json(&["optimal", "--n", "2", "--format", "json"]);
    assert_eq!(v["command"], "optimal");
    let r = &v["results"];
    let a: Vec<f64> = serde_json::from_value(r["coeffs"].clone()).unwrap();
    assert!((a[0] - 2.0 / 3.0).abs() < 1e-15 && (a[1] - 1.0 / 3.0).abs() < 1e-15);
    assert!((f(&r["theorem_value"]) + 1.0 / 3.0).abs() < 1e-15);
    assert!((f(&r["phi_max"]) - 4.0).abs() < 1e-12);

    let v = json(&["optimal", "--n", "1"]);
    let r = &v["results"];
    assert!((f(&r["coeffs"][0]) - 1.0).abs() < 1e-15);
    assert!((f(&r["theorem_value"]) + 1.0).abs() < 1e-15);
    assert!((f(&r["phi_max"]) - 2.0).abs() < 1e-12);

    assert_eq!(code(&["optimal", "--n", "0"]), 2);
    assert_eq!(code(&["optimal", "--n", "-3"]), 2);
}

#[test]
fn rho_examples() {
    let v = json(&["rho", "--coeffs", "0,0,1"]);
    let r = &v["results"];
    assert!((f(&r["rho"]) + 1.0).abs() < 1e-12);
    let zeros: Vec<ZeroRecord> = serde_json::from_value(r["zeros"].clone()).unwrap();
    let ts: Vec<f64> = zeros.iter().map(|z| z.t).collect();
    let expected = [
        0.0,
        std::f64::consts::FRAC_PI_3,
        2.0 * std::f64::consts::FRAC_PI_3,
        std::f64::consts::PI,
    ];
    assert_eq!(ts.len(), 4);
    for (t, e) in ts.iter().zip(expected) {
        assert!((t - e).abs() < 1e-10);
    }

    let v = json(&["rho", "--coeffs", "0,0,1", "--degrees"]);
    assert_eq!(v["results"]["angle_unit"], "degrees");
    assert!((f(&v["results"]["zeros"][1]["t"]) - 60.0).abs() < 1e-8);

    let v = json(&["rho", "--coeffs", "1"]);
    assert!((f(&v["results"]["rho"]) + 1.0).abs() < 1e-15);

    let v = json(&["rho", "--coeffs", "0,0,1", "--which", "rho1"]);
    assert!(v["results"].get("rho").is_none());
    assert!(v["results"]["rho1"].is_number());

    assert_eq!(code(&["rho", "--coeffs", "0.5,0.4"]), 2);
    assert_eq!(code(&["rho", "--coeffs", "0.5,abc"]), 2);
    assert_eq!(code(&["rho"]), 2);
}

#[test]
fn coefficients_from_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("a.txt");
    std::fs::write(
        &path,
        "# optimal, n = 2\n0.6666666666666666\n\n0.3333333333333334\n",
    )
    .unwrap();
    let p = path.to_str().unwrap();
    let from_file = json(&["margins", "--coeffs-file", p]);
    let inline = json(&[
        "margins",
        "--coeffs",
        "0.6666666666666666,0.3333333333333334",
    ]);
    assert_eq!(from_file["results"], inline["results"]);
    assert_eq!(code(&["margins", "--coeffs-file", p, "--coeffs", "1"]), 2);
    assert_eq!(
        code(&[
            "margins",
            "--coeffs-file",
            dir.path().join("missing").to_str().unwrap()
        ]),
        2
    );
}

#[test]
fn margins_examples() {
    let v = json(&[
        "margins",
        "--coeffs",
        "0.6666666667,0.3333333333",
        "--method",
        "both",
    ]);
    let r = &v["results"];
    let g: StabilityMargins = serde_json::from_value(r["geometric"].clone()).unwrap();
    assert!((g.k1 - 1.0).abs() < 1e-6 && (g.k2 - 3.0).abs() < 1e-6);
    assert!(f(&r["discrepancy"]) < 1e-6);

    let v = json(&["margins", "--coeffs", "1"]);
    let g = &v["results"]["geometric"];
    assert!((f(&g["k1"]) - 1.0).abs() < 1e-12 && (f(&g["k2"]) - 1.0).abs() < 1e-12);

    let v = json(&[
        "margins", "--coeffs", "0,1", "--method", "both", "--tol", "1e-9",
    ]);
    assert!(f(&v["results"]["discrepancy"]) < 1e-6);

    assert_eq!(
        code(&[
            "margins",
            "--coeffs",
            "1",
            "--method",
            "bisection",
            "--tol",
            "0.5"
        ]),
        2
    );
}

#[test]
fn verify_examples() {
    let v = json(&[
        "verify", "--n", "2", "--grid", "2000", "--rounds", "3", "--seed", "7",
    ]);
    let report: SearchReport = serde_json::from_value(v["results"]["report"].clone()).unwrap();
    assert!(report.gap.abs() < 1e-4);
    assert_eq!(v["results"]["accepted"], true);

    let v = json(&["verify", "--n", "1"]);
    let report: SearchReport = serde_json::from_value(v["results"]["report"].clone()).unwrap();
    assert!(report.gap.abs() <= 1e-15);

    assert_eq!(code(&["verify", "--n", "6"]), 2);
    assert_eq!(code(&["verify", "--n", "0"]), 2);
    assert_eq!(code(&["verify", "--n", "2", "--workers", "0"]), 2);
    // an impossible slack with a coarse search is reported as non-convergence
    assert_eq!(
        code(&["verify", "--n", "3", "--grid", "3", "--rounds", "0", "--slack", "0"]),
        4
    );
}

#[test]
fn verify_is_independent_of_worker_count() {
    let one = json(&["verify", "--n", "3", "--grid", "40", "--workers", "1"]);
    let four = json(&["verify", "--n", "3", "--grid", "40", "--workers", "4"]);
    assert_eq!(one["results"], four["results"]);
}

#[test]
fn simulate_examples() {
    let v = json(&[
        "simulate", "--map", "logistic", "--r", "3.8", "--n", "2", "--steps", "500",
    ]);
    let trace: SimulationTrace = serde_json::from_value(v["results"]["trace"].clone()).unwrap();
    assert!(trace.converged && trace.final_error < 1e-9);
    assert!((trace.fixed_point - (1.0 - 1.0 / 3.8)).abs() < 1e-15);

    let v = json(&[
        "simulate", "--map", "logistic", "--r", "3.8", "--n", "1", "--steps", "500",
    ]);
    assert_eq!(v["results"]["trace"]["converged"], false);

    let v = json(&[
        "simulate", "--map", "logistic", "--r", "2.5", "--n", "1", "--steps", "200",
    ]);
    assert_eq!(v["results"]["trace"]["converged"], true);

    let v = json(&[
        "simulate",
        "--map",
        "poly",
        "--poly",
        "0,3.8,-3.8",
        "--guess",
        "0.7",
        "--n",
        "2",
    ]);
    assert_eq!(v["results"]["trace"]["converged"], true);

    assert_eq!(
        code(&["simulate", "--map", "logistic", "--r", "45", "--n", "9", "--steps", "2000"]),
        4
    );
    assert_eq!(code(&["simulate", "--map", "logistic", "--n", "2"]), 2);
    assert_eq!(code(&["simulate", "--map", "logistic", "--r", "3.8"]), 2);
    assert_eq!(
        code(&["simulate", "--map", "logistic", "--r", "3.8", "--n", "3", "--steps", "2"]),
        2
    );
}

#[test]
fn simulate_trace_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("trace.csv");
    let p = path.to_str().unwrap();
    json(&[
        "simulate",
        "--map",
        "logistic",
        "--r",
        "3.8",
        "--n",
        "2",
        "--steps",
        "50",
        "--emit-trace",
        p,
    ]);
    let text = std::fs::read_to_string(&path).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("step,x,error"));
    let rows: Vec<Vec<f64>> = lines
        .map(|l| l.split(',').map(|x| x.parse().unwrap()).collect())
        .collect();
    assert_eq!(rows.len(), 52);
    assert_eq!(rows[0][0], -1.0);
    assert_eq!(rows[51][0], 50.0);
    assert_eq!(rows[0][1], 0.7);
}

#[test]
fn table_covers_twenty_degrees() {
    let v = json(&["table"]);
    let rows = v["results"].as_array().unwrap();
    assert_eq!(rows.len(), 20);
    for (i, row) in rows.iter().enumerate() {
        let n = i + 1;
        assert_eq!(row["n"], n);
        let h = std::f64::consts::PI / (2.0 * (n as f64 + 1.0));
        assert!((f(&row["k2"]) - 1.0 / h.tan().powi(2)).abs() < 1e-9 * f(&row["k2"]));
        assert!((f(&row["theorem_value"]) + h.tan().powi(2)).abs() < 1e-15);
    }
    let csv = String::from_utf8(run(&["table", "--format", "csv"]).stdout).unwrap();
    assert_eq!(csv.lines().count(), 21);
}

/// JSON results re-parse into the library types and equal a direct computation.
#[test]
fn json_round_trips_to_library_values() {
    let v = json(&["rho", "--coeffs", "0.2,0.3,0.1,0.4"]);
    let a = CoefficientVector::new(vec![0.2, 0.3, 0.1, 0.4]).unwrap();
    let zeros: Vec<ZeroRecord> = serde_json::from_value(v["results"]["zeros"].clone()).unwrap();
    assert_eq!(zeros, zero_set(&a).unwrap().zeros);

    let v = json(&["margins", "--coeffs", "0.2,0.3,0.1,0.4"]);
    let m: StabilityMargins = serde_json::from_value(v["results"]["geometric"].clone()).unwrap();
    assert_eq!(m, margins_geometric(&a).unwrap());

    let v = json(&[
        "simulate", "--map", "cubic", "--r", "2.2", "--n", "3", "--x0", "0.5", "--steps", "300",
    ]);
    let trace: SimulationTrace = serde_json::from_value(v["results"]["trace"].clone()).unwrap();
    let direct = simulate(
        &MapSpec::cubic(2.2).unwrap(),
        &optimal_coeffs(3).unwrap(),
        &[0.5; 3],
        300,
    )
    .unwrap();
    assert_eq!(trace, direct);

    for args in [
        &["optimal", "--n", "7"][..],
        &["table"][..],
        &["verify", "--n", "2", "--grid", "50"][..],
    ] {
        let text = String::from_utf8(run(args).stdout).unwrap();
        let value: Value = serde_json::from_str(&text).unwrap();
        let again: Value = serde_json::from_str(&serde_json::to_string(&value).unwrap()).unwrap();
        assert_eq!(again, value);
    }
}

#[test]
fn csv_numbers_round_trip() {
    let csv = String::from_utf8(run(&["optimal", "--n", "5", "--format", "csv"]).stdout).unwrap();
    let a = optimal_coeffs(5).unwrap();
    let parsed: Vec<f64> = csv
        .lines()
        .skip(1)
        .map(|l| l.split(',').nth(2).unwrap().parse().unwrap())
        .collect();
    assert_eq!(parsed, a.as_slice());
}

#[test]
fn reruns_are_byte_identical() {
    for args in [
        &["optimal", "--n", "4"][..],
        &["rho", "--coeffs", "0.1,0.2,0.3,0.4", "--format", "csv"][..],
        &["margins", "--coeffs", "0.1,0.2,0.3,0.4", "--method", "both"][..],
        &["verify", "--n", "3", "--grid", "30", "--seed", "9"][..],
        &["simulate", "--map", "logistic", "--r", "3.8", "--n", "2"][..],
        &["table", "--format", "csv"][..],
    ] {
        assert_eq!(run(args).stdout, run(args).stdout, "{args:?}");
    }
}

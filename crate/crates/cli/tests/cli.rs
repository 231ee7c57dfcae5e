use std::process::{Command, Output};

use serde_json::Value;

fn raysched(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_raysched"))
        .args(args)
        .output()
        .expect("binary runs")
}

/// Rows of a successful CSV run, keyed by header.
fn csv_rows(args: &[&str]) -> Vec<Vec<(String, String)>> {
    let out = raysched(args);
    assert!(
        out.status.success(),
        "{args:?}: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    let text = String::from_utf8(out.stdout).unwrap();
    let mut reader = csv::Reader::from_reader(text.as_bytes());
    let header: Vec<String> = reader.headers().unwrap().iter().map(String::from).collect();
    reader
        .records()
        .map(|r| {
            header
                .iter()
                .cloned()
                .zip(r.unwrap().iter().map(String::from))
                .collect()
        })
        .collect()
}

fn field(row: &[(String, String)], key: &str) -> String {
    row.iter()
        .find(|(k, _)| k == key)
        .unwrap_or_else(|| panic!("missing column {key}"))
        .1
        .clone()
}

fn num(row: &[(String, String)], key: &str) -> f64 {
    field(row, key).parse().unwrap()
}

#[test]
fn search_eval_examples() {
    let exp = csv_rows(&[
        "search-eval",
        "--strategy",
        "exponential",
        "--m",
        "2",
        "--b",
        "2",
    ]);
    assert_eq!(num(&exp[0], "limit_sup"), 9.0);
    let nm = csv_rows(&[
        "search-eval",
        "--strategy",
        "nm",
        "--m",
        "2",
        "--b",
        "2",
        "--r",
        "1",
    ]);
    for key in ["finite_sup", "limit_sup", "asymptotic"] {
        assert_eq!(field(&exp[0], key), field(&nm[0], key));
    }
    assert_eq!(
        raysched(&["search-eval", "--m", "1"]).status.code(),
        Some(2)
    );
    let clash = raysched(&[
        "search-eval",
        "--strategy",
        "geometric",
        "--cost-model",
        "standard",
    ]);
    assert_eq!(clash.status.code(), Some(2));
}

#[test]
fn sched_eval_examples() {
    let rows = csv_rows(&[
        "sched-eval",
        "--strategy",
        "exponential",
        "--n",
        "1",
        "--b",
        "2",
    ]);
    assert_eq!(num(&rows[0], "limit_sup"), 4.0);
    let rows = csv_rows(&[
        "sched-eval",
        "--strategy",
        "pseudo",
        "--n",
        "1",
        "--r",
        "2",
        "--b",
        "2",
        "--semantics",
        "r-completed",
    ]);
    assert_eq!(num(&rows[0], "limit_sup"), 8.0);
    let rows = csv_rows(&[
        "sched-eval",
        "--strategy",
        "geometric-rr",
        "--n",
        "2",
        "--b",
        "2",
        "--semantics",
        "aggregate",
    ]);
    assert_eq!(num(&rows[0], "finite_sup"), 6.0);
    assert_eq!(num(&rows[0], "asymptotic"), 4.0);
    assert_eq!(
        raysched(&["sched-eval", "--b", "0.5"]).status.code(),
        Some(2)
    );
}

#[test]
fn stochastic_and_optimization_examples() {
    let rows = csv_rows(&[
        "rand-sched",
        "--n",
        "1",
        "--b",
        "2",
        "--trials",
        "100000",
        "--seed",
        "7",
    ]);
    let beta = 4.0 * 2f64.ln();
    assert!((num(&rows[0], "sup") - beta).abs() <= 0.02 * beta);
    assert_eq!(field(&rows[0], "running_index_violations"), "0");

    let rows = csv_rows(&["opt-base", "--target", "beta-r", "--n", "2"]);
    assert!((num(&rows[0], "value") - 3.633).abs() <= 1e-3);

    let rows = csv_rows(&[
        "tradeoff",
        "--model",
        "preemptive",
        "--n",
        "2",
        "--b",
        "2",
        "--t",
        "5",
    ]);
    assert_eq!(field(&rows[0], "count"), "4");
    assert!((num(&rows[0], "bound") - 5.615).abs() < 1e-3);
    assert_eq!(field(&rows[0], "within"), "true");

    let rows = csv_rows(&["prob-search", "--m", "2", "--p", "0.5", "--trials", "20000"]);
    let (series, mc, se) = (
        num(&rows[0], "series_cost"),
        num(&rows[0], "mc_mean"),
        num(&rows[0], "mc_stderr"),
    );
    assert!((series - mc).abs() <= 3.0 * se);
    assert_eq!(
        raysched(&["prob-search", "--p", "1.5"]).status.code(),
        Some(2)
    );
}

#[test]
fn figure1_curve_rows() {
    let rows = csv_rows(&["curve-fig1", "--n-max", "3"]);
    assert_eq!(rows.len(), 3);
    assert!((num(&rows[1], "ratio") - 0.538).abs() < 1e-3);
    let rows = csv_rows(&["curve-fig1", "--n-max", "1"]);
    assert_eq!(rows.len(), 1);
    assert!((num(&rows[0], "ratio") - 0.614).abs() < 1e-3);
    assert_eq!(
        raysched(&["curve-fig1", "--n-max", "0"]).status.code(),
        Some(2)
    );
}

#[test]
fn claims_verdicts_and_exit_codes() {
    let rows = csv_rows(&["claims", "--subset", "eq4"]);
    assert_eq!(rows.len(), 8);
    assert!(rows.iter().all(|r| field(r, "verdict") == "holds"));

    let rows = csv_rows(&["claims", "--subset", "prob-upper", "--seed", "7"]);
    assert!(rows
        .iter()
        .all(|r| field(r, "verdict") == "holds" && field(r, "relation") == "at_most"));

    let strict = raysched(&["claims", "--subset", "informational", "--strict"]);
    assert_eq!(strict.status.code(), Some(0));
    let rows = csv_rows(&["claims", "--subset", "informational"]);
    assert!(!rows.is_empty());
    assert!(rows.iter().all(|r| field(r, "verdict") == "recorded"));

    // the printed 2e bound fails for every grid point
    let strict = raysched(&["claims", "--subset", "redundancy", "--strict"]);
    assert_eq!(strict.status.code(), Some(1));
    assert!(!strict.stdout.is_empty());
    assert_eq!(
        raysched(&["claims", "--subset", "redundancy"])
            .status
            .code(),
        Some(0)
    );

    assert_eq!(
        raysched(&["claims", "--subset", "bogus"]).status.code(),
        Some(2)
    );
}

#[test]
fn json_matches_csv_fields() {
    let args = [
        "sched-eval",
        "--strategy",
        "geometric-rr",
        "--n",
        "2",
        "--b",
        "2",
    ];
    let csv = csv_rows(&args);
    let mut json_args = args.to_vec();
    json_args.extend(["--format", "json"]);
    let out = raysched(&json_args);
    assert!(out.status.success());
    let json: Value = serde_json::from_slice(&out.stdout).unwrap();
    let obj = json[0].as_object().unwrap();
    let keys: Vec<&str> = obj.keys().map(String::as_str).collect();
    let headers: Vec<&str> = csv[0].iter().map(|(k, _)| k.as_str()).collect();
    assert_eq!(keys, headers);
    assert_eq!(obj["finite_sup"], 6.0);
    assert_eq!(obj["status"], "converged");
}

#[test]
fn out_flag_writes_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("curve.csv");
    let out = raysched(&[
        "curve-fig1",
        "--n-max",
        "2",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    let text = std::fs::read_to_string(&path).unwrap();
    assert!(text.starts_with("n,beta_star,beta_r_star,b_star,ratio\n"));
    assert_eq!(text.lines().count(), 3);

    let missing = dir.path().join("no/such/dir/curve.csv");
    let out = raysched(&[
        "curve-fig1",
        "--n-max",
        "2",
        "--out",
        missing.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(2));
}

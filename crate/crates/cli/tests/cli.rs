use std::path::PathBuf;
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_rho-ensembles"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(o: &Output) -> serde_json::Value {
    serde_json::from_str(&stdout(o)).unwrap()
}

/// Data rows of a CSV output (metadata and the column header removed).
fn rows(text: &str) -> Vec<Vec<f64>> {
    text.lines()
        .filter(|l| !l.starts_with('#'))
        .skip(1)
        .map(|l| l.split(',').map(|c| c.parse().unwrap()).collect())
        .collect()
}

fn temp(name: &str) -> PathBuf {
    std::env::temp_dir().join(format!("rho-ensembles-{}-{name}", std::process::id()))
}

#[test]
fn sample_rows_lie_on_the_simplex() {
    let o = run(&["sample", "--ensemble", "hs", "--n", "2", "--count", "3", "--seed", "7"]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert!(text.contains("# seed: 7"));
    let data = rows(&text);
    assert_eq!(data.len(), 3);
    for r in data {
        assert_eq!(r.len(), 2);
        assert!((r.iter().sum::<f64>() - 1.0).abs() < 1e-12);
        assert!(r[0] <= r[1]);
    }
}

#[test]
fn sample_output_is_byte_identical_across_runs() {
    let (a, b) = (temp("a.csv"), temp("b.csv"));
    for p in [&a, &b] {
        let o = run(&[
            "sample",
            "--ensemble",
            "bures",
            "--n",
            "4",
            "--count",
            "50",
            "--seed",
            "11",
            "--out",
            p.to_str().unwrap(),
        ]);
        assert!(o.status.success());
    }
    let (x, y) = (std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
    let _ = (std::fs::remove_file(&a), std::fs::remove_file(&b));
    assert_eq!(x, y);
    assert!(String::from_utf8(x).unwrap().contains("# sampler: mcmc"));
}

#[test]
fn thread_count_does_not_change_output() {
    let args = [
        "sample",
        "--ensemble",
        "hs",
        "--n",
        "3",
        "--count",
        "2500",
        "--seed",
        "3",
    ];
    let one = bin().args(args).env("RHO_ENSEMBLES_THREADS", "1").output().unwrap();
    let three = bin().args(args).env("RHO_ENSEMBLES_THREADS", "3").output().unwrap();
    assert!(one.status.success() && three.status.success());
    assert_eq!(one.stdout, three.stdout);
}

#[test]
fn swapped_induced_sample_has_rank_k() {
    let o = run(&[
        "sample",
        "--ensemble",
        "induced",
        "--n",
        "4",
        "--k",
        "2",
        "--count",
        "5",
        "--seed",
        "1",
    ]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert!(text.lines().any(|l| l.starts_with("# swap:")));
    for r in rows(&text) {
        assert_eq!(r.len(), 4);
        assert_eq!(r.iter().filter(|&&x| x > 0.0).count(), 2);
    }
}

#[test]
fn sample_flag_errors_exit_2() {
    for args in [
        &["sample", "--ensemble", "hs", "--n", "0", "--count", "3"][..],
        &[
            "sample",
            "--ensemble",
            "hs",
            "--n",
            "2",
            "--count",
            "3",
            "--sampler",
            "mcmc",
        ],
        &["sample", "--ensemble", "hs", "--n", "2", "--k", "3", "--count", "3"],
        &["sample", "--ensemble", "nope", "--n", "2", "--count", "3"],
        &["sample", "--ensemble", "hs", "--n", "2"],
    ] {
        let o = run(args);
        assert_eq!(o.status.code(), Some(2), "{args:?}");
        assert!(o.stdout.is_empty(), "partial output for {args:?}");
    }
}

#[test]
fn exact_values() {
    let o = run(&[
        "exact",
        "trace",
        "--ensemble",
        "bures",
        "--n",
        "2",
        "--q",
        "2",
        "--method",
        "laguerre-jet",
    ]);
    assert!(o.status.success());
    let v = json(&o);
    assert_eq!(v["exact"], "7/8");
    assert_eq!(v["method"], "laguerre-jet");

    let v = json(&run(&["exact", "entropy", "--n", "2", "--k", "2"]));
    assert_eq!(v["exact"], "1/3");

    let o = run(&[
        "exact",
        "trace",
        "--ensemble",
        "induced",
        "--n",
        "2",
        "--k",
        "3",
        "--q",
        "2",
    ]);
    let v = json(&o);
    assert_eq!(v["exact"], "5/7");
    assert_eq!(v["decimal"], "0.7142857142857143");
    assert!(
        stdout(&o).starts_with(r#"{"ensemble":"induced","n":2,"k":3,"quantity":"trace_moment","q":2,"exact":"5/7""#)
    );

    let v = json(&run(&[
        "exact",
        "two-point-moment",
        "--n",
        "2",
        "--k",
        "2",
        "--L",
        "1",
        "--M",
        "1",
    ]));
    assert_eq!(v["exact"], "1/10");

    let v = json(&run(&["exact", "entropy-correlation", "--n", "2", "--k", "2"]));
    assert_eq!(v["exact"]["a"], "17/36");
    assert_eq!(v["exact"]["b"], "-1/30");
}

#[test]
fn exact_cross_check_agrees() {
    let o = run(&[
        "exact",
        "trace",
        "--ensemble",
        "bures",
        "--n",
        "3",
        "--q",
        "3",
        "--method",
        "closed-form",
        "--method",
        "laguerre-jet",
    ]);
    assert!(o.status.success());
    let v = json(&o);
    assert_eq!(v["agree"], true);
    assert_eq!(v["values"][0]["exact"], "79/143");
    assert_eq!(v["values"][1]["exact"], "79/143");

    let o = run(&[
        "exact",
        "trace",
        "--ensemble",
        "hs",
        "--n",
        "3",
        "--q",
        "4",
        "--method",
        "closed-form",
        "--method",
        "w-matrix",
        "--method",
        "laguerre-jet",
    ]);
    assert!(o.status.success());
    assert_eq!(json(&o)["agree"], true);
}

#[test]
fn exact_usage_errors_exit_2() {
    for args in [
        &["exact", "trace", "--n", "2"][..],
        &["exact", "entropy", "--ensemble", "bures", "--n", "2"],
        &[
            "exact",
            "trace",
            "--ensemble",
            "bures",
            "--n",
            "2",
            "--q",
            "2",
            "--method",
            "w-matrix",
        ],
        &["exact", "trace", "--n", "2", "--q", "5", "--method", "closed-form"],
        &["exact", "two-point-moment", "--n", "2", "--L", "1"],
        &[
            "exact",
            "two-point-moment",
            "--n",
            "1",
            "--k",
            "3",
            "--L",
            "1",
            "--M",
            "1",
        ],
    ] {
        assert_eq!(run(args).status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn density_tables() {
    let hs = rows(&stdout(&run(&["density", "asymptotic-hs", "--points", "5"])));
    assert!(hs.iter().any(|r| r[0] == 2.0 && (r[1] - 0.159155).abs() < 1e-5));

    let o = run(&["density", "finite-n", "--n", "2", "--k", "2", "--points", "3"]);
    let mid = rows(&stdout(&o)).into_iter().find(|r| r[0] == 0.5).unwrap();
    assert!(mid[1].abs() < 1e-12);

    let b = rows(&stdout(&run(&["density", "asymptotic-bures", "--points", "100"])));
    assert_eq!(b.len(), 100);
    assert!(b.last().unwrap()[0] <= 27f64.sqrt());

    let o = run(&["density", "two-point", "--n", "3", "--k", "3", "--grid", "10"]);
    assert!(o.status.success());
    let t = rows(&stdout(&o));
    assert!(!t.is_empty());
    assert!(t.iter().all(|r| r.len() == 3 && r[0] + r[1] < 1.0 && r[2] >= 0.0));
}

#[test]
fn distributional_densities_exit_2() {
    for args in [
        &["density", "finite-n", "--n", "1", "--points", "3"][..],
        &["density", "two-point", "--n", "2", "--grid", "4"],
    ] {
        let o = run(args);
        assert_eq!(o.status.code(), Some(2), "{args:?}");
        assert!(!o.stderr.is_empty());
        assert!(o.stdout.is_empty());
    }
}

#[test]
fn verify_exact_suite() {
    let o = run(&["verify", "--suite", "exact"]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let v = json(&o);
    assert_eq!(v["passed"], true);
    assert!(v["checks"].as_array().unwrap().len() >= 10);
}

#[test]
fn verify_asymptotic_reports_residuals() {
    let v = json(&run(&["verify", "--suite", "asymptotic"]));
    let check = v["checks"]
        .as_array()
        .unwrap()
        .iter()
        .find(|c| c["name"] == "pastur_residuals")
        .unwrap();
    assert!(check["metrics"]["max_green_residual"].as_f64().unwrap() < 1e-12);
}

#[test]
fn exhausted_budget_still_emits_report_and_fails() {
    let o = run(&["verify", "--suite", "exact", "--budget", "0"]);
    assert_eq!(o.status.code(), Some(1));
    let v = json(&o);
    assert_eq!(v["passed"], false);
    assert!(v["checks"].as_array().unwrap().iter().all(|c| c["skipped"] == true));
}

use std::path::PathBuf;
use std::process::{Command, Output};

use stirpoly::{MultiPoly, PowerSeries};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_stirpoly"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn series_file(name: &str, taylor: &[&str]) -> PathBuf {
    let path = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join(format!("cli-{name}.json"));
    let body = serde_json::json!({"order": taylor.len() - 1, "taylor": taylor});
    std::fs::write(&path, body.to_string()).unwrap();
    path
}

#[test]
fn bell_text() {
    let o = run(&["family", "bell", "--n", "4", "--k", "2", "--format", "text"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).trim(), "3*X2^2 + 4*X1*X3");
}

#[test]
fn bell_unequal_signs_is_zero() {
    let o = run(&["family", "bell", "--n", "-1", "--k", "2"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).trim(), "0");
}

#[test]
fn lah_corner() {
    let o = run(&["family", "lah", "--n", "5", "--k", "5", "--check"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).trim(), "-1");
}

#[test]
fn comtet_latex() {
    let o = run(&[
        "family", "comtet", "--n", "6", "--k", "2", "--format", "latex",
    ]);
    assert!(o.status.success());
    let want = "31 X_{0}^{2} X_{1}^{4} + 146 X_{0}^{3} X_{1}^{2} X_{2} + 34 X_{0}^{4} X_{2}^{2} \
                + 57 X_{0}^{4} X_{1} X_{3} + 6 X_{0}^{5} X_{4}";
    assert_eq!(stdout(&o).trim(), want);
}

#[test]
fn json_output_round_trips() {
    let o = run(&[
        "family",
        "stirling-a",
        "--n",
        "5",
        "--k",
        "2",
        "--format",
        "json",
    ]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["family"], "stirling-a");
    let p = MultiPoly::from_json(&v["poly"]).unwrap();
    assert_eq!(p, stirpoly::stirling_a(5, 2));
    assert_eq!(v["text"].as_str().unwrap().parse::<MultiPoly>().unwrap(), p);
}

#[test]
fn unify_gives_numbers() {
    // Stirling numbers of the second kind S(5,2) = 15.
    let o = run(&["family", "bell", "--n", "5", "--k", "2", "--unify", "1"]);
    assert_eq!(stdout(&o).trim(), "15");
    // Unsigned Lah number L(4,2) = 36.
    let o = run(&["family", "lah+", "--n", "4", "--k", "2", "--unify", "1"]);
    assert_eq!(stdout(&o).trim(), "36");
}

#[test]
fn every_family_passes_check() {
    let names = [
        "bell",
        "stirling-a",
        "potential",
        "potential-hat",
        "assoc-bell",
        "cycle",
        "lah",
        "lah+",
        "comtet",
        "forest",
        "idempotency",
        "logarithmic",
        "geometric",
        "complete-bell",
        "reciprocal",
        "tree",
        "lambda",
        "knuth-pittel",
    ];
    for name in names {
        let o = run(&["table", name, "--max-n", "5", "--check"]);
        assert!(
            o.status.success(),
            "{name}: {}",
            String::from_utf8_lossy(&o.stderr)
        );
    }
}

#[test]
fn negative_indices_check() {
    for (name, n, k) in [
        ("bell", "-3", "-5"),
        ("stirling-a", "-2", "-4"),
        ("cycle", "-3", "-4"),
        ("lah", "-2", "-3"),
    ] {
        let o = run(&["family", name, "--n", n, "--k", k, "--check"]);
        assert!(
            o.status.success(),
            "{name}: {}",
            String::from_utf8_lossy(&o.stderr)
        );
    }
    let o = run(&["ext-bell", "--n", "-3", "--k", "-5", "--check"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).trim(), "45*X1^-7*X2^2 - 10*X1^-6*X3");
}

#[test]
fn verify_suites_exit_zero() {
    let o = run(&["verify", "orthogonality", "--max-n", "8"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("0 failures"));
    let o = run(&["verify", "all", "--max-n", "6"]);
    assert!(o.status.success(), "{}", stdout(&o));
}

#[test]
fn verify_json_report() {
    let o = run(&["verify", "reciprocity", "--range", "4", "--format", "json"]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["suite"], "reciprocity");
    assert_eq!(v["passed"], true);
    assert!(v["checks"].as_u64().unwrap() > 0);
}

#[test]
fn usage_errors_exit_two() {
    for args in [
        &["family", "nope", "--n", "1", "--k", "1"][..],
        &["family", "bell", "--n", "4"],
        &["family", "tree", "--n", "3", "--k", "1"],
        &["family", "tree", "--n", "-1"],
        &["verify", "bogus"],
        &["table", "bell", "--max-n", "-1"],
        &["frobnicate"],
    ] {
        let o = run(args);
        assert_eq!(o.status.code(), Some(2), "{args:?}");
        assert!(!o.stderr.is_empty());
    }
}

#[test]
fn invert_series() {
    let f = series_file("expm", &["0", "1", "1", "1", "1", "1", "1"]);
    let o = run(&["invert", "--series", f.to_str().unwrap(), "--check"]);
    assert!(o.status.success());
    let g = PowerSeries::from_json(&serde_json::from_str(&stdout(&o)).unwrap()).unwrap();
    assert_eq!(g, PowerSeries::logm(6));

    let c = series_file("const", &["1", "0", "0"]);
    assert_eq!(
        run(&["invert", "--series", c.to_str().unwrap()])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        run(&["invert", "--series", "/nonexistent/s.json"])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn lagrange_classical_and_general() {
    let one = series_file("one", &["1", "0", "0", "0", "0"]);
    let id = series_file("id", &["0", "1", "0", "0", "0"]);
    let o = run(&[
        "lagrange",
        "--a",
        one.to_str().unwrap(),
        "--phi",
        id.to_str().unwrap(),
        "--b",
        one.to_str().unwrap(),
        "--psi",
        id.to_str().unwrap(),
        "--n",
        "4",
        "--check",
    ]);
    assert!(o.status.success());
    let classical = run(&["family", "lambda", "--n", "4"]);
    assert_eq!(stdout(&o), stdout(&classical));

    let a = series_file("a", &["1", "2", "0", "3", "0"]);
    let phi = series_file("expm4", &["0", "1", "1", "1", "1"]);
    let o = run(&[
        "lagrange",
        "--a",
        a.to_str().unwrap(),
        "--phi",
        phi.to_str().unwrap(),
        "--b",
        one.to_str().unwrap(),
        "--psi",
        id.to_str().unwrap(),
        "--n",
        "4",
        "--check",
    ]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
}

#[test]
fn binomial_sequences() {
    // expm generates the exponential (Touchard) polynomials.
    let phi = series_file("expm5", &["0", "1", "1", "1", "1", "1"]);
    let o = run(&[
        "binomial",
        "--phi",
        phi.to_str().unwrap(),
        "--max-n",
        "4",
        "--check",
    ]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("f_4 = t + 7*t^2 + 6*t^3 + t^4"));

    let short = run(&["binomial", "--phi", phi.to_str().unwrap(), "--max-n", "9"]);
    assert_eq!(short.status.code(), Some(2));
}

#[test]
fn knuth_pittel_row() {
    let o = run(&["knuth-pittel", "--n", "4", "--check"]);
    assert!(o.status.success());
    let p: MultiPoly = stdout(&o).trim().parse().unwrap();
    // t_n(1) = n^n.
    assert_eq!(
        p.unify(&stirpoly::numbers::int(1)).unwrap(),
        stirpoly::numbers::int(256)
    );
}

#[test]
fn version_prints() {
    let o = run(&["version"]);
    assert!(o.status.success());
    assert!(stdout(&o).starts_with("stirpoly "));
}

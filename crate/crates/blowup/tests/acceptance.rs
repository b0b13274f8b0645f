//! Acceptance suite: the exit gate for the whole crate.
//!
//! Each test prints one pass/fail line (visible with `--nocapture`) and
//! asserts exact coefficientwise equality — no tolerances anywhere except
//! the stated wall-clock bounds. Run with
//! `cargo test --test acceptance -- --nocapture`.

use std::process::Command;
use std::time::Instant;

use blowup::polyring::{factorial, integer, Poly};
use blowup::reduce::{simple_type_crosscheck, simple_type_series};
use blowup::series::TruncSeries;
use blowup::tables::{
    b12_reference, b30_reference, b_table_log_ode, b_table_quadratic, b_table_sigma,
    corollary_residual, crosscheck, s_table_sigma, sigma_table, BlowupTable, Pipeline, TableKind,
};
use blowup::weierstrass::{bundle_identities, root_identities, EllipticBundle};

fn criterion(n: usize, pass: bool, detail: &str) {
    println!(
        "criterion {:2}: {} — {}",
        n,
        if pass { "PASS" } else { "FAIL" },
        detail
    );
    assert!(pass, "acceptance criterion {} failed: {}", n, detail);
}

/// Σ (B_k/k!)·tᵏ from a table side, for series-level identities.
fn plain(polys: &[Poly]) -> TruncSeries {
    let coeffs = polys
        .iter()
        .enumerate()
        .map(|(k, p)| p.scale(&(integer(1) / factorial(k))))
        .collect();
    TruncSeries::new(0, coeffs)
}

#[test]
fn acceptance_01_b12_every_pipeline() {
    let start = Instant::now();
    let tables = [
        b_table_log_ode(12),
        b_table_quadratic(12),
        b_table_sigma(12),
    ];
    let elapsed = start.elapsed();
    let value_ok = tables.iter().all(|t| t.b_polys()[12] == b12_reference());
    let fast_enough = elapsed.as_secs_f64() < 1.0;
    criterion(
        1,
        value_ok && fast_enough,
        &format!(
            "B_12 = -512x^4 - 960x^2 - 408 from all three pipelines in {:.3}s (< 1s)",
            elapsed.as_secs_f64()
        ),
    );
}

#[test]
fn acceptance_02_b30_every_pipeline() {
    let start = Instant::now();
    let tables = [
        b_table_log_ode(30),
        b_table_quadratic(30),
        b_table_sigma(30),
    ];
    let elapsed = start.elapsed();
    let value_ok = tables.iter().all(|t| t.b_polys()[30] == b30_reference());
    let fast_enough = elapsed.as_secs_f64() < 5.0;
    criterion(
        2,
        value_ok && fast_enough,
        &format!(
            "B_30 (7 terms, degree 13) from all three pipelines in {:.3}s (< 5s)",
            elapsed.as_secs_f64()
        ),
    );
}

#[test]
fn acceptance_03_pipeline_equivalence_to_48() {
    let start = Instant::now();
    let report = crosscheck(48);
    let elapsed = start.elapsed();
    let fast_enough = elapsed.as_secs_f64() < 10.0;
    criterion(
        3,
        report.pass() && fast_enough,
        &format!(
            "three B pipelines and two S pipelines agree for all k <= 48 in {:.3}s (< 10s){}",
            elapsed.as_secs_f64(),
            report
                .first_mismatch
                .as_ref()
                .map(|m| format!("; first mismatch {}", m))
                .unwrap_or_default()
        ),
    );
}

#[test]
fn acceptance_04_fixture_suite_to_48() {
    let t = sigma_table(48);
    let b = t.b_polys();
    let s = t.s_polys();
    let mut ok = b[0] == Poly::one()
        && b[1].is_zero()
        && b[2].is_zero()
        && b[3].is_zero()
        && b[4] == Poly::from_integers(&[-2])
        && s[1] == Poly::one()
        && s[3] == Poly::from_integers(&[0, -1]);
    for k in 0..=48 {
        if k % 2 == 1 {
            ok &= b[k].is_zero();
        } else {
            ok &= s[k].is_zero();
        }
    }
    criterion(
        4,
        ok,
        "B_0 = 1, B_1..3 = 0, B_4 = -2, odd B_k = 0, S_1 = 1, S_3 = -x, even S_k = 0 for k <= 48",
    );
}

#[test]
fn acceptance_05_simple_type_column_to_48() {
    let t = sigma_table(48);
    let column_ok = simple_type_crosscheck(48, &t);
    let b12_at_2 = t.b_polys()[12].eval(&integer(2)) == integer(-12440)
        && simple_type_series(TableKind::B, 12)[12] == integer(-12440);
    criterion(
        5,
        column_ok && b12_at_2,
        "B_k(2) and S_k(2) match k!·[t^k]e^{-t^2/2}·cosh/sinh t for k <= 48, incl. B_12(2) = -12440",
    );
}

#[test]
fn acceptance_06_weierstrass_self_tests_order_60() {
    let start = Instant::now();
    let bundle = EllipticBundle::new(60);
    let rows = bundle_identities(&bundle);
    let elapsed = start.elapsed();
    let all_pass = rows.iter().all(|r| r.pass);
    let fast_enough = elapsed.as_secs_f64() < 5.0;
    criterion(
        6,
        all_pass && fast_enough,
        &format!(
            "pe ODE residual, zeta', sigma'/sigma, sigma3^2 and parities at order 60 in {:.3}s (< 5s)",
            elapsed.as_secs_f64()
        ),
    );
}

#[test]
fn acceptance_07_root_identities() {
    let rows = root_identities();
    let all_pass = rows.iter().all(|r| r.pass);
    criterion(
        7,
        all_pass && rows.len() == 5,
        "P(e3) = 0, P'(e3)/4 = 1, Vieta reconstruction, root-difference product = x^2 - 4, g2^3 - 27g3^2 = 16(x^2 - 4)",
    );
}

#[test]
fn acceptance_08_s_squared_identity_to_48() {
    let b = plain(b_table_quadratic(52).b_polys());
    let s = plain(s_table_sigma(49).s_polys());
    let d1 = b.diff();
    let d2 = d1.diff();
    let residual = &(&s * &s) - &(&(&d1 * &d1) - &(&d2 * &b));
    let ok = residual.truncation() >= 48 && residual.is_zero();
    criterion(
        8,
        ok,
        &format!(
            "S^2 - ((B')^2 - B''B) is the zero series through t^{} (>= 48)",
            residual.truncation()
        ),
    );
}

#[test]
fn acceptance_09_corollary_residual_order_40() {
    let table = b_table_log_ode(44);
    let residual = corollary_residual(&table);
    let zero_ok = residual.truncation() >= 40 && residual.is_zero();

    // negative control: one corrupted coefficient must break it
    let mut corrupted = table.b_polys().to_vec();
    corrupted[6] = &corrupted[6] + &Poly::one();
    let bad = BlowupTable::from_parts(44, corrupted, Vec::new(), Pipeline::LogOde);
    let control_ok = !corollary_residual(&bad).is_zero();

    criterion(
        9,
        zero_ok && control_ok,
        &format!(
            "two-blowup corollary residual vanishes through t^{} (>= 40) and detects an injected perturbation",
            residual.truncation()
        ),
    );
}

fn run_cli(args: &[&str]) -> (i32, String) {
    let output = Command::new(env!("CARGO_BIN_EXE_blowup"))
        .args(args)
        .output()
        .expect("binary runs");
    (
        output.status.code().unwrap_or(-1),
        String::from_utf8(output.stdout).expect("utf8 output"),
    )
}

#[test]
fn acceptance_10_cli_contract() {
    let (verify_code, _) = run_cli(&["verify", "--max", "30"]);

    let (c1, text) = run_cli(&["table", "--kind", "b", "--max", "4", "--format", "text"]);
    let text_ok = c1 == 0 && text == "B_0 = 1\nB_1 = 0\nB_2 = 0\nB_3 = 0\nB_4 = -2\n";

    let (c2, json) = run_cli(&["table", "--kind", "s", "--max", "3", "--format", "json"]);
    let parsed: serde_json::Value = serde_json::from_str(&json).expect("valid json");
    let rec = parsed["records"]
        .as_array()
        .unwrap()
        .iter()
        .find(|r| r["k"] == 3)
        .unwrap();
    let json_ok = c2 == 0
        && rec["kind"] == "S"
        && rec["coefficients"] == serde_json::json!([{ "power": 1, "value": "-1" }]);

    let (c3, csv) = run_cli(&["table", "--kind", "b", "--max", "12", "--format", "csv"]);
    let rows: Vec<&str> = csv.lines().collect();
    let csv_ok = c3 == 0
        && rows.contains(&"12,0,-408")
        && rows.contains(&"12,2,-960")
        && rows.contains(&"12,4,-512");

    let reduce_ok = run_cli(&["reduce", "--exponents", "4", "--twisted", "0"])
        == (0, "-2\n".into())
        && run_cli(&["reduce", "--exponents", "3,1", "--twisted", "1,1"]) == (0, "-x\n".into())
        && run_cli(&["reduce", "--exponents", "2", "--twisted", "0"]) == (0, "0\n".into());

    criterion(
        10,
        verify_code == 0 && text_ok && json_ok && csv_ok && reduce_ok,
        "verify --max 30 exits 0; table text/json/csv and reduce outputs match byte-for-byte",
    );
}

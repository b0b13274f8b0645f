//! Command-line front end: emit tables, run the verification suite, reduce
//! exceptional-class monomials.
//!
//! Exit-code contract: 0 success/verified, 1 mathematical mismatch,
//! 2 usage error. All output is byte-deterministic for identical
//! invocations; rationals serialize as exact strings ("p/q" or "p"), never
//! as floats. The optional --approx decoration is explicitly labeled
//! non-authoritative.

use std::io::Write;

use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::polyring::Poly;
use crate::reduce::{
    reduce_monomial, simple_type_crosscheck, simple_type_specialize, ExceptionalMonomial,
};
use crate::tables::{
    b12_reference, b30_reference, b_table_log_ode, b_table_quadratic, b_table_sigma, crosscheck,
    s_table_sigma, s_table_sqrt, sigma_table, TableKind,
};
use crate::weierstrass::{bundle_identities, root_identities, EllipticBundle};

const USAGE: &str = "\
Usage: blowup <command> [options]

Commands:
  table   --kind <b|s> [--max <K>] [--format <text|csv|json>]
          [--pipeline <ode|quad|sigma|all>] [--approx]
            Print B_0..B_K or S_0..S_K (K defaults to 40). `all` (the
            default) requires the independent pipelines to agree and fails
            otherwise.
  verify  [--max <K>]
            Run every cross-check and identity (K defaults to 40); exit 0
            only if all pass.
  reduce  --exponents <k1,k2,...> [--twisted <0|1,...>] [--simple-type]
            Reduce a product of exceptional-class powers to a polynomial
            in x (and optionally its value at x = 2).

Exit codes: 0 success, 1 verification failure, 2 usage error.
";

#[derive(Serialize, Deserialize, PartialEq, Debug)]
pub struct CoefficientRecord {
    pub power: usize,
    pub value: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub approx: Option<f64>,
}

#[derive(Serialize, Deserialize, PartialEq, Debug)]
pub struct OutputRecord {
    pub kind: String,
    pub k: usize,
    pub coefficients: Vec<CoefficientRecord>,
    pub pipeline: String,
}

#[derive(Serialize, Deserialize, PartialEq, Debug)]
pub struct TableDocument {
    pub tool: String,
    pub version: String,
    pub records: Vec<OutputRecord>,
}

/// Table depth when --max is not given.
const DEFAULT_K_MAX: usize = 40;

#[derive(Clone, Copy, PartialEq, Eq)]
enum Format {
    Text,
    Csv,
    Json,
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum PipelineFlag {
    Ode,
    Quad,
    Sigma,
    All,
}

struct TableArgs {
    kind: TableKind,
    k_max: usize,
    format: Format,
    pipeline: PipelineFlag,
    approx: bool,
}

struct ReduceArgs {
    exponents: Vec<usize>,
    twisted: Vec<bool>,
    simple_type: bool,
}

fn parse_flag_value<'a>(args: &'a [String], i: &mut usize, flag: &str) -> Result<&'a str, String> {
    *i += 1;
    args.get(*i)
        .map(|s| s.as_str())
        .ok_or_else(|| format!("missing value for {}", flag))
}

fn parse_table_args(args: &[String]) -> Result<TableArgs, String> {
    let mut kind = None;
    let mut k_max = None;
    let mut format = Format::Text;
    let mut pipeline = PipelineFlag::All;
    let mut approx = false;
    let mut i = 0;
    while i < args.len() {
        match args[i].as_str() {
            "--kind" => {
                kind = Some(match parse_flag_value(args, &mut i, "--kind")? {
                    "b" | "B" => TableKind::B,
                    "s" | "S" => TableKind::S,
                    other => return Err(format!("unknown kind '{}'", other)),
                });
            }
            "--max" => {
                let v = parse_flag_value(args, &mut i, "--max")?;
                k_max = Some(
                    v.parse::<usize>()
                        .map_err(|_| format!("bad --max '{}'", v))?,
                );
            }
            "--format" => {
                format = match parse_flag_value(args, &mut i, "--format")? {
                    "text" => Format::Text,
                    "csv" => Format::Csv,
                    "json" => Format::Json,
                    other => return Err(format!("unknown format '{}'", other)),
                };
            }
            "--pipeline" => {
                pipeline = match parse_flag_value(args, &mut i, "--pipeline")? {
                    "ode" => PipelineFlag::Ode,
                    "quad" => PipelineFlag::Quad,
                    "sigma" => PipelineFlag::Sigma,
                    "all" => PipelineFlag::All,
                    other => return Err(format!("unknown pipeline '{}'", other)),
                };
            }
            "--approx" => approx = true,
            other => return Err(format!("unknown flag '{}'", other)),
        }
        i += 1;
    }
    let kind = kind.ok_or("--kind is required")?;
    let k_max = k_max.unwrap_or(DEFAULT_K_MAX);
    if kind == TableKind::S && matches!(pipeline, PipelineFlag::Ode | PipelineFlag::Quad) {
        return Err("pipelines ode/quad build the B family only".into());
    }
    Ok(TableArgs {
        kind,
        k_max,
        format,
        pipeline,
        approx,
    })
}

fn parse_reduce_args(args: &[String]) -> Result<ReduceArgs, String> {
    let mut exponents = None;
    let mut twisted = None;
    let mut simple_type = false;
    let mut i = 0;
    while i < args.len() {
        match args[i].as_str() {
            "--exponents" => {
                let v = parse_flag_value(args, &mut i, "--exponents")?;
                let parsed: Result<Vec<usize>, _> =
                    v.split(',').map(|p| p.trim().parse::<usize>()).collect();
                exponents = Some(parsed.map_err(|_| format!("bad --exponents '{}'", v))?);
            }
            "--twisted" => {
                let v = parse_flag_value(args, &mut i, "--twisted")?;
                let parsed: Result<Vec<bool>, String> = v
                    .split(',')
                    .map(|p| match p.trim() {
                        "0" => Ok(false),
                        "1" => Ok(true),
                        other => Err(format!("bad twist flag '{}'", other)),
                    })
                    .collect();
                twisted = Some(parsed?);
            }
            "--simple-type" => simple_type = true,
            other => return Err(format!("unknown flag '{}'", other)),
        }
        i += 1;
    }
    let exponents = exponents.ok_or("--exponents is required")?;
    let twisted = twisted.unwrap_or_else(|| vec![false; exponents.len()]);
    if twisted.len() != exponents.len() {
        return Err("--exponents and --twisted must have the same length".into());
    }
    Ok(ReduceArgs {
        exponents,
        twisted,
        simple_type,
    })
}

fn parse_verify_args(args: &[String]) -> Result<usize, String> {
    let mut k_max = None;
    let mut i = 0;
    while i < args.len() {
        match args[i].as_str() {
            "--max" => {
                let v = parse_flag_value(args, &mut i, "--max")?;
                k_max = Some(
                    v.parse::<usize>()
                        .map_err(|_| format!("bad --max '{}'", v))?,
                );
            }
            other => return Err(format!("unknown flag '{}'", other)),
        }
        i += 1;
    }
    Ok(k_max.unwrap_or(DEFAULT_K_MAX))
}

fn approx_value(p: &Poly, power: usize) -> f64 {
    p.coeff(power).to_f64().unwrap_or(f64::NAN)
}

fn poly_records(
    kind: TableKind,
    polys: &[Poly],
    pipeline: &str,
    approx: bool,
) -> Vec<OutputRecord> {
    polys
        .iter()
        .enumerate()
        .map(|(k, p)| OutputRecord {
            kind: kind.letter().to_string(),
            k,
            coefficients: (0..p.coeffs().len())
                .filter(|&power| !p.coeff(power).is_zero())
                .map(|power| CoefficientRecord {
                    power,
                    value: p.coeff(power).to_string(),
                    approx: approx.then(|| approx_value(p, power)),
                })
                .collect(),
            pipeline: pipeline.to_string(),
        })
        .collect()
}

fn approx_poly_string(p: &Poly) -> String {
    if p.is_zero() {
        return "0".into();
    }
    let mut parts = Vec::new();
    for power in (0..p.coeffs().len()).rev() {
        let c = p.coeff(power);
        if c.is_zero() {
            continue;
        }
        let v = c.to_f64().unwrap_or(f64::NAN);
        parts.push(match power {
            0 => format!("{}", v),
            1 => format!("{}x", v),
            _ => format!("{}x^{}", v, power),
        });
    }
    parts.join(" + ")
}

fn emit_table<W: Write>(
    out: &mut W,
    kind: TableKind,
    polys: &[Poly],
    pipeline: &str,
    format: Format,
    approx: bool,
) -> std::io::Result<()> {
    match format {
        Format::Text => {
            for (k, p) in polys.iter().enumerate() {
                if approx {
                    writeln!(
                        out,
                        "{}_{} = {} (approx: {})",
                        kind.letter(),
                        k,
                        p,
                        approx_poly_string(p)
                    )?;
                } else {
                    writeln!(out, "{}_{} = {}", kind.letter(), k, p)?;
                }
            }
        }
        Format::Csv => {
            writeln!(
                out,
                "{}",
                if approx {
                    "k,power,value,approx"
                } else {
                    "k,power,value"
                }
            )?;
            for (k, p) in polys.iter().enumerate() {
                for power in 0..p.coeffs().len() {
                    let c = p.coeff(power);
                    if c.is_zero() {
                        continue;
                    }
                    if approx {
                        writeln!(out, "{},{},{},{}", k, power, c, approx_value(p, power))?;
                    } else {
                        writeln!(out, "{},{},{}", k, power, c)?;
                    }
                }
            }
        }
        Format::Json => {
            let doc = TableDocument {
                tool: "blowup".into(),
                version: env!("CARGO_PKG_VERSION").into(),
                records: poly_records(kind, polys, pipeline, approx),
            };
            writeln!(
                out,
                "{}",
                serde_json::to_string(&doc).expect("serializable")
            )?;
        }
    }
    Ok(())
}

fn cmd_table<W: Write, E: Write>(a: &TableArgs, out: &mut W, err: &mut E) -> i32 {
    let (polys, tag): (Vec<Poly>, &str) = match (a.kind, a.pipeline) {
        (TableKind::B, PipelineFlag::Ode) => {
            (b_table_log_ode(a.k_max).b_polys().to_vec(), "log-ode")
        }
        (TableKind::B, PipelineFlag::Quad) => {
            (b_table_quadratic(a.k_max).b_polys().to_vec(), "quadratic")
        }
        (TableKind::B, PipelineFlag::Sigma) => (b_table_sigma(a.k_max).b_polys().to_vec(), "sigma"),
        (TableKind::B, PipelineFlag::All) => {
            let ode = b_table_log_ode(a.k_max);
            let quad = b_table_quadratic(a.k_max);
            let sigma = b_table_sigma(a.k_max);
            for k in 0..=a.k_max {
                if ode.b_polys()[k] != quad.b_polys()[k] || ode.b_polys()[k] != sigma.b_polys()[k] {
                    let _ = writeln!(err, "pipeline disagreement at B_{}", k);
                    return 1;
                }
            }
            (sigma.b_polys().to_vec(), "all")
        }
        (TableKind::S, PipelineFlag::Sigma) => (s_table_sigma(a.k_max).s_polys().to_vec(), "sigma"),
        (TableKind::S, PipelineFlag::All) => {
            let sigma = s_table_sigma(a.k_max);
            let sqrt = match s_table_sqrt(a.k_max) {
                Ok(t) => t,
                Err(e) => {
                    let _ = writeln!(err, "sqrt-relation pipeline failed: {}", e);
                    return 1;
                }
            };
            for k in 0..=a.k_max {
                if sigma.s_polys()[k] != sqrt.s_polys()[k] {
                    let _ = writeln!(err, "pipeline disagreement at S_{}", k);
                    return 1;
                }
            }
            (sigma.s_polys().to_vec(), "all")
        }
        (TableKind::S, _) => unreachable!("rejected at parse time"),
    };
    if emit_table(out, a.kind, &polys, tag, a.format, a.approx).is_err() {
        return 1;
    }
    0
}

/// Working order for the Weierstrass self-tests driven by `verify --max K`.
fn verify_series_order(k_max: usize) -> i64 {
    k_max.max(8) as i64 + 16
}

fn cmd_verify<W: Write, E: Write>(k_max: usize, out: &mut W, err: &mut E) -> i32 {
    let mut all_ok = true;
    let mut row = |ok: bool, name: &str, out: &mut W| {
        let _ = writeln!(out, "{} {}", if ok { "ok  " } else { "FAIL" }, name);
        all_ok &= ok;
    };

    for id in root_identities() {
        row(id.pass, id.name, out);
    }

    let order = verify_series_order(k_max);
    let bundle = EllipticBundle::new(order);
    for id in bundle_identities(&bundle) {
        row(id.pass, &format!("{} (order {})", id.name, order), out);
    }

    let report = crosscheck(k_max);
    row(
        report.first_mismatch.is_none() && report.agreements.iter().all(|a| a.pass),
        &format!("pipeline agreement for all k <= {}", k_max),
        out,
    );
    if let Some(m) = &report.first_mismatch {
        let _ = writeln!(err, "first mismatch: {}", m);
    }
    row(
        report.invariant_failures.is_empty(),
        "seed, parity and degree invariants",
        out,
    );
    for failure in &report.invariant_failures {
        let _ = writeln!(err, "invariant failure: {}", failure);
    }
    row(report.corollary_ok, "two-blowup corollary residual", out);

    let table = sigma_table(k_max);
    row(
        simple_type_crosscheck(k_max, &table),
        &format!("simple-type column x = 2 for all k <= {}", k_max),
        out,
    );

    if k_max >= 12 {
        row(
            table.b_polys()[12] == b12_reference(),
            "B_12 matches reference value",
            out,
        );
    }
    if k_max >= 30 {
        row(
            table.b_polys()[30] == b30_reference(),
            "B_30 matches reference value",
            out,
        );
    }

    if all_ok {
        let _ = writeln!(out, "verified: all checks passed at K = {}", k_max);
        0
    } else {
        let _ = writeln!(err, "verification FAILED at K = {}", k_max);
        1
    }
}

fn cmd_reduce<W: Write, E: Write>(a: &ReduceArgs, out: &mut W, err: &mut E) -> i32 {
    let monomial = ExceptionalMonomial::new(a.exponents.clone(), a.twisted.clone());
    let table = sigma_table(monomial.max_exponent());
    match reduce_monomial(&monomial, &table) {
        Ok(result) => {
            let _ = writeln!(out, "{}", result.polynomial);
            if a.simple_type {
                let _ = writeln!(out, "x=2: {}", simple_type_specialize(&result.polynomial));
            }
            0
        }
        Err(e) => {
            let _ = writeln!(err, "reduce failed: {}", e);
            1
        }
    }
}

/// Run the CLI on pre-split arguments (program name excluded) and return the
/// process exit code. All output goes through the supplied writers.
pub fn run<W: Write, E: Write>(args: &[String], out: &mut W, err: &mut E) -> i32 {
    let usage = |err: &mut E, msg: &str| {
        let _ = writeln!(err, "error: {}", msg);
        let _ = write!(err, "{}", USAGE);
        2
    };
    match args.first().map(|s| s.as_str()) {
        Some("table") => match parse_table_args(&args[1..]) {
            Ok(a) => cmd_table(&a, out, err),
            Err(m) => usage(err, &m),
        },
        Some("verify") => match parse_verify_args(&args[1..]) {
            Ok(k) => cmd_verify(k, out, err),
            Err(m) => usage(err, &m),
        },
        Some("reduce") => match parse_reduce_args(&args[1..]) {
            Ok(a) => cmd_reduce(&a, out, err),
            Err(m) => usage(err, &m),
        },
        Some("--help") | Some("-h") => {
            let _ = write!(out, "{}", USAGE);
            0
        }
        Some(other) => usage(err, &format!("unknown command '{}'", other)),
        None => usage(err, "no command given"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_capture(args: &[&str]) -> (i32, String, String) {
        let args: Vec<String> = args.iter().map(|s| s.to_string()).collect();
        let mut out = Vec::new();
        let mut err = Vec::new();
        let code = run(&args, &mut out, &mut err);
        (
            code,
            String::from_utf8(out).unwrap(),
            String::from_utf8(err).unwrap(),
        )
    }

    #[test]
    fn table_text_matches_contract() {
        let (code, out, _) =
            run_capture(&["table", "--kind", "b", "--max", "4", "--format", "text"]);
        assert_eq!(code, 0);
        assert_eq!(out, "B_0 = 1\nB_1 = 0\nB_2 = 0\nB_3 = 0\nB_4 = -2\n");
    }

    #[test]
    fn table_json_record_for_s3() {
        let (code, out, _) =
            run_capture(&["table", "--kind", "s", "--max", "3", "--format", "json"]);
        assert_eq!(code, 0);
        let doc: TableDocument = serde_json::from_str(&out).unwrap();
        assert_eq!(doc.tool, "blowup");
        let rec = doc.records.iter().find(|r| r.k == 3).unwrap();
        assert_eq!(rec.kind, "S");
        assert_eq!(rec.coefficients.len(), 1);
        assert_eq!(rec.coefficients[0].power, 1);
        assert_eq!(rec.coefficients[0].value, "-1");
        // round-trip is the identity
        assert_eq!(serde_json::to_string(&doc).unwrap() + "\n", out);
    }

    #[test]
    fn table_csv_contains_b12_rows() {
        let (code, out, _) =
            run_capture(&["table", "--kind", "b", "--max", "12", "--format", "csv"]);
        assert_eq!(code, 0);
        let rows: Vec<&str> = out.lines().collect();
        assert_eq!(rows[0], "k,power,value");
        assert!(rows.contains(&"12,0,-408"));
        assert!(rows.contains(&"12,2,-960"));
        assert!(rows.contains(&"12,4,-512"));
    }

    #[test]
    fn usage_errors_exit_two() {
        assert_eq!(run_capture(&[]).0, 2);
        assert_eq!(run_capture(&["tables"]).0, 2);
        assert_eq!(run_capture(&["table", "--max", "4"]).0, 2);
        assert_eq!(run_capture(&["table", "--kind", "q", "--max", "4"]).0, 2);
        assert_eq!(run_capture(&["table", "--kind", "b", "--max", "-3"]).0, 2);
        assert_eq!(
            run_capture(&["table", "--kind", "b", "--max", "4", "--format", "xml"]).0,
            2
        );
        assert_eq!(
            run_capture(&["table", "--kind", "s", "--max", "3", "--pipeline", "quad"]).0,
            2
        );
        assert_eq!(
            run_capture(&["reduce", "--exponents", "3,1", "--twisted", "1"]).0,
            2
        );
        assert_eq!(run_capture(&["reduce", "--exponents", "a,b"]).0, 2);
        assert_eq!(run_capture(&["verify", "--max", "x"]).0, 2);
        assert_eq!(run_capture(&["verify", "--kind", "b"]).0, 2);
    }

    #[test]
    fn reduce_examples() {
        let (code, out, _) = run_capture(&["reduce", "--exponents", "4", "--twisted", "0"]);
        assert_eq!((code, out.as_str()), (0, "-2\n"));
        let (code, out, _) = run_capture(&["reduce", "--exponents", "3,1", "--twisted", "1,1"]);
        assert_eq!((code, out.as_str()), (0, "-x\n"));
        let (code, out, _) = run_capture(&["reduce", "--exponents", "2", "--twisted", "0"]);
        assert_eq!((code, out.as_str()), (0, "0\n"));
    }

    #[test]
    fn reduce_simple_type_column() {
        let (code, out, _) = run_capture(&[
            "reduce",
            "--exponents",
            "6",
            "--twisted",
            "0",
            "--simple-type",
        ]);
        assert_eq!(code, 0);
        assert_eq!(out, "8x\nx=2: 16\n");
    }

    #[test]
    fn verify_zero_order_passes() {
        let (code, out, _) = run_capture(&["verify", "--max", "0"]);
        assert_eq!(code, 0, "output:\n{}", out);
    }

    #[test]
    fn help_exits_zero() {
        let (code, out, _) = run_capture(&["--help"]);
        assert_eq!(code, 0);
        assert!(out.contains("Usage: blowup"));
    }
}

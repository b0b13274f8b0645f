//! The blowup tables B_k(x), S_k(x), computed by independent pipelines.
//!
//! Both families are coefficient polynomials of exponential generating
//! functions B(x,t) = Σ B_k(x) tᵏ/k! and S(x,t) = Σ S_k(x) tᵏ/k!. Three
//! routes produce B:
//!
//! * `log-ode`: u″ = −6u² − 4xu − 2 with u(0) = u′(0) = 0 by Taylor
//!   recursion, f = ∬u with f(0) = f′(0) = 0, then B = exp(f);
//! * `quadratic`: the relation
//!   B⁽⁴⁾B − 4B‴B′ + 3(B″)² + 4x(B″B − (B′)²) + 2B² = 0 run directly as a
//!   coefficient recursion with seeds b₀ = 1, b₁ = b₂ = b₃ = 0;
//! * `sigma`: the closed form B = e^{−t²x/6}·σ₃(t).
//!
//! Two routes produce S: the closed form S = e^{−t²x/6}·σ(t) and the
//! relation S² = (B′)² − B″B with S′(0) = 1. Mutual agreement of all routes
//! (`crosscheck`) is the correctness guarantee of the whole crate.
//!
//! Factorial normalization B_k = k!·\[tᵏ\] happens exactly once, at table
//! construction; everything upstream works on plain Taylor coefficients.

use std::fmt;

use crate::polyring::{factorial, integer, ratio, Poly};
use crate::series::TruncSeries;
use crate::weierstrass;

/// Which construction produced a table.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Pipeline {
    LogOde,
    Quadratic,
    Sigma,
    SqrtRelation,
}

impl Pipeline {
    pub fn name(self) -> &'static str {
        match self {
            Pipeline::LogOde => "log-ode",
            Pipeline::Quadratic => "quadratic",
            Pipeline::Sigma => "sigma",
            Pipeline::SqrtRelation => "sqrt-relation",
        }
    }
}

impl fmt::Display for Pipeline {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Untwisted (B) or twisted (S) family.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TableKind {
    B,
    S,
}

impl TableKind {
    pub fn letter(self) -> &'static str {
        match self {
            TableKind::B => "B",
            TableKind::S => "S",
        }
    }
}

/// Computed sequences B_0..B_K and/or S_0..S_K with pipeline provenance.
/// A pipeline fills the side(s) it constructs; the other vector stays empty.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlowupTable {
    k_max: usize,
    b: Vec<Poly>,
    s: Vec<Poly>,
    pipeline: Pipeline,
}

impl BlowupTable {
    pub fn from_parts(k_max: usize, b: Vec<Poly>, s: Vec<Poly>, pipeline: Pipeline) -> Self {
        assert!(
            b.is_empty() || b.len() == k_max + 1,
            "B side has wrong length"
        );
        assert!(
            s.is_empty() || s.len() == k_max + 1,
            "S side has wrong length"
        );
        BlowupTable {
            k_max,
            b,
            s,
            pipeline,
        }
    }

    pub fn k_max(&self) -> usize {
        self.k_max
    }

    pub fn pipeline(&self) -> Pipeline {
        self.pipeline
    }

    /// B_0..B_K when this table carries the untwisted side, else empty.
    pub fn b_polys(&self) -> &[Poly] {
        &self.b
    }

    /// S_0..S_K when this table carries the twisted side, else empty.
    pub fn s_polys(&self) -> &[Poly] {
        &self.s
    }

    pub fn poly(&self, kind: TableKind, k: usize) -> Option<&Poly> {
        match kind {
            TableKind::B => self.b.get(k),
            TableKind::S => self.s.get(k),
        }
    }
}

/// k!·\[tᵏ\] for k = 0..=k_max of a plain-coefficient series.
fn normalize_table(series: &TruncSeries, k_max: usize) -> Vec<Poly> {
    assert!(
        series.truncation() >= k_max as i64,
        "series not exact to k_max"
    );
    (0..=k_max)
        .map(|k| series.coeff(k as i64).scale(&factorial(k)))
        .collect()
}

/// Plain-coefficient series Σ (B_k/k!)·tᵏ of a table side, exact through K.
fn plain_series(table: &BlowupTable, kind: TableKind) -> TruncSeries {
    let polys = match kind {
        TableKind::B => &table.b,
        TableKind::S => &table.s,
    };
    assert!(
        !polys.is_empty(),
        "table does not carry the {} side",
        kind.letter()
    );
    let coeffs = polys
        .iter()
        .enumerate()
        .map(|(k, p)| p.scale(&(integer(1) / factorial(k))))
        .collect();
    TruncSeries::new(0, coeffs)
}

/// Taylor coefficients of u through t^top for u″ = −6u² − 4xu − 2 with
/// u(0) = u′(0) = 0; each coefficient is determined by strictly lower ones.
fn log_ode_u(top: usize) -> Vec<Poly> {
    let mut u = vec![Poly::zero(); top + 1];
    for n in 0..=top as i64 - 2 {
        let n = n as usize;
        // (n+2)(n+1)·u_{n+2} = −6·[tⁿ](u²) − 4x·u_n − 2·[n=0]
        let mut rhs = Poly::zero();
        for j in 0..=n {
            if u[j].is_zero() || u[n - j].is_zero() {
                continue;
            }
            rhs = &rhs + &(&u[j] * &u[n - j]);
        }
        rhs = rhs.scale(&integer(-6));
        rhs = &rhs - &(&u[n] * &Poly::monomial(integer(4), 1));
        if n == 0 {
            rhs = &rhs - &Poly::from_integers(&[2]);
        }
        u[n + 2] = rhs.scale(&ratio(1, ((n + 2) * (n + 1)) as i64));
    }
    u
}

/// B via the logarithm: solve u″ = −6u² − 4xu − 2, u(0) = u′(0) = 0 by
/// Taylor recursion, integrate twice with f(0) = f′(0) = 0, and
/// exponentiate.
pub fn b_table_log_ode(k_max: usize) -> BlowupTable {
    let mut f = vec![Poly::zero(); k_max + 1];
    if k_max >= 2 {
        let u = log_ode_u(k_max - 2);
        for m in 2..=k_max {
            f[m] = u[m - 2].scale(&ratio(1, ((m - 1) * m) as i64));
        }
    }
    let b = TruncSeries::new(0, f)
        .exp()
        .expect("f has no constant term by construction");
    BlowupTable::from_parts(
        k_max,
        normalize_table(&b, k_max),
        Vec::new(),
        Pipeline::LogOde,
    )
}

/// B via the quadratic relation, as a direct recursion on plain coefficients
/// with seeds b₀ = 1, b₁ = b₂ = b₃ = 0. At order n the only appearance of
/// the unknown b_{n+4} is B⁽⁴⁾·B's top term, with multiplier
/// (n+4)!/n!·b₀ ≠ 0.
pub fn b_table_quadratic(k_max: usize) -> BlowupTable {
    let mut b = vec![Poly::zero(); k_max.max(3) + 1];
    b[0] = Poly::one();

    // t^i coefficient of the j-th derivative: (i+j)!/i!·b_{i+j}
    let dcoef = |b: &[Poly], i: usize, j: usize| -> Poly {
        let mut ff = 1i64;
        for m in 1..=j {
            ff *= (i + m) as i64;
        }
        b[i + j].scale(&integer(ff))
    };

    if k_max >= 4 {
        for n in 0..=k_max - 4 {
            let mut acc = Poly::zero();
            for i in 0..=n {
                let j = n - i;
                if i < n {
                    // B⁽⁴⁾·B without the unknown top term (i = n, j = 0)
                    acc = &acc + &(&dcoef(&b, i, 4) * &b[j]);
                }
                acc = &acc - &(&dcoef(&b, i, 3) * &dcoef(&b, j, 1)).scale(&integer(4));
                acc = &acc + &(&dcoef(&b, i, 2) * &dcoef(&b, j, 2)).scale(&integer(3));
                acc = &acc + &(&b[i] * &b[j]).scale(&integer(2));
                let x_part = &(&dcoef(&b, i, 2) * &b[j]) - &(&dcoef(&b, i, 1) * &dcoef(&b, j, 1));
                acc = &acc + &(&x_part * &Poly::monomial(integer(4), 1));
            }
            let mut multiplier = 1i64;
            for m in 1..=4 {
                multiplier *= (n + m) as i64;
            }
            // the isolating multiplier is (n+4)!/n!·b₀; a zero here would
            // stall the recursion, which the seeds rule out
            assert!(
                multiplier != 0 && !b[0].is_zero(),
                "recursion stalled at order {}",
                n
            );
            b[n + 4] = acc.scale(&ratio(-1, multiplier));
        }
    }
    b.truncate(k_max + 1);

    let table: Vec<Poly> = b
        .iter()
        .enumerate()
        .map(|(k, p)| p.scale(&factorial(k)))
        .collect();
    BlowupTable::from_parts(k_max, table, Vec::new(), Pipeline::Quadratic)
}

/// exp(−t²x/6) exact through t^n.
fn gaussian_prefactor(n: i64) -> TruncSeries {
    TruncSeries::monomial(Poly::monomial(ratio(-1, 6), 1), 2, n)
        .exp()
        .expect("argument starts at t^2")
}

/// Both closed forms at once: B = e^{−t²x/6}·σ₃ and S = e^{−t²x/6}·σ,
/// from a single Weierstrass bundle.
pub fn sigma_table(k_max: usize) -> BlowupTable {
    let n = k_max.max(2) as i64;
    let bundle = weierstrass::EllipticBundle::new(n);
    let pref = gaussian_prefactor(n);
    let b = &pref * &bundle.sigma3;
    let s = &pref * &bundle.sigma;
    BlowupTable::from_parts(
        k_max,
        normalize_table(&b, k_max),
        normalize_table(&s, k_max),
        Pipeline::Sigma,
    )
}

/// B via the Weierstrass closed form B = e^{−t²x/6}·σ₃(t).
pub fn b_table_sigma(k_max: usize) -> BlowupTable {
    let full = sigma_table(k_max);
    BlowupTable::from_parts(k_max, full.b, Vec::new(), Pipeline::Sigma)
}

/// S via the Weierstrass closed form S = e^{−t²x/6}·σ(t).
pub fn s_table_sigma(k_max: usize) -> BlowupTable {
    let full = sigma_table(k_max);
    BlowupTable::from_parts(k_max, Vec::new(), full.s, Pipeline::Sigma)
}

/// Errors of the derived pipelines.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TableError {
    /// (B′)² − B″B did not begin t² + …, which would indicate an upstream bug.
    SqrtPrecondition { offset: i64, leading: Poly },
}

impl fmt::Display for TableError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TableError::SqrtPrecondition { offset, leading } => write!(
                f,
                "(B')^2 - B''B begins ({})t^{}, expected t^2",
                leading, offset
            ),
        }
    }
}

impl std::error::Error for TableError {}

/// S via S² = (B′)² − B″B, taking the square root with positive leading
/// term (so S′(0) = +1). The internal B table is built three orders past K
/// so the quotient stays exact through tᴷ.
pub fn s_table_sqrt(k_max: usize) -> Result<BlowupTable, TableError> {
    // t² + … first becomes visible at order 6; never build below that
    let b = plain_series(&b_table_quadratic((k_max + 3).max(6)), TableKind::B);
    let d1 = b.diff();
    let d2 = d1.diff();
    let squared = &(&d1 * &d1) - &(&d2 * &b);
    if squared.offset() != 2 || squared.coeff(2) != Poly::one() {
        return Err(TableError::SqrtPrecondition {
            offset: squared.offset(),
            leading: if squared.is_zero() {
                Poly::zero()
            } else {
                squared.coeff(squared.offset())
            },
        });
    }
    let s = squared.sqrt().expect("precondition just checked");
    Ok(BlowupTable::from_parts(
        k_max,
        Vec::new(),
        normalize_table(&s, k_max),
        Pipeline::SqrtRelation,
    ))
}

/// The two-blowup diagonal residual
/// Σⱼ(−1)ʲC(4,j)B⁽⁴⁻ʲ⁾B⁽ʲ⁾ + 4x·Σⱼ(−1)ʲC(2,j)B⁽²⁻ʲ⁾B⁽ʲ⁾ + 4B²,
/// formed by binomial expansion over products of t-derivatives. It must be
/// the zero series for any valid B table.
pub fn corollary_residual(table: &BlowupTable) -> TruncSeries {
    let b = plain_series(table, TableKind::B);
    let mut derivs = vec![b];
    for _ in 0..4 {
        let next = derivs.last().unwrap().diff();
        derivs.push(next);
    }
    let binom4 = [1i64, -4, 6, -4, 1];
    let binom2 = [1i64, -2, 1];

    let mut quartic = TruncSeries::zero(table.k_max() as i64 - 4);
    for (j, sign) in binom4.iter().enumerate() {
        quartic = &quartic + &(&derivs[4 - j] * &derivs[j]).scale(&integer(*sign));
    }
    let mut quadratic = TruncSeries::zero(table.k_max() as i64 - 2);
    for (j, sign) in binom2.iter().enumerate() {
        quadratic = &quadratic + &(&derivs[2 - j] * &derivs[j]).scale(&integer(*sign));
    }
    let mut r = &quartic + &quadratic.scale_poly(&Poly::monomial(integer(4), 1));
    r = &r + &(&derivs[0] * &derivs[0]).scale(&integer(4));
    r
}

/// True iff the corollary residual of a freshly built table vanishes
/// identically to its truncation order.
pub fn verify_corollary_relation(k_max: usize) -> bool {
    corollary_residual(&b_table_log_ode(k_max)).is_zero()
}

/// One per-k, per-pair comparison outcome.
#[derive(Clone, Debug)]
pub struct Agreement {
    pub kind: TableKind,
    pub k: usize,
    pub left: Pipeline,
    pub right: Pipeline,
    pub pass: bool,
}

/// First disagreeing pair, with the differing polynomials.
#[derive(Clone, Debug)]
pub struct Mismatch {
    pub kind: TableKind,
    pub k: usize,
    pub left: (Pipeline, Poly),
    pub right: (Pipeline, Poly),
}

impl fmt::Display for Mismatch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}_{}: {} gives {}, {} gives {}",
            self.kind.letter(),
            self.k,
            self.left.0,
            self.left.1,
            self.right.0,
            self.right.1
        )
    }
}

/// Deterministic record of a full cross-verification at one order.
#[derive(Clone, Debug)]
pub struct PipelineReport {
    pub k_max: usize,
    pub agreements: Vec<Agreement>,
    pub first_mismatch: Option<Mismatch>,
    pub invariant_failures: Vec<String>,
    pub corollary_ok: bool,
}

impl PipelineReport {
    pub fn pass(&self) -> bool {
        self.first_mismatch.is_none()
            && self.invariant_failures.is_empty()
            && self.corollary_ok
            && self.agreements.iter().all(|a| a.pass)
    }
}

fn seed_and_parity_failures(b: &[Poly], s: &[Poly]) -> Vec<String> {
    let mut failures = Vec::new();
    let mut expect = |cond: bool, msg: String| {
        if !cond {
            failures.push(msg);
        }
    };

    expect(b[0] == Poly::one(), "B_0 != 1".into());
    for k in 1..=3.min(b.len() - 1) {
        expect(b[k].is_zero(), format!("B_{} != 0", k));
    }
    if !s.is_empty() {
        expect(s[0].is_zero(), "S_0 != 0".into());
        if s.len() > 1 {
            expect(s[1] == Poly::one(), "S_1 != 1".into());
        }
    }
    for (k, p) in b.iter().enumerate() {
        if k % 2 == 1 {
            expect(p.is_zero(), format!("odd-index B_{} != 0", k));
        } else {
            // x-parity: B_k(−x) = (−1)^{k/2}·B_k(x)
            let reflected = p.substitute_neg_x();
            let signed = if (k / 2) % 2 == 0 { p.clone() } else { -p };
            expect(reflected == signed, format!("B_{} x-parity violated", k));
            if k >= 4 {
                let bound = k / 2 - 2;
                expect(
                    p.degree().is_none_or(|d| d <= bound),
                    format!("deg B_{} exceeds {}", k, bound),
                );
            }
        }
    }
    for (k, p) in s.iter().enumerate() {
        if k % 2 == 0 {
            expect(p.is_zero(), format!("even-index S_{} != 0", k));
        } else {
            // x-parity: S_k(−x) = (−1)^{(k−1)/2}·S_k(x)
            let reflected = p.substitute_neg_x();
            let signed = if ((k - 1) / 2) % 2 == 0 {
                p.clone()
            } else {
                -p
            };
            expect(reflected == signed, format!("S_{} x-parity violated", k));
            let bound = (k - 1) / 2;
            expect(
                p.degree().is_none_or(|d| d <= bound),
                format!("deg S_{} exceeds {}", k, bound),
            );
        }
    }
    failures
}

/// Build every pipeline at order K, compare coefficientwise, check the seed
/// and parity invariants, and run the corollary residual. Failures land in
/// the report; nothing panics.
pub fn crosscheck(k_max: usize) -> PipelineReport {
    let ode = b_table_log_ode(k_max);
    let quad = b_table_quadratic(k_max);
    let sigma = sigma_table(k_max);
    let sqrt = s_table_sqrt(k_max);

    let mut agreements = Vec::new();
    let mut first_mismatch = None;
    let mut invariant_failures = Vec::new();

    let b_pairs: [(&BlowupTable, &BlowupTable); 3] =
        [(&ode, &quad), (&ode, &sigma), (&quad, &sigma)];
    for (left, right) in b_pairs {
        for k in 0..=k_max {
            let pass = left.b[k] == right.b[k];
            agreements.push(Agreement {
                kind: TableKind::B,
                k,
                left: left.pipeline,
                right: right.pipeline,
                pass,
            });
            if !pass && first_mismatch.is_none() {
                first_mismatch = Some(Mismatch {
                    kind: TableKind::B,
                    k,
                    left: (left.pipeline, left.b[k].clone()),
                    right: (right.pipeline, right.b[k].clone()),
                });
            }
        }
    }

    match &sqrt {
        Ok(sqrt) => {
            for k in 0..=k_max {
                let pass = sigma.s[k] == sqrt.s[k];
                agreements.push(Agreement {
                    kind: TableKind::S,
                    k,
                    left: sigma.pipeline,
                    right: sqrt.pipeline,
                    pass,
                });
                if !pass && first_mismatch.is_none() {
                    first_mismatch = Some(Mismatch {
                        kind: TableKind::S,
                        k,
                        left: (sigma.pipeline, sigma.s[k].clone()),
                        right: (sqrt.pipeline, sqrt.s[k].clone()),
                    });
                }
            }
        }
        Err(e) => invariant_failures.push(format!("sqrt-relation pipeline failed: {}", e)),
    }

    invariant_failures.extend(seed_and_parity_failures(&sigma.b, &sigma.s));
    let corollary_ok = corollary_residual(&ode).is_zero();

    PipelineReport {
        k_max,
        agreements,
        first_mismatch,
        invariant_failures,
        corollary_ok,
    }
}

/// Reference value of B₁₂ used as a regression fixture.
pub fn b12_reference() -> Poly {
    Poly::from_integers(&[-408, 0, -960, 0, -512])
}

/// Reference value of B₃₀ used as a regression fixture.
pub fn b30_reference() -> Poly {
    Poly::from_integers(&[
        0,
        543_185_367_552,
        0,
        -9_886_101_110_784,
        0,
        -39_641_047_695_360,
        0,
        -34_608_135_536_640,
        0,
        68_167_925_760,
        0,
        4_630_511_616,
        0,
        134_217_728,
    ])
}

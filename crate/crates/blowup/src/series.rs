//! Truncated formal Laurent/power series in t with `Poly` coefficients.
//!
//! A `TruncSeries` stores exact coefficients for every exponent up to an
//! explicit truncation order N; everything above N is unknown. One
//! representation covers Laurent tails via a signed `offset` (lowest stored
//! exponent), so ℘ (offset −2), ζ (offset −1) and σ (offset +1) all live in
//! the same type.
//!
//! Truncation bookkeeping, stated once and asserted in tests:
//! - add/sub: N = min(N₁, N₂)
//! - mul with offsets (a₁, a₂): N = min(N₁ + a₂, N₂ + a₁)
//! - div: N = min(N₁ − a₂, N₂ + a₁ − 2a₂)
//! - sqrt of (N, a): N − a/2
//! - diff: N − 1;  integrate: N + 1
//!
//! Internal coefficients are plain Taylor coefficients; the factorial
//! normalization B_k = k!·\[tᵏ\] happens once, in the `tables` module.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::polyring::{integer, ratio, Poly, Rational};

/// Errors for the partial series operations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SeriesError {
    /// Division requires the divisor's leading coefficient to be a nonzero
    /// rational constant.
    LeadingNotUnit,
    /// exp requires a series with no constant (or Laurent) part.
    NonzeroConstantTerm,
    /// sqrt requires an even leading exponent.
    OddOffset,
    /// sqrt requires leading coefficient 1 after factoring t^offset.
    LeadingNotOne,
    /// Termwise integration cannot absorb a t⁻¹ term.
    ResidueObstruction,
}

impl fmt::Display for SeriesError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SeriesError::LeadingNotUnit => {
                write!(f, "divisor leading coefficient is not a nonzero constant")
            }
            SeriesError::NonzeroConstantTerm => {
                write!(f, "exp argument has a nonzero constant or Laurent term")
            }
            SeriesError::OddOffset => write!(f, "sqrt argument has odd leading exponent"),
            SeriesError::LeadingNotOne => write!(f, "sqrt argument leading coefficient is not 1"),
            SeriesError::ResidueObstruction => {
                write!(f, "cannot integrate a series with a t^-1 term")
            }
        }
    }
}

impl std::error::Error for SeriesError {}

/// Truncated Laurent series: coefficients for exponents `offset..=trunc`.
///
/// Canonical form: the coefficient at `offset` is nonzero, or the series is
/// identically zero up to truncation (empty vector, `offset == trunc + 1`).
#[derive(Clone, PartialEq, Eq)]
pub struct TruncSeries {
    offset: i64,
    coeffs: Vec<Poly>,
    trunc: i64,
}

fn normalized(offset: i64, mut coeffs: Vec<Poly>, trunc: i64) -> TruncSeries {
    debug_assert_eq!(coeffs.len() as i64, trunc - offset + 1);
    match coeffs.iter().position(|p| !p.is_zero()) {
        None => TruncSeries {
            offset: trunc + 1,
            coeffs: Vec::new(),
            trunc,
        },
        Some(0) => TruncSeries {
            offset,
            coeffs,
            trunc,
        },
        Some(k) => {
            coeffs.drain(..k);
            TruncSeries {
                offset: offset + k as i64,
                coeffs,
                trunc,
            }
        }
    }
}

impl TruncSeries {
    /// The zero series, exact through t^trunc.
    pub fn zero(trunc: i64) -> Self {
        TruncSeries {
            offset: trunc + 1,
            coeffs: Vec::new(),
            trunc,
        }
    }

    /// Series with the given coefficients at exponents `offset`, `offset+1`, …
    /// The truncation order is `offset + coeffs.len() − 1`.
    pub fn new(offset: i64, coeffs: Vec<Poly>) -> Self {
        let trunc = offset + coeffs.len() as i64 - 1;
        normalized(offset, coeffs, trunc)
    }

    /// Constant series `p + O(t^{trunc+1})`.
    pub fn constant(p: Poly, trunc: i64) -> Self {
        Self::monomial(p, 0, trunc)
    }

    /// Monomial series `p·t^exponent + O(t^{trunc+1})`. An exponent beyond
    /// the truncation order leaves nothing visible: the zero series.
    pub fn monomial(p: Poly, exponent: i64, trunc: i64) -> Self {
        if exponent > trunc {
            return TruncSeries::zero(trunc);
        }
        let mut coeffs = vec![Poly::zero(); (trunc - exponent + 1) as usize];
        coeffs[0] = p;
        normalized(exponent, coeffs, trunc)
    }

    /// Lowest stored exponent. For the zero series this is `trunc + 1`.
    pub fn offset(&self) -> i64 {
        self.offset
    }

    /// Exponents `<= truncation()` are exact.
    pub fn truncation(&self) -> i64 {
        self.trunc
    }

    /// True when every known coefficient vanishes.
    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Coefficient of t^exponent. Panics above the truncation order.
    pub fn coeff(&self, exponent: i64) -> Poly {
        assert!(
            exponent <= self.trunc,
            "coefficient of t^{} requested beyond truncation O(t^{})",
            exponent,
            self.trunc + 1
        );
        if exponent < self.offset {
            return Poly::zero();
        }
        self.coeffs[(exponent - self.offset) as usize].clone()
    }

    /// Multiply by t^k: shifts offset and truncation together.
    pub fn shift(&self, k: i64) -> Self {
        TruncSeries {
            offset: self.offset + k,
            coeffs: self.coeffs.clone(),
            trunc: self.trunc + k,
        }
    }

    /// Coefficient-wise multiplication by a polynomial scalar.
    pub fn scale_poly(&self, p: &Poly) -> Self {
        if p.is_zero() {
            return TruncSeries::zero(self.trunc);
        }
        TruncSeries {
            offset: self.offset,
            coeffs: self.coeffs.iter().map(|c| c * p).collect(),
            trunc: self.trunc,
        }
    }

    /// Coefficient-wise multiplication by a rational scalar.
    pub fn scale(&self, c: &Rational) -> Self {
        self.scale_poly(&Poly::constant(c.clone()))
    }

    /// Forget exactness above t^n (n must not exceed the truncation).
    pub fn truncate(&self, n: i64) -> Self {
        assert!(n <= self.trunc, "cannot raise truncation order");
        if n < self.offset {
            return TruncSeries::zero(n);
        }
        let keep = (n - self.offset + 1) as usize;
        normalized(self.offset, self.coeffs[..keep].to_vec(), n)
    }

    /// Coefficientwise equality through t^n (both series must be exact there).
    pub fn eq_through(&self, other: &TruncSeries, n: i64) -> bool {
        assert!(
            self.trunc >= n && other.trunc >= n,
            "series not exact through t^{}",
            n
        );
        let start = self.offset.min(other.offset);
        if start > n {
            return true;
        }
        (start..=n).all(|e| self.coeff(e) == other.coeff(e))
    }

    /// Quotient `self / g`; the divisor's leading coefficient must be a
    /// nonzero rational constant (a unit of Q).
    pub fn div(&self, g: &TruncSeries) -> Result<TruncSeries, SeriesError> {
        if g.is_zero() {
            return Err(SeriesError::LeadingNotUnit);
        }
        let lead = &g.coeffs[0];
        if lead.degree() != Some(0) {
            return Err(SeriesError::LeadingNotUnit);
        }
        let inv_lead = integer(1) / lead.coeff(0);
        let (af, ag) = (self.offset, g.offset);
        let trunc = (self.trunc - ag).min(g.trunc + af - 2 * ag);
        if self.is_zero() {
            return Ok(TruncSeries::zero(self.trunc - ag));
        }
        let offset = af - ag;
        let len = (trunc - offset + 1) as usize;
        let mut out: Vec<Poly> = Vec::with_capacity(len);
        for i in 0..len as i64 {
            let mut acc = self.coeff(af + i);
            for j in 0..i {
                let gk = g.coeff(ag + i - j);
                if gk.is_zero() {
                    continue;
                }
                acc = &acc - &(&out[j as usize] * &gk);
            }
            out.push(acc.scale(&inv_lead));
        }
        Ok(normalized(offset, out, trunc))
    }

    /// exp of a series with zero constant term, via (exp f)' = f'·exp f.
    pub fn exp(&self) -> Result<TruncSeries, SeriesError> {
        if self.is_zero() {
            return Ok(TruncSeries::constant(Poly::one(), self.trunc));
        }
        if self.offset < 1 {
            return Err(SeriesError::NonzeroConstantTerm);
        }
        let n = self.trunc; // nonzero input with offset ≥ 1 forces n ≥ 1
        let mut out = vec![Poly::zero(); (n + 1) as usize];
        out[0] = Poly::one();
        for m in 1..=n {
            // m·e_m = Σ_{k=1..m} k·f_k·e_{m−k}
            let mut acc = Poly::zero();
            for k in self.offset..=m {
                let fk = self.coeff(k);
                if fk.is_zero() {
                    continue;
                }
                acc = &acc + &(&fk * &out[(m - k) as usize]).scale(&integer(k));
            }
            out[m as usize] = acc.scale(&ratio(1, m));
        }
        Ok(normalized(0, out, n))
    }

    /// The square root with leading coefficient +1. Requires an even leading
    /// exponent and leading coefficient exactly 1 after factoring t^offset.
    pub fn sqrt(&self) -> Result<TruncSeries, SeriesError> {
        if self.is_zero() {
            return Ok(TruncSeries::zero(self.trunc));
        }
        if self.offset % 2 != 0 {
            return Err(SeriesError::OddOffset);
        }
        if self.coeffs[0] != Poly::one() {
            return Err(SeriesError::LeadingNotOne);
        }
        let a = self.offset;
        let n = self.trunc - a; // orders of the unit factor
        let mut out = vec![Poly::zero(); (n + 1) as usize];
        out[0] = Poly::one();
        let half = ratio(1, 2);
        for m in 1..=n {
            // u_m = Σ_{j=0..m} r_j r_{m−j}  ⇒  r_m = (u_m − Σ_{0<j<m} r_j r_{m−j})/2
            let mut acc = self.coeff(a + m);
            for j in 1..m {
                let rj = &out[j as usize];
                if rj.is_zero() {
                    continue;
                }
                acc = &acc - &(rj * &out[(m - j) as usize]);
            }
            out[m as usize] = acc.scale(&half);
        }
        Ok(normalized(0, out, n).shift(a / 2))
    }

    /// Termwise derivative d/dt; the truncation order drops by one.
    pub fn diff(&self) -> TruncSeries {
        if self.is_zero() {
            return TruncSeries::zero(self.trunc - 1);
        }
        let offset = self.offset - 1;
        let trunc = self.trunc - 1;
        let mut out = vec![Poly::zero(); (trunc - offset + 1) as usize];
        for (i, p) in self.coeffs.iter().enumerate() {
            let e = self.offset + i as i64;
            if e == 0 || p.is_zero() {
                continue;
            }
            out[(e - 1 - offset) as usize] = p.scale(&integer(e));
        }
        normalized(offset, out, trunc)
    }

    /// Termwise antiderivative with the supplied constant term; the
    /// truncation order rises by one. Fails on a nonzero t⁻¹ coefficient.
    pub fn integrate(&self, constant: &Poly) -> Result<TruncSeries, SeriesError> {
        if self.offset <= -1 && -1 <= self.trunc && !self.coeff(-1).is_zero() {
            return Err(SeriesError::ResidueObstruction);
        }
        let trunc = self.trunc + 1;
        let offset = (self.offset + 1).min(0);
        let mut out = vec![Poly::zero(); (trunc - offset + 1) as usize];
        out[(-offset) as usize] = constant.clone();
        for (i, p) in self.coeffs.iter().enumerate() {
            let e = self.offset + i as i64;
            if e == -1 || p.is_zero() {
                continue;
            }
            out[(e + 1 - offset) as usize] = p.scale(&ratio(1, e + 1));
        }
        Ok(normalized(offset, out, trunc))
    }
}

impl Add for &TruncSeries {
    type Output = TruncSeries;
    fn add(self, rhs: &TruncSeries) -> TruncSeries {
        let trunc = self.trunc.min(rhs.trunc);
        let offset = self.offset.min(rhs.offset).min(trunc + 1);
        let mut out = Vec::with_capacity((trunc - offset + 1).max(0) as usize);
        for e in offset..=trunc {
            out.push(&self.coeff(e) + &rhs.coeff(e));
        }
        normalized(offset, out, trunc)
    }
}

impl Sub for &TruncSeries {
    type Output = TruncSeries;
    fn sub(self, rhs: &TruncSeries) -> TruncSeries {
        self + &(-rhs)
    }
}

impl Neg for &TruncSeries {
    type Output = TruncSeries;
    fn neg(self) -> TruncSeries {
        TruncSeries {
            offset: self.offset,
            coeffs: self.coeffs.iter().map(|p| -p).collect(),
            trunc: self.trunc,
        }
    }
}

impl Mul for &TruncSeries {
    type Output = TruncSeries;
    fn mul(self, rhs: &TruncSeries) -> TruncSeries {
        let trunc = (self.trunc + rhs.offset).min(rhs.trunc + self.offset);
        if self.is_zero() || rhs.is_zero() {
            return TruncSeries::zero(trunc);
        }
        let offset = self.offset + rhs.offset;
        let mut out = vec![Poly::zero(); (trunc - offset + 1) as usize];
        for (i, p) in self.coeffs.iter().enumerate() {
            if p.is_zero() {
                continue;
            }
            let ei = self.offset + i as i64 + rhs.offset;
            for (j, q) in rhs.coeffs.iter().enumerate() {
                let e = ei + j as i64;
                if e > trunc {
                    break;
                }
                if q.is_zero() {
                    continue;
                }
                out[(e - offset) as usize] += &(p * q);
            }
        }
        normalized(offset, out, trunc)
    }
}

impl fmt::Display for TruncSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, p) in self.coeffs.iter().enumerate() {
            if p.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let e = self.offset + i as i64;
            if e == 0 {
                write!(f, "({})", p)?;
            } else {
                write!(f, "({})t^{}", p, e)?;
            }
        }
        if first {
            write!(f, "0")?;
        }
        write!(f, " + O(t^{})", self.trunc + 1)
    }
}

impl fmt::Debug for TruncSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "TruncSeries({})", self)
    }
}

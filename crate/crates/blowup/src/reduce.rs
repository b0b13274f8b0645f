//! Applying the blowup tables: reduce a product of exceptional-class powers
//! on a multiple blowup to a single polynomial in x, and specialize to the
//! simple-type regime.
//!
//! A query carries one exponent per exceptional class plus a twist flag
//! (whether that class participates in the w₂ lift). Each class contributes
//! the factor B_k (untwisted) or S_k (twisted); the base invariant itself is
//! deliberately not modeled — the result is the polynomial factor to be
//! placed inside it.
//!
//! Simple type means x acts as multiplication by 2. In that regime the
//! generating functions degenerate to elementary series:
//! B(2,t) = e^{−t²/2}·cosh t and S(2,t) = e^{−t²/2}·sinh t, which
//! `simple_type_series` computes over bare rationals as a fully independent
//! oracle for the x = 2 column of any table.

use std::fmt;

use num_traits::Zero;

use crate::polyring::{factorial, integer, ratio, Poly, Rational};
use crate::tables::{BlowupTable, TableKind};

/// A multi-blowup monomial query: one (exponent, twist) pair per
/// exceptional class.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExceptionalMonomial {
    exponents: Vec<usize>,
    twisted: Vec<bool>,
}

impl ExceptionalMonomial {
    pub fn new(exponents: Vec<usize>, twisted: Vec<bool>) -> Self {
        assert_eq!(
            exponents.len(),
            twisted.len(),
            "one twist flag per exceptional class"
        );
        ExceptionalMonomial { exponents, twisted }
    }

    pub fn blowup_count(&self) -> usize {
        self.exponents.len()
    }

    pub fn max_exponent(&self) -> usize {
        self.exponents.iter().copied().max().unwrap_or(0)
    }

    pub fn factors(&self) -> impl Iterator<Item = (usize, bool)> + '_ {
        self.exponents
            .iter()
            .copied()
            .zip(self.twisted.iter().copied())
    }
}

/// The reduced polynomial, with a flag for parity-forced vanishing.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReductionResult {
    pub polynomial: Poly,
    pub vanishes: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ReduceError {
    TableTooSmall { kind: TableKind, required: usize },
}

impl fmt::Display for ReduceError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ReduceError::TableTooSmall { kind, required } => {
                write!(f, "table does not provide {}_{}", kind.letter(), required)
            }
        }
    }
}

impl std::error::Error for ReduceError {}

/// ∏ᵢ B_{kᵢ} over untwisted classes times ∏ᵢ S_{kᵢ} over twisted ones.
/// `vanishes` is set exactly when some untwisted exponent is odd or some
/// twisted exponent is even (including the degenerate S₀ = 0 case).
pub fn reduce_monomial(
    q: &ExceptionalMonomial,
    table: &BlowupTable,
) -> Result<ReductionResult, ReduceError> {
    let mut polynomial = Poly::one();
    let mut vanishes = false;
    for (k, tw) in q.factors() {
        let kind = if tw { TableKind::S } else { TableKind::B };
        let factor = table
            .poly(kind, k)
            .ok_or(ReduceError::TableTooSmall { kind, required: k })?;
        if tw {
            vanishes |= k % 2 == 0;
        } else {
            vanishes |= k % 2 == 1;
        }
        polynomial = &polynomial * factor;
    }
    // parity forces zero; the converse fails for seed zeros like B_2
    debug_assert!(!vanishes || polynomial.is_zero());
    Ok(ReductionResult {
        polynomial,
        vanishes,
    })
}

/// Evaluation at x = 2, the simple-type specialization.
pub fn simple_type_specialize(p: &Poly) -> Rational {
    p.eval(&integer(2))
}

/// k!·\[tᵏ\] of e^{−t²/2}·cosh t (kind B) or e^{−t²/2}·sinh t (kind S) for
/// k = 0..=k_max, by direct convolution of the explicit coefficient
/// sequences over `Rational` alone — independent of the series engine.
pub fn simple_type_series(kind: TableKind, k_max: usize) -> Vec<Rational> {
    let mut gauss = vec![Rational::zero(); k_max + 1];
    let mut term = integer(1);
    let mut m = 0usize;
    while 2 * m <= k_max {
        gauss[2 * m] = term.clone();
        m += 1;
        term = term * ratio(-1, 2) / integer(m as i64); // (−1/2)^m / m!
    }

    let mut hyperbolic = vec![Rational::zero(); k_max + 1];
    let start = match kind {
        TableKind::B => 0, // cosh: 1/(2m)!
        TableKind::S => 1, // sinh: 1/(2m+1)!
    };
    let mut e = start;
    while e <= k_max {
        hyperbolic[e] = integer(1) / factorial(e);
        e += 2;
    }

    (0..=k_max)
        .map(|k| {
            let mut acc = Rational::zero();
            for i in 0..=k {
                if !gauss[i].is_zero() && !hyperbolic[k - i].is_zero() {
                    acc += &gauss[i] * &hyperbolic[k - i];
                }
            }
            acc * factorial(k)
        })
        .collect()
}

/// Assert the x = 2 column of a table against the elementary-series oracle:
/// B_k(2) and S_k(2) for all k ≤ k_max. The table must carry both sides.
pub fn simple_type_crosscheck(k_max: usize, table: &BlowupTable) -> bool {
    assert!(table.k_max() >= k_max, "table shorter than requested check");
    let two = integer(2);
    let b_oracle = simple_type_series(TableKind::B, k_max);
    let s_oracle = simple_type_series(TableKind::S, k_max);
    (0..=k_max).all(|k| {
        table
            .poly(TableKind::B, k)
            .is_some_and(|p| p.eval(&two) == b_oracle[k])
            && table
                .poly(TableKind::S, k)
                .is_some_and(|p| p.eval(&two) == s_oracle[k])
    })
}

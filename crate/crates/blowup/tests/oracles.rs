//! Independent small-order oracles.
//!
//! Everything in this file recomputes low-order table values with its own
//! throwaway arithmetic — dense `Vec<Rational>` polynomials and
//! `Vec<Vec<Rational>>` series, nested loops, no library series code — and
//! then checks the real pipelines against the frozen results. If the engine
//! and these twenty-line loops ever disagree, the engine is wrong.

use blowup::polyring::{factorial, integer, ratio, Poly, Rational};
use blowup::tables;
use num_traits::Zero;

/// Brute polynomial in x: dense coefficient vector, index = power.
type BrutePoly = Vec<Rational>;

fn bp_zero() -> BrutePoly {
    Vec::new()
}

fn bp_const(c: Rational) -> BrutePoly {
    vec![c]
}

fn bp_get(p: &BrutePoly, i: usize) -> Rational {
    p.get(i).cloned().unwrap_or_else(Rational::zero)
}

fn bp_add(a: &BrutePoly, b: &BrutePoly) -> BrutePoly {
    (0..a.len().max(b.len()))
        .map(|i| bp_get(a, i) + bp_get(b, i))
        .collect()
}

fn bp_scale(a: &BrutePoly, c: &Rational) -> BrutePoly {
    a.iter().map(|x| x * c).collect()
}

fn bp_mul(a: &BrutePoly, b: &BrutePoly) -> BrutePoly {
    if a.is_empty() || b.is_empty() {
        return bp_zero();
    }
    let mut out = vec![Rational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

fn bp_eq(a: &BrutePoly, b: &Poly) -> bool {
    let n = a.len().max(b.coeffs().len());
    (0..n).all(|i| bp_get(a, i) == b.coeff(i))
}

#[test]
fn brute_discriminant_combination() {
    // g2^3 - 27 g3^2 expanded with the brute multiplier alone
    let g2: BrutePoly = vec![integer(-4), integer(0), ratio(4, 3)];
    let g3: BrutePoly = vec![integer(0), ratio(-4, 3), integer(0), ratio(8, 27)];
    let g2cubed = bp_mul(&bp_mul(&g2, &g2), &g2);
    let result = bp_add(&g2cubed, &bp_scale(&bp_mul(&g3, &g3), &integer(-27)));
    assert!(bp_eq(&result, &Poly::from_integers(&[-64, 0, 16])));
}

/// Brute Taylor solution of u'' = -6u^2 - 4xu - 2, u(0) = u'(0) = 0,
/// through t^top. Index = power of t.
fn brute_u(top: usize) -> Vec<BrutePoly> {
    let minus_four_x = vec![integer(0), integer(-4)];
    let mut u = vec![bp_zero(); top + 1];
    for n in 0..=top.saturating_sub(2) {
        let mut rhs = bp_zero();
        for j in 0..=n {
            rhs = bp_add(&rhs, &bp_mul(&u[j], &u[n - j]));
        }
        rhs = bp_scale(&rhs, &integer(-6));
        rhs = bp_add(&rhs, &bp_mul(&minus_four_x, &u[n]));
        if n == 0 {
            rhs = bp_add(&rhs, &bp_const(integer(-2)));
        }
        u[n + 2] = bp_scale(&rhs, &ratio(1, ((n + 1) * (n + 2)) as i64));
    }
    u
}

/// B-series coefficients [t^k]exp(f) through t^top, f = double integral of u.
fn brute_b_series(top: usize) -> Vec<BrutePoly> {
    let u = brute_u(top.saturating_sub(2));
    let mut f = vec![bp_zero(); top + 1];
    for m in 2..=top {
        f[m] = bp_scale(&u[m - 2], &ratio(1, ((m - 1) * m) as i64));
    }
    // exp by direct powers: f starts at t^4, so f^n starts at t^{4n}
    let mut b = vec![bp_zero(); top + 1];
    b[0] = bp_const(integer(1));
    let mut power = {
        let mut one = vec![bp_zero(); top + 1];
        one[0] = bp_const(integer(1));
        one
    };
    let mut n = 0usize;
    loop {
        n += 1;
        if 4 * n > top {
            break;
        }
        // power <- power * f, truncated at top
        let mut next = vec![bp_zero(); top + 1];
        for i in 0..=top {
            for j in 0..=top - i {
                if power[i].is_empty() || f[j].is_empty() {
                    continue;
                }
                next[i + j] = bp_add(&next[i + j], &bp_mul(&power[i], &f[j]));
            }
        }
        power = next;
        let inv_fact = integer(1) / factorial(n);
        for k in 0..=top {
            b[k] = bp_add(&b[k], &bp_scale(&power[k], &inv_fact));
        }
    }
    b
}

#[test]
fn brute_log_ode_low_orders() {
    let u = brute_u(6);
    // u = -t^2 + (x/3)t^4 - (2x^2/45 + 1/5)t^6 + O(t^8)
    assert!(bp_eq(&u[2], &Poly::from_integers(&[-1])));
    assert!(bp_eq(&u[3], &Poly::zero()));
    assert!(bp_eq(&u[4], &Poly::monomial(ratio(1, 3), 1)));
    assert!(bp_eq(
        &u[6],
        &Poly::from_coeffs(vec![ratio(-1, 5), integer(0), ratio(-2, 45)])
    ));

    let b = brute_b_series(10);
    let table: Vec<Poly> = (0..=10)
        .map(|k| {
            Poly::from_coeffs(
                (0..b[k].len())
                    .map(|i| bp_get(&b[k], i) * factorial(k))
                    .collect(),
            )
        })
        .collect();
    assert_eq!(table[0], Poly::one());
    assert!(table[1].is_zero() && table[2].is_zero() && table[3].is_zero());
    assert_eq!(table[4], Poly::from_integers(&[-2]));
    assert_eq!(table[6], Poly::from_integers(&[0, 8]));
    assert_eq!(table[8], Poly::from_integers(&[-4, 0, -32]));
}

#[test]
fn pipelines_match_brute_oracle() {
    let b = brute_b_series(10);
    for t in [
        tables::b_table_log_ode(10),
        tables::b_table_quadratic(10),
        tables::b_table_sigma(10),
    ] {
        for k in 0..=10usize {
            let expected = bp_scale(&b[k], &factorial(k));
            assert!(
                bp_eq(&expected, &t.b_polys()[k]),
                "pipeline {} disagrees with brute oracle at k = {}",
                t.pipeline(),
                k
            );
        }
    }
}

/// Brute S via S^2 = (B')^2 - B''B: derivative arrays, one convolution,
/// and the unit-series square-root recurrence.
fn brute_s_series(top: usize) -> Vec<BrutePoly> {
    let btop = top + 3;
    let b = brute_b_series(btop);
    let d1: Vec<BrutePoly> = (0..btop)
        .map(|m| bp_scale(&b[m + 1], &integer((m + 1) as i64)))
        .collect();
    let d2: Vec<BrutePoly> = (0..btop - 1)
        .map(|m| bp_scale(&b[m + 2], &integer(((m + 1) * (m + 2)) as i64)))
        .collect();
    let gtop = top + 1; // exact range of (B')^2 - B''B here
    let mut g = vec![bp_zero(); gtop + 1];
    for m in 0..=gtop {
        for i in 0..=m {
            let j = m - i;
            if i < d1.len() && j < d1.len() {
                g[m] = bp_add(&g[m], &bp_mul(&d1[i], &d1[j]));
            }
            if i < d2.len() {
                g[m] = bp_add(&g[m], &bp_scale(&bp_mul(&d2[i], &b[j]), &integer(-1)));
            }
        }
    }
    assert!(g[0].is_empty() && g[1].is_empty());
    assert!(bp_eq(&g[2], &Poly::one()), "leading behavior is t^2 + ...");
    // unit square root of U_m = g_{m+2}
    let utop = gtop - 2;
    let mut r = vec![bp_zero(); utop + 1];
    r[0] = bp_const(integer(1));
    for m in 1..=utop {
        let mut acc = g[m + 2].clone();
        for j in 1..m {
            acc = bp_add(&acc, &bp_scale(&bp_mul(&r[j], &r[m - j]), &integer(-1)));
        }
        r[m] = bp_scale(&acc, &ratio(1, 2));
    }
    // S = t·r
    let mut s = vec![bp_zero(); utop + 2];
    for (m, rm) in r.into_iter().enumerate() {
        s[m + 1] = rm;
    }
    s
}

#[test]
fn brute_sqrt_route_low_orders() {
    let s = brute_s_series(7);
    let table: Vec<Poly> = (0..=7)
        .map(|k| {
            Poly::from_coeffs(
                (0..s[k].len())
                    .map(|i| bp_get(&s[k], i) * factorial(k))
                    .collect(),
            )
        })
        .collect();
    assert!(table[0].is_zero() && table[2].is_zero());
    assert_eq!(table[1], Poly::one());
    assert_eq!(table[3], Poly::from_integers(&[0, -1]));
    assert_eq!(table[5], Poly::from_integers(&[2, 0, 1]));

    let sigma = tables::s_table_sigma(7);
    for k in 0..=7usize {
        assert_eq!(
            table[k],
            sigma.s_polys()[k],
            "sigma route disagrees at k = {}",
            k
        );
    }
}

/// Brute Laurent polynomial in t: an unnormalized term list.
type BruteLaurent = Vec<(i64, BrutePoly)>;

fn bl_mul(a: &BruteLaurent, b: &BruteLaurent) -> BruteLaurent {
    let mut out = Vec::new();
    for (ea, pa) in a {
        for (eb, pb) in b {
            out.push((ea + eb, bp_mul(pa, pb)));
        }
    }
    out
}

fn bl_scale(a: &BruteLaurent, c: &Rational) -> BruteLaurent {
    a.iter().map(|(e, p)| (*e, bp_scale(p, c))).collect()
}

fn bl_diff(a: &BruteLaurent) -> BruteLaurent {
    a.iter()
        .map(|(e, p)| (e - 1, bp_scale(p, &integer(*e))))
        .collect()
}

fn bl_coeff(a: &BruteLaurent, exponent: i64) -> BrutePoly {
    let mut acc = bp_zero();
    for (e, p) in a {
        if *e == exponent {
            acc = bp_add(&acc, p);
        }
    }
    acc
}

#[test]
fn brute_pe_undetermined_coefficients() {
    // substitute the ansatz p = t^-2 + a t^2 + b t^4 into the residual
    // (p')^2 - 4p^3 + g2 p + g3 and expand it exactly: the orders t^-6..t^0
    // all vanish precisely for a = g2/20, b = g3/28
    let g2: BrutePoly = vec![integer(-4), integer(0), ratio(4, 3)];
    let g3: BrutePoly = vec![integer(0), ratio(-4, 3), integer(0), ratio(8, 27)];

    let residual_low_orders = |a: &BrutePoly, b: &BrutePoly| -> Vec<BrutePoly> {
        let p: BruteLaurent = vec![(-2, bp_const(integer(1))), (2, a.clone()), (4, b.clone())];
        let dp = bl_diff(&p);
        let mut r = bl_mul(&dp, &dp);
        r.extend(bl_scale(&bl_mul(&bl_mul(&p, &p), &p), &integer(-4)));
        r.extend(p.iter().map(|(e, c)| (*e, bp_mul(c, &g2))));
        r.push((0, g3.clone()));
        [-6, -5, -4, -3, -2, -1, 0]
            .iter()
            .map(|&e| bl_coeff(&r, e))
            .collect()
    };

    let a = bp_scale(&g2, &ratio(1, 20));
    let b = bp_scale(&g3, &ratio(1, 28));
    for (i, c) in residual_low_orders(&a, &b).iter().enumerate() {
        assert!(
            c.iter().all(|v| v.is_zero()),
            "residual order {} nonzero",
            i as i64 - 6
        );
    }
    // a wrong normalization leaves a nonzero order
    let wrong = bp_scale(&g2, &ratio(1, 21));
    assert!(residual_low_orders(&wrong, &b)
        .iter()
        .any(|c| c.iter().any(|v| !v.is_zero())));

    // the engine's ℘ carries exactly the verified coefficients
    let pe = blowup::weierstrass::pe_series(6);
    assert!(bp_eq(&a, &pe.coeff(2)));
    assert!(bp_eq(&b, &pe.coeff(4)));
}

#[test]
fn simple_type_hand_values() {
    // 4!·(1/24 − 1/4 + 1/8) = −2 and 3!·(1/6 − 1/2) = −2
    let quartic = (ratio(1, 24) - ratio(1, 4) + ratio(1, 8)) * factorial(4);
    assert_eq!(quartic, integer(-2));
    let cubic = (ratio(1, 6) - ratio(1, 2)) * factorial(3);
    assert_eq!(cubic, integer(-2));
    assert_eq!(
        blowup::reduce::simple_type_series(blowup::TableKind::B, 4)[4],
        integer(-2)
    );
    assert_eq!(
        blowup::reduce::simple_type_series(blowup::TableKind::S, 3)[3],
        integer(-2)
    );
}

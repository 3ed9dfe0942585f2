//! Faber coefficients, partial Bell sums and the Faber form of the inverse map.
//!
//! `K_n^p` is the coefficient of `z^n` in `(f(z)/z)^p`. Here it is expanded as
//! `sum_{m=1}^{n} C(p, m) B_n^m(a_2, a_3, ...)`, where `B_n^m` is the partial
//! Bell sum over multi-indices in the shifted variables `x_k = a_{k+1}`. The
//! series power in [`crate::series`] gives the same number by an unrelated
//! route and is used to check it.

use num_bigint::BigInt;
use num_traits::One;

use crate::error::FaberError;
use crate::scalar::{Exponent, Rational, Scalar};
use crate::series::Series;

/// All multi-indices `(i_1, ..., i_n)` of non-negative integers with
/// `i_1 + ... + i_n = m` and `1 i_1 + 2 i_2 + ... + n i_n = n`.
pub fn multi_indices(n: usize, m: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if n == 0 {
        if m == 0 {
            out.push(Vec::new());
        }
        return out;
    }
    let mut current = vec![0usize; n];
    descend(n, n, m, &mut current, &mut out);
    out
}

// Chooses i_k for k = part, part-1, ..., 1.
fn descend(part: usize, weight: usize, count: usize, cur: &mut [usize], out: &mut Vec<Vec<usize>>) {
    if part == 1 {
        if weight == count {
            cur[0] = count;
            out.push(cur.to_vec());
            cur[0] = 0;
        }
        return;
    }
    // each remaining part weighs at least 1, so at most `weight - count`
    // surplus can sit in parts larger than 1
    if weight < count {
        return;
    }
    let max_here = ((weight - count) / (part - 1)).min(count);
    for i in 0..=max_here {
        cur[part - 1] = i;
        descend(part - 1, weight - i * part, count - i, cur, out);
    }
    cur[part - 1] = 0;
}

/// `m! / (i_1! ... i_n!)`.
pub fn multinomial(indices: &[usize]) -> BigInt {
    let m: usize = indices.iter().sum();
    let mut num = factorial(m);
    for &i in indices {
        num /= factorial(i);
    }
    num
}

pub fn factorial(k: usize) -> BigInt {
    (1..=k).fold(BigInt::one(), |acc, j| acc * BigInt::from(j))
}

/// Partial Bell sum `sum m!/(i_1!...i_n!) x_1^{i_1} ... x_n^{i_n}` over
/// [`multi_indices`]`(n, m)`; `vars[k - 1]` holds `x_k`.
pub fn partial_bell<C: Scalar>(n: usize, m: usize, vars: &[C]) -> Result<C, FaberError> {
    if vars.len() < n {
        return Err(FaberError::MissingVariables { needed: n, got: vars.len() });
    }
    let mut total = C::zero();
    for idx in multi_indices(n, m) {
        let mut term = C::from_rational(&Rational::from_integer(multinomial(&idx)));
        for (k, &i) in idx.iter().enumerate() {
            for _ in 0..i {
                term = term * vars[k].clone();
            }
        }
        total = total + term;
    }
    Ok(total)
}

/// Query for the Bell sum `D_n^m(a_1, ..., a_n)` with `a_1 = 1`.
#[derive(Debug, Clone)]
pub struct BellQuery<C> {
    n: usize,
    m: usize,
    a: Vec<C>,
}

impl<C: Scalar> BellQuery<C> {
    pub fn new(n: usize, m: usize, a: Vec<C>) -> Result<Self, FaberError> {
        if m < 1 || m > n {
            return Err(FaberError::PartCount { n, m });
        }
        if a.len() < n {
            return Err(FaberError::MissingVariables { needed: n, got: a.len() });
        }
        if !a[0].is_one() {
            return Err(FaberError::LeadingVariable);
        }
        Ok(BellQuery { n, m, a })
    }

    /// Reads `a_1..a_n` off a normalized series.
    pub fn from_series(n: usize, m: usize, f: &Series<C>) -> Result<Self, FaberError> {
        if f.order() < n {
            return Err(FaberError::IndexBeyondOrder { n, needed: n, order: f.order() });
        }
        Self::new(n, m, f.coeffs()[1..=n].to_vec())
    }
}

/// `D_n^m` by exhaustive multi-index enumeration.
pub fn bell_d<C: Scalar>(q: &BellQuery<C>) -> Result<C, FaberError> {
    partial_bell(q.n, q.m, &q.a)
}

/// Query for the Faber coefficient `K_n^p` of a normalized series.
#[derive(Debug, Clone)]
pub struct FaberQuery<'a, C> {
    n: usize,
    p: Exponent,
    f: &'a Series<C>,
}

impl<'a, C: Scalar> FaberQuery<'a, C> {
    pub fn new(f: &'a Series<C>, n: usize, p: impl Into<Exponent>) -> Result<Self, FaberError> {
        let p = p.into();
        if p.is_zero() {
            return Err(FaberError::ZeroExponent);
        }
        if !f.is_normalized() {
            return Err(FaberError::Series(crate::SeriesError::NotNormalized));
        }
        // K_n^p reads a_2..a_{n+1}
        if f.order() < n + 1 {
            return Err(FaberError::IndexBeyondOrder { n, needed: n + 1, order: f.order() });
        }
        Ok(FaberQuery { n, p, f })
    }
}

/// `K_n^p = sum_{m=1}^{n} C(p, m) B_n^m(a_2, ..., a_{n+1})`.
pub fn faber_k<C: Scalar>(q: &FaberQuery<'_, C>) -> Result<C, FaberError> {
    if q.n == 0 {
        return Ok(C::one());
    }
    let p = C::from_exponent(&q.p)?;
    let shifted = &q.f.coeffs()[2..=q.n + 1];
    let mut total = C::zero();
    let mut binom = C::one();
    for m in 1..=q.n {
        binom = binom * (p.clone() - C::from_int(m as i64 - 1)) / C::from_int(m as i64);
        total = total + binom.clone() * partial_bell(q.n, m, shifted)?;
    }
    Ok(total)
}

/// Coefficients of `f^{-1}` through `z^order` from `b_n = K_{n-1}^{-n} / n`.
pub fn inverse_coeffs<C: Scalar>(f: &Series<C>, order: usize) -> Result<Series<C>, FaberError> {
    if !f.is_normalized() {
        return Err(FaberError::Series(crate::SeriesError::NotNormalized));
    }
    if order > f.order() {
        return Err(FaberError::IndexBeyondOrder { n: order, needed: order, order: f.order() });
    }
    let mut coeffs = vec![C::zero(); order + 1];
    if order >= 1 {
        coeffs[1] = C::one();
    }
    for (n, b) in coeffs.iter_mut().enumerate().skip(2) {
        let k = faber_k(&FaberQuery::new(f, n - 1, -(n as i64))?)?;
        *b = k / C::from_int(n as i64);
    }
    Ok(Series::new(coeffs)?)
}

/// Result of evaluating the explicit low-order terms of the closed
/// expansion of `K_{n-1}^{-n}` against the generating definition.
#[derive(Debug, Clone, PartialEq)]
pub struct ExpansionCheck<C> {
    pub n: usize,
    pub explicit: C,
    pub generating: C,
    pub matches: bool,
}

/// `x (x - 1) ... (x - k + 1)`.
pub fn falling<C: Scalar>(x: &C, k: usize) -> C {
    (0..k).fold(C::one(), |acc, j| acc * (x.clone() - C::from_int(j as i64)))
}

// top! / bottom! for integers top >= bottom, read as a falling product.
fn factorial_ratio<C: Scalar>(top: i64, bottom: i64) -> C {
    falling(&C::from_int(top), (top - bottom) as usize)
}

/// Evaluates the explicit terms of the closed form of `K_{n-1}^{-n}`
/// (monomials `a_2^{n-1}`, `a_2^{n-3} a_3`, `a_2^{n-4} a_4`,
/// `a_2^{n-5} [a_5 + (2-n) a_3^2]`, `a_2^{n-6} [a_6 + (5-2n) a_3 a_4]`) with
/// negative factorial ratios read as falling factorials. A term whose
/// `a_2` exponent is negative vanishes. For `2 <= n <= 6` the higher tail is
/// empty, so the sum must equal [`faber_k`].
pub fn check_expansion_terms<C: Scalar>(f: &Series<C>, n: usize) -> Result<ExpansionCheck<C>, FaberError> {
    if !(2..=6).contains(&n) {
        return Err(FaberError::ExpansionRange(n));
    }
    let generating = faber_k(&FaberQuery::new(f, n - 1, -(n as i64))?)?;
    let a = |k: usize| f.coeff(k).clone();
    let a2_pow = |e: usize| (0..e).fold(C::one(), |acc, _| acc * a(2));
    let n_i = n as i64;

    let mut explicit = C::zero();
    // a_2^{n-1}
    explicit = explicit
        + factorial_ratio::<C>(-n_i, -2 * n_i + 1) / C::from_rational(&Rational::from_integer(factorial(n - 1)))
            * a2_pow(n - 1);
    if n >= 3 {
        explicit = explicit
            + factorial_ratio::<C>(-n_i, -2 * n_i + 2) / C::from_rational(&Rational::from_integer(factorial(n - 3)))
                * a2_pow(n - 3)
                * a(3);
    }
    if n >= 4 {
        explicit = explicit
            + factorial_ratio::<C>(-n_i, -2 * n_i + 3) / C::from_rational(&Rational::from_integer(factorial(n - 4)))
                * a2_pow(n - 4)
                * a(4);
    }
    if n >= 5 {
        let bracket = a(5) + C::from_int(2 - n_i) * a(3) * a(3);
        explicit = explicit
            + factorial_ratio::<C>(-n_i, -2 * n_i + 4) / C::from_rational(&Rational::from_integer(factorial(n - 5)))
                * a2_pow(n - 5)
                * bracket;
    }
    if n >= 6 {
        let bracket = a(6) + C::from_int(5 - 2 * n_i) * a(3) * a(4);
        explicit = explicit
            + factorial_ratio::<C>(-n_i, -2 * n_i + 5) / C::from_rational(&Rational::from_integer(factorial(n - 6)))
                * a2_pow(n - 6)
                * bracket;
    }
    let matches = explicit == generating;
    Ok(ExpansionCheck { n, explicit, generating, matches })
}

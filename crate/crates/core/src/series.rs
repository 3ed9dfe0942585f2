//! Truncated formal power series.
//!
//! A `Series<C>` of order `N` stores the coefficients `c_0..=c_N`; everything
//! beyond `z^N` is unknown. Binary operations truncate to the smaller order.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;

use crate::error::SeriesError;
use crate::scalar::{Exponent, Rational, Scalar};

/// Default truncation order used across the toolkit.
pub const DEFAULT_ORDER: usize = 12;

#[derive(Clone, PartialEq)]
pub struct Series<C> {
    coeffs: Vec<C>,
}

/// Exact rational series.
pub type ExactSeries = Series<Rational>;
/// Double-precision complex series.
pub type FloatSeries = Series<Complex64>;

impl<C: Scalar> Series<C> {
    pub fn new(coeffs: Vec<C>) -> Result<Self, SeriesError> {
        if coeffs.is_empty() {
            return Err(SeriesError::Empty);
        }
        Ok(Series { coeffs })
    }

    pub fn zero(order: usize) -> Self {
        Series { coeffs: vec![C::zero(); order + 1] }
    }

    pub fn constant(c: C, order: usize) -> Self {
        let mut s = Self::zero(order);
        s.coeffs[0] = c;
        s
    }

    pub fn one(order: usize) -> Self {
        Self::constant(C::one(), order)
    }

    /// The identity function `z`.
    pub fn identity(order: usize) -> Self {
        let mut s = Self::zero(order);
        if order >= 1 {
            s.coeffs[1] = C::one();
        }
        s
    }

    /// Normalized series `z + a_2 z^2 + a_3 z^3 + ...` from the tail
    /// `[a_2, a_3, ...]`, zero padded (or cut) to `order`.
    pub fn normalized(tail: &[C], order: usize) -> Self {
        let mut s = Self::identity(order);
        for (k, a) in tail.iter().enumerate() {
            if k + 2 > order {
                break;
            }
            s.coeffs[k + 2] = a.clone();
        }
        s
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// Coefficient of `z^k`.
    ///
    /// # Panics
    /// If `k` exceeds the truncation order.
    pub fn coeff(&self, k: usize) -> &C {
        &self.coeffs[k]
    }

    pub fn get(&self, k: usize) -> Option<&C> {
        self.coeffs.get(k)
    }

    pub fn coeffs(&self) -> &[C] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<C> {
        self.coeffs
    }

    pub fn backend(&self) -> crate::Backend {
        C::BACKEND
    }

    /// `c_0 = 0` and `c_1 = 1`.
    pub fn is_normalized(&self) -> bool {
        self.coeffs[0].is_zero() && self.coeffs.get(1).is_some_and(|c| c.is_one())
    }

    /// `c_0 = 1`.
    pub fn is_unit(&self) -> bool {
        self.coeffs[0].is_one()
    }

    pub fn truncate(&self, order: usize) -> Self {
        let n = order.min(self.order());
        Series { coeffs: self.coeffs[..=n].to_vec() }
    }

    /// Reads the truncation as an exact polynomial and zero-pads it to
    /// `order` (or cuts it, if `order` is smaller).
    pub fn padded(&self, order: usize) -> Self {
        let mut coeffs = self.coeffs.clone();
        coeffs.resize(order + 1, C::zero());
        Series { coeffs }
    }

    pub fn scale(&self, c: &C) -> Self {
        Series { coeffs: self.coeffs.iter().map(|x| x.clone() * c.clone()).collect() }
    }

    pub fn map<D: Scalar>(&self, f: impl Fn(&C) -> D) -> Series<D> {
        Series { coeffs: self.coeffs.iter().map(f).collect() }
    }

    pub fn to_float(&self) -> FloatSeries {
        self.map(|c| c.to_complex())
    }

    /// Termwise derivative; the result has order `N - 1`.
    pub fn derive(&self) -> Result<Self, SeriesError> {
        if self.order() < 1 {
            return Err(SeriesError::OrderTooLow { required: 1, actual: self.order() });
        }
        let coeffs = self.coeffs[1..].iter().enumerate().map(|(k, c)| C::from_int(k as i64 + 1) * c.clone()).collect();
        Ok(Series { coeffs })
    }

    /// `f(z) / z` for `f(0) = 0`; the result has order `N - 1`.
    pub fn div_z(&self) -> Result<Self, SeriesError> {
        if !self.coeffs[0].is_zero() {
            return Err(SeriesError::NotDivisibleByZ);
        }
        if self.order() < 1 {
            return Err(SeriesError::OrderTooLow { required: 1, actual: self.order() });
        }
        Ok(Series { coeffs: self.coeffs[1..].to_vec() })
    }

    /// `z f(z)`; the coefficient of `z^(N+1)` is known, so the order grows by one.
    pub fn mul_z(&self) -> Self {
        let mut coeffs = Vec::with_capacity(self.coeffs.len() + 1);
        coeffs.push(C::zero());
        coeffs.extend(self.coeffs.iter().cloned());
        Series { coeffs }
    }

    /// Multiplicative inverse `1 / f` for `f(0) != 0`.
    pub fn recip(&self) -> Result<Self, SeriesError> {
        let c0 = &self.coeffs[0];
        if c0.is_zero() {
            return Err(SeriesError::ZeroConstantTerm);
        }
        let inv0 = C::one() / c0.clone();
        let mut out = vec![C::zero(); self.coeffs.len()];
        out[0] = inv0.clone();
        for n in 1..out.len() {
            let mut acc = C::zero();
            for k in 1..=n {
                acc = acc + self.coeffs[k].clone() * out[n - k].clone();
            }
            out[n] = -(acc * inv0.clone());
        }
        Ok(Series { coeffs: out })
    }

    /// Raises the series to a power.
    ///
    /// Natural exponents work for any base. Every other exponent requires a
    /// unit base `1 + v` and is expanded as `sum_k C(e, k) v^k`, where
    /// `C(e, k) = e (e - 1) ... (e - k + 1) / k!`.
    pub fn pow<E: Into<Exponent>>(&self, e: E) -> Result<Self, SeriesError> {
        let e = e.into();
        let order = self.order();
        if e.is_zero() {
            return Ok(Self::one(order));
        }
        if let Some(k) = e.as_natural() {
            return Ok(self.pow_natural(k));
        }
        if !self.is_unit() {
            return Err(SeriesError::NonUnitBase);
        }
        let exp = C::from_exponent(&e)?;
        let mut v = self.clone();
        v.coeffs[0] = C::zero();

        let mut out = Self::one(order);
        let mut term = Self::one(order);
        let mut binom = C::one();
        for k in 1..=order {
            term = &term * &v;
            binom = binom * (exp.clone() - C::from_int(k as i64 - 1)) / C::from_int(k as i64);
            out = &out + &term.scale(&binom);
        }
        Ok(out)
    }

    fn pow_natural(&self, mut k: u64) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(self.order());
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &base;
            }
            k >>= 1;
            if k > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// `f(g(z))` by Horner's rule, truncated at the smaller order.
    pub fn compose(&self, inner: &Self) -> Result<Self, SeriesError> {
        if !inner.coeffs[0].is_zero() {
            return Err(SeriesError::NonZeroInnerConstant);
        }
        let order = self.order().min(inner.order());
        let g = inner.truncate(order);
        let mut acc = Self::zero(order);
        for c in self.coeffs[..=order].iter().rev() {
            acc = &acc * &g;
            acc.coeffs[0] = acc.coeffs[0].clone() + c.clone();
        }
        Ok(acc)
    }

    /// Compositional inverse of a normalized series.
    ///
    /// Solves order by order: the `z^n` coefficient of `f(g)` is
    /// `b_n + sum_{k>=2} a_k [z^n] g^k`, and `[z^n] g^k` for `k >= 2` only
    /// involves `b_1..b_{n-1}`. A triangular table of power coefficients is
    /// filled column by column.
    pub fn revert(&self) -> Result<Self, SeriesError> {
        if !self.is_normalized() {
            return Err(SeriesError::NotNormalized);
        }
        let order = self.order();
        // powers[k][m] = [z^m] g^k, for 1 <= k <= m <= order
        let mut powers: Vec<Vec<C>> = vec![vec![C::zero(); order + 1]; order + 1];
        let mut b = vec![C::zero(); order + 1];
        b[1] = C::one();
        powers[1][1] = C::one();
        for m in 2..=order {
            for k in 2..=m {
                // g^k = g * g^(k-1); [z^m] = sum_j b_j [z^(m-j)] g^(k-1)
                let mut acc = C::zero();
                for j in 1..=(m - k + 1) {
                    acc = acc + b[j].clone() * powers[k - 1][m - j].clone();
                }
                powers[k][m] = acc;
            }
            let mut c = C::zero();
            for (a, row) in self.coeffs[2..=m].iter().zip(&powers[2..=m]) {
                c = c + a.clone() * row[m].clone();
            }
            b[m] = -c;
            powers[1][m] = b[m].clone();
        }
        Ok(Series { coeffs: b })
    }

    /// Evaluates the truncated polynomial at `z`.
    pub fn eval(&self, z: &C) -> C {
        self.coeffs.iter().rev().fold(C::zero(), |acc, c| acc * z.clone() + c.clone())
    }
}

fn zip_with<C: Scalar>(a: &Series<C>, b: &Series<C>, f: impl Fn(C, C) -> C) -> Series<C> {
    let order = a.order().min(b.order());
    let coeffs = (0..=order).map(|k| f(a.coeffs[k].clone(), b.coeffs[k].clone())).collect();
    Series { coeffs }
}

impl<C: Scalar> Add for &Series<C> {
    type Output = Series<C>;
    fn add(self, rhs: Self) -> Series<C> {
        zip_with(self, rhs, |x, y| x + y)
    }
}

impl<C: Scalar> Sub for &Series<C> {
    type Output = Series<C>;
    fn sub(self, rhs: Self) -> Series<C> {
        zip_with(self, rhs, |x, y| x - y)
    }
}

impl<C: Scalar> Mul for &Series<C> {
    type Output = Series<C>;
    fn mul(self, rhs: Self) -> Series<C> {
        let order = self.order().min(rhs.order());
        let mut coeffs = vec![C::zero(); order + 1];
        for (i, a) in self.coeffs[..=order].iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs[..=order - i].iter().enumerate() {
                coeffs[i + j] = coeffs[i + j].clone() + a.clone() * b.clone();
            }
        }
        Series { coeffs }
    }
}

impl<C: Scalar> Neg for &Series<C> {
    type Output = Series<C>;
    fn neg(self) -> Series<C> {
        Series { coeffs: self.coeffs.iter().map(|c| -c.clone()).collect() }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl<C: Scalar> $tr for Series<C> {
            type Output = Series<C>;
            fn $m(self, rhs: Self) -> Series<C> {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl<C: Scalar + fmt::Display> fmt::Display for Series<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            match k {
                0 => write!(f, "{c}")?,
                1 => write!(f, "({c})z")?,
                _ => write!(f, "({c})z^{k}")?,
            }
        }
        if first {
            f.write_str("0")?;
        }
        write!(f, " + O(z^{})", self.order() + 1)
    }
}

impl<C: fmt::Debug> fmt::Debug for Series<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Series").field("order", &(self.coeffs.len() - 1)).field("coeffs", &self.coeffs).finish()
    }
}

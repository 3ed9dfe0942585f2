//! The class operator
//!
//! `L[f](z) = (1 - lambda) (f/z)^mu + lambda f'(z) (f/z)^(mu - 1) + xi delta z f''(z)`,
//!
//! with `xi = (2 lambda + mu) / (2 lambda + 1)`, together with the published
//! closed-form coefficient functionals `F_1, F_2, ...` and an audit that
//! compares them with the direct expansion.

use std::fmt;

use num_traits::{Signed, Zero};

use crate::error::{OperatorError, ParamError};
use crate::faber::{factorial, falling, multi_indices};
use crate::scalar::{format_rational, int, Rational, Scalar};
use crate::series::Series;

/// The parameter tuple `(mu, lambda, delta, alpha)`. `xi` is always derived.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ClassParams {
    mu: Rational,
    lambda: Rational,
    delta: Rational,
    alpha: Rational,
}

impl ClassParams {
    pub fn new(mu: Rational, lambda: Rational, delta: Rational, alpha: Rational) -> Result<Self, ParamError> {
        if mu.is_negative() {
            return Err(ParamError::Mu(format_rational(&mu)));
        }
        if lambda < int(1) {
            return Err(ParamError::Lambda(format_rational(&lambda)));
        }
        if delta.is_negative() {
            return Err(ParamError::Delta(format_rational(&delta)));
        }
        if alpha.is_negative() || alpha >= int(1) {
            return Err(ParamError::Alpha(format_rational(&alpha)));
        }
        Ok(ClassParams { mu, lambda, delta, alpha })
    }

    /// `(mu, lambda, delta)` with `alpha = 0`.
    pub fn triple(mu: Rational, lambda: Rational, delta: Rational) -> Result<Self, ParamError> {
        Self::new(mu, lambda, delta, Rational::zero())
    }

    /// Small-integer shorthand, mostly for tests.
    pub fn ints(mu: i64, lambda: i64, delta: i64) -> Result<Self, ParamError> {
        Self::triple(int(mu), int(lambda), int(delta))
    }

    pub fn with_alpha(&self, alpha: Rational) -> Result<Self, ParamError> {
        Self::new(self.mu.clone(), self.lambda.clone(), self.delta.clone(), alpha)
    }

    pub fn mu(&self) -> &Rational {
        &self.mu
    }

    pub fn lambda(&self) -> &Rational {
        &self.lambda
    }

    pub fn delta(&self) -> &Rational {
        &self.delta
    }

    pub fn alpha(&self) -> &Rational {
        &self.alpha
    }

    pub fn xi(&self) -> Rational {
        xi_of(&self.mu, &self.lambda)
    }

    /// `mu + k lambda + (k + 1) k xi delta`: the factor multiplying the
    /// `z^k` coefficient of `L` that is linear in `a_{k+1}`.
    pub fn linear_factor(&self, k: usize) -> Rational {
        let k = k as i64;
        self.mu.clone() + int(k) * self.lambda.clone() + int((k + 1) * k) * self.xi() * self.delta.clone()
    }
}

impl fmt::Display for ClassParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "mu={}, lambda={}, delta={}, alpha={}",
            format_rational(&self.mu),
            format_rational(&self.lambda),
            format_rational(&self.delta),
            format_rational(&self.alpha)
        )
    }
}

/// `xi = (2 lambda + mu) / (2 lambda + 1)`.
pub fn xi_of(mu: &Rational, lambda: &Rational) -> Rational {
    (int(2) * lambda.clone() + mu.clone()) / (int(2) * lambda.clone() + int(1))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExpansionSource {
    /// Series arithmetic on the operator itself.
    Direct,
    /// The published closed-form functionals.
    Published,
}

/// Coefficients `F_0 = 1, F_1, F_2, ...` of `L[f]`.
#[derive(Debug, Clone, PartialEq)]
pub struct OperatorExpansion<C> {
    pub coeffs: Vec<C>,
    pub source: ExpansionSource,
}

impl<C: Scalar> OperatorExpansion<C> {
    pub fn series(&self) -> Series<C> {
        Series::new(self.coeffs.clone()).expect("expansion is never empty")
    }
}

/// Direct series expansion of `L[f]`, truncated at `order(f) - 1`.
pub fn expand_l<C: Scalar>(f: &Series<C>, p: &ClassParams) -> Result<OperatorExpansion<C>, OperatorError> {
    Ok(OperatorExpansion { coeffs: operator_series(f, p)?.into_coeffs(), source: ExpansionSource::Direct })
}

/// Same as [`expand_l`] but returns the series itself.
pub fn operator_series<C: Scalar>(f: &Series<C>, p: &ClassParams) -> Result<Series<C>, OperatorError> {
    if !f.is_normalized() {
        return Err(crate::SeriesError::NotNormalized.into());
    }
    let ratio = f.div_z()?;
    let order = ratio.order();
    let d1 = f.derive()?;
    let lambda = C::from_rational(&p.lambda);

    let first = ratio.pow(p.mu.clone())?.scale(&(C::one() - lambda.clone()));
    let second = (&d1 * &ratio.pow(p.mu.clone() - int(1))?).scale(&lambda);
    let mut out = &first + &second;
    if order >= 1 && !p.delta.is_zero() {
        let curvature = d1.derive()?.mul_z().scale(&C::from_rational(&(p.xi() * p.delta.clone())));
        out = &out + &curvature;
    }
    Ok(out)
}

/// The published functional `F_index` evaluated on `f`.
///
/// `F_1` and `F_2` are the explicit low-order forms; `F_k` for `k >= 3` is the
/// general multi-index form with `(mu - 1)! / (mu - m)!` read as the falling
/// product `(mu - 1)(mu - 2)...(mu - m + 1)` and the multi-index constrained
/// to weight `k` over the variables `a_2, ..., a_{k+1}`.
pub fn published_f<C: Scalar>(index: usize, f: &Series<C>, p: &ClassParams) -> Result<C, OperatorError> {
    if index == 0 {
        return Err(OperatorError::ZeroIndex);
    }
    if f.order() < index + 1 {
        return Err(OperatorError::IndexBeyondOrder { index, needed: index + 1, order: f.order() });
    }
    let a = |k: usize| f.coeff(k).clone();
    let r = |q: Rational| C::from_rational(&q);
    match index {
        1 => Ok(r(p.linear_factor(1)) * a(2)),
        2 => {
            let half_mu = (p.mu.clone() - int(1)) / int(2);
            let stretch = int(1) + int(6) * p.delta.clone() / (int(2) * p.lambda.clone() + int(1));
            Ok(r(p.linear_factor(2)) * (r(half_mu) * a(2) * a(2) + r(stretch) * a(3)))
        }
        k => {
            let mu_minus_one = r(p.mu.clone() - int(1));
            let mut sum = C::zero();
            for m in 1..=k {
                for idx in multi_indices(k, m) {
                    let mut term = falling(&mu_minus_one, m - 1);
                    for (j, &i) in idx.iter().enumerate() {
                        term = term / r(Rational::from_integer(factorial(i)));
                        for _ in 0..i {
                            term = term * a(j + 2);
                        }
                    }
                    sum = sum + term;
                }
            }
            Ok(r(p.linear_factor(k)) * sum)
        }
    }
}

/// `[1, F_1, ..., F_upto]` from the published functionals.
pub fn published_expansion<C: Scalar>(
    f: &Series<C>,
    p: &ClassParams,
    upto: usize,
) -> Result<OperatorExpansion<C>, OperatorError> {
    let mut coeffs = vec![C::one()];
    for k in 1..=upto {
        coeffs.push(published_f(k, f, p)?);
    }
    Ok(OperatorExpansion { coeffs, source: ExpansionSource::Published })
}

#[derive(Debug, Clone, PartialEq)]
pub struct FunctionalComparison<C> {
    pub index: usize,
    pub direct: C,
    pub published: C,
    /// `direct - published`.
    pub difference: C,
}

impl<C: Scalar> FunctionalComparison<C> {
    pub fn consistent(&self) -> bool {
        self.difference.is_zero()
    }
}

/// Side-by-side audit of the direct expansion against the published
/// functionals.
#[derive(Debug, Clone, PartialEq)]
pub struct Discrepancy<C> {
    pub params: ClassParams,
    pub entries: Vec<FunctionalComparison<C>>,
}

impl<C: Scalar> Discrepancy<C> {
    pub fn consistent(&self) -> bool {
        self.entries.iter().all(|e| e.consistent())
    }

    /// Largest `|direct - published|`.
    pub fn norm(&self) -> f64 {
        self.entries.iter().map(|e| e.difference.magnitude()).fold(0.0, f64::max)
    }

    pub fn inconsistent(&self) -> impl Iterator<Item = &FunctionalComparison<C>> {
        self.entries.iter().filter(|e| !e.consistent())
    }
}

/// Compares `F_1..F_upto` from both routes. `upto` is clipped to what the
/// truncation order of `f` supports.
pub fn compare_f<C: Scalar>(f: &Series<C>, p: &ClassParams, upto: usize) -> Result<Discrepancy<C>, OperatorError> {
    let direct = operator_series(f, p)?;
    let upto = upto.min(f.order().saturating_sub(1));
    let mut entries = Vec::with_capacity(upto);
    for index in 1..=upto {
        let d = direct.coeff(index).clone();
        let q = published_f(index, f, p)?;
        entries.push(FunctionalComparison { index, difference: d.clone() - q.clone(), direct: d, published: q });
    }
    Ok(Discrepancy { params: p.clone(), entries })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;

    #[test]
    fn xi_values() {
        assert_eq!(ClassParams::ints(1, 1, 0).unwrap().xi(), int(1));
        assert_eq!(ClassParams::ints(0, 1, 0).unwrap().xi(), rat(2, 3));
        assert_eq!(ClassParams::ints(3, 2, 0).unwrap().xi(), rat(7, 5));
    }

    #[test]
    fn parameter_ranges() {
        assert!(matches!(ClassParams::triple(int(1), rat(1, 2), int(0)), Err(ParamError::Lambda(_))));
        assert!(matches!(ClassParams::ints(-1, 1, 0), Err(ParamError::Mu(_))));
        assert!(matches!(ClassParams::ints(0, 1, -1), Err(ParamError::Delta(_))));
        assert!(matches!(ClassParams::ints(0, 1, 0).unwrap().with_alpha(int(1)), Err(ParamError::Alpha(_))));
        assert!(ClassParams::ints(0, 1, 0).unwrap().with_alpha(rat(99, 100)).is_ok());
    }

    #[test]
    fn identity_maps_to_one() {
        let f = Series::<Rational>::identity(8);
        for p in [
            ClassParams::ints(0, 1, 0),
            ClassParams::ints(3, 2, 5),
            ClassParams::triple(rat(1, 2), rat(7, 3), rat(2, 9)),
        ] {
            let l = expand_l(&f, &p.unwrap()).unwrap();
            assert_eq!(l.series(), Series::one(7));
        }
    }

    #[test]
    fn first_coefficient_is_linear_in_a2() {
        let p = ClassParams::triple(rat(3, 2), rat(5, 4), rat(1, 3)).unwrap();
        let a2 = rat(-2, 7);
        let f = Series::normalized(std::slice::from_ref(&a2), 2);
        let l = expand_l(&f, &p).unwrap();
        let xi = p.xi();
        assert_eq!(l.coeffs[1], (p.mu().clone() + p.lambda().clone() + int(2) * xi * p.delta().clone()) * a2);
    }

    #[test]
    fn gap_coefficient_factor() {
        let p = ClassParams::triple(rat(2, 3), rat(3, 2), rat(1, 4)).unwrap();
        let eps = rat(1, 10);
        for n in 2..=8 {
            let mut tail = vec![Rational::zero(); n - 1];
            tail[n - 2] = eps.clone();
            let f = Series::normalized(&tail, n);
            let l = operator_series(&f, &p).unwrap();
            let nn = n as i64;
            let expect =
                p.mu().clone() + int(nn - 1) * p.lambda().clone() + int(nn * (nn - 1)) * p.xi() * p.delta().clone();
            assert_eq!(l.coeff(n - 1), &(expect * eps.clone()));
            for k in 1..n - 1 {
                assert!(l.coeff(k).is_zero());
            }
        }
    }

    #[test]
    fn published_functionals_at_unit_params() {
        let p = ClassParams::ints(1, 1, 0).unwrap();
        let f = Series::normalized(&[int(1), int(0)], 3);
        assert_eq!(published_f(1, &f, &p).unwrap(), int(2));
        let g = Series::normalized(&[int(0), int(1)], 3);
        assert_eq!(published_f(2, &g, &p).unwrap(), int(3));
        // (mu - 1)/2 vanishes at mu = 1: F_2 has no a_2^2 term
        let h = Series::normalized(&[rat(5, 3), int(0)], 3);
        assert_eq!(published_f(2, &h, &p).unwrap(), int(0));
        assert_eq!(published_f(0, &h, &p), Err(OperatorError::ZeroIndex));
        assert!(matches!(published_f(3, &h, &p), Err(OperatorError::IndexBeyondOrder { .. })));
    }

    #[test]
    fn comparison_is_clean_without_delta() {
        let f = Series::normalized(&[rat(1, 3), rat(-2, 5), rat(3, 7), rat(1, 2), rat(-1, 6)], 6);
        for p in
            [ClassParams::ints(0, 1, 0), ClassParams::ints(2, 3, 0), ClassParams::triple(rat(5, 2), rat(4, 3), int(0))]
        {
            let d = compare_f(&f, &p.unwrap(), 5).unwrap();
            assert_eq!(d.entries.len(), 5);
            assert!(d.consistent(), "{d:?}");
        }
    }

    #[test]
    fn second_functional_disagrees_with_delta() {
        let eps = rat(1, 5);
        let f = Series::normalized(&[int(0), eps.clone()], 3);
        let d = compare_f(&f, &ClassParams::ints(1, 1, 1).unwrap(), 2).unwrap();
        assert!(d.entries[0].consistent());
        let e = &d.entries[1];
        assert_eq!(e.direct, int(9) * eps.clone());
        assert_eq!(e.published, int(27) * eps.clone());
        assert_eq!(e.difference, int(-18) * eps);
        assert!(!d.consistent());
    }

    #[test]
    fn float_backend_tracks_exact() {
        let p = ClassParams::triple(rat(3, 2), rat(2, 1), rat(1, 2)).unwrap();
        let f = Series::normalized(&[rat(1, 5), rat(-1, 7), rat(1, 9)], 6);
        let exact = operator_series(&f, &p).unwrap();
        let float = operator_series(&f.to_float(), &p).unwrap();
        for (e, x) in exact.coeffs().iter().zip(float.coeffs()) {
            assert!((e.to_complex() - x).norm() <= 1e-12 * (1.0 + e.magnitude()));
        }
    }
}

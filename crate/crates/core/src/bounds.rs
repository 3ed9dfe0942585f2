//! Closed-form coefficient bounds for members of the class and the audit
//! that checks concrete coefficients against them.
//!
//! Everything is exact: the square-root branch of the `|a_2|` bound is kept
//! as its radicand and compared by squaring.

use std::cmp::Ordering;
use std::fmt;

use num_traits::{Signed, Zero};

use crate::error::BoundError;
use crate::operator::ClassParams;
use crate::scalar::{format_decimal, int, rational_to_f64, Rational};
use crate::series::ExactSeries;

/// An exact positive bound: either a rational or the square root of one.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BoundValue {
    Exact(Rational),
    Sqrt(Rational),
}

impl BoundValue {
    pub fn to_f64(&self) -> f64 {
        match self {
            BoundValue::Exact(r) => rational_to_f64(r),
            BoundValue::Sqrt(r) => rational_to_f64(r).sqrt(),
        }
    }

    /// The square of the bound, which is always rational.
    pub fn squared(&self) -> Rational {
        match self {
            BoundValue::Exact(r) => r.clone() * r.clone(),
            BoundValue::Sqrt(r) => r.clone(),
        }
    }

    /// `|x| <= self`, decided exactly.
    pub fn admits(&self, x: &Rational) -> bool {
        x.clone() * x.clone() <= self.squared()
    }

    /// Twelve-digit decimal rendering. Square roots are evaluated in `f64`.
    pub fn decimal(&self) -> String {
        match self {
            BoundValue::Exact(r) => format_decimal(r, 12),
            BoundValue::Sqrt(r) => format!("{:.12}", rational_to_f64(r).sqrt()),
        }
    }
}

impl fmt::Display for BoundValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BoundValue::Exact(r) => write!(f, "{}", crate::scalar::format_rational(r)),
            BoundValue::Sqrt(r) => write!(f, "sqrt({})", crate::scalar::format_rational(r)),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum A2Branch {
    Linear,
    Sqrt,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum A3Branch {
    Expr1,
    Expr2,
}

impl fmt::Display for A2Branch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            A2Branch::Linear => "linear",
            A2Branch::Sqrt => "sqrt",
        })
    }
}

impl fmt::Display for A3Branch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            A3Branch::Expr1 => "expr1",
            A3Branch::Expr2 => "expr2",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct A2Bound {
    pub value: BoundValue,
    pub branch: A2Branch,
    /// `2 / (mu + lambda + 2 xi delta)`.
    pub linear: Rational,
    /// `8 / ((mu + 2 lambda + 6 xi delta)(mu + 1))`.
    pub radicand: Rational,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct A3Bound {
    pub value: Rational,
    pub branch: A3Branch,
    pub expr1: Rational,
    pub expr2: Rational,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GapBound {
    pub n: usize,
    pub value: Rational,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundReport {
    pub params: ClassParams,
    pub a2: A2Bound,
    pub a3: A3Bound,
    pub an: Vec<GapBound>,
    pub warnings: Vec<String>,
}

// Bounds are written against an explicit xi so that the xi-independence
// at delta = 0 can be checked directly.
fn linear_den(mu: &Rational, lambda: &Rational, delta: &Rational, xi: &Rational) -> Rational {
    mu.clone() + lambda.clone() + int(2) * xi.clone() * delta.clone()
}

fn quad_den(mu: &Rational, lambda: &Rational, delta: &Rational, xi: &Rational) -> Rational {
    mu.clone() + int(2) * lambda.clone() + int(6) * xi.clone() * delta.clone()
}

pub(crate) fn a2_with_xi(mu: &Rational, lambda: &Rational, delta: &Rational, xi: &Rational) -> A2Bound {
    let linear = int(2) / linear_den(mu, lambda, delta, xi);
    let radicand = int(8) / (quad_den(mu, lambda, delta, xi) * (mu.clone() + int(1)));
    let (value, branch) = match (linear.clone() * linear.clone()).cmp(&radicand) {
        Ordering::Greater => (BoundValue::Sqrt(radicand.clone()), A2Branch::Sqrt),
        _ => (BoundValue::Exact(linear.clone()), A2Branch::Linear),
    };
    A2Bound { value, branch, linear, radicand }
}

pub(crate) fn a3_with_xi(mu: &Rational, lambda: &Rational, delta: &Rational, xi: &Rational) -> A3Bound {
    let stretch = int(1) + int(6) * delta.clone() / (int(2) * lambda.clone() + int(1));
    let q = quad_den(mu, lambda, delta, xi);
    let l = linear_den(mu, lambda, delta, xi);
    let common = int(2) / q.clone();
    let expr1 = (int(4) / (l.clone() * l) + common.clone()) / stretch.clone();
    let expr2 = (int(8) / (q * (mu.clone() + int(1))) + common) / stretch;
    let (value, branch) =
        if expr2 < expr1 { (expr2.clone(), A3Branch::Expr2) } else { (expr1.clone(), A3Branch::Expr1) };
    A3Bound { value, branch, expr1, expr2 }
}

pub(crate) fn gap_with_xi(n: usize, mu: &Rational, lambda: &Rational, delta: &Rational, xi: &Rational) -> Rational {
    let n = n as i64;
    int(2) / (mu.clone() + int(n - 1) * lambda.clone() + int(n * (n - 1)) * xi.clone() * delta.clone())
}

/// `min{ 2/(mu+lambda+2 xi delta), sqrt(8/((mu+2 lambda+6 xi delta)(mu+1))) }`;
/// ties go to the linear branch.
pub fn bound_a2(p: &ClassParams) -> A2Bound {
    a2_with_xi(p.mu(), p.lambda(), p.delta(), &p.xi())
}

/// Minimum of the two `|a_3|` expressions; ties go to the first.
pub fn bound_a3(p: &ClassParams) -> A3Bound {
    a3_with_xi(p.mu(), p.lambda(), p.delta(), &p.xi())
}

/// `2 / (mu + (n-1) lambda + n (n-1) xi delta)` for gap series, `n >= 4`.
pub fn bound_an_gap(n: usize, p: &ClassParams) -> Result<Rational, BoundError> {
    if n < 4 {
        return Err(BoundError::GapIndex(n));
    }
    Ok(gap_with_xi(n, p.mu(), p.lambda(), p.delta(), &p.xi()))
}

/// Notes on where the published derivation of these bounds leans on a
/// coefficient identity that the direct expansion of the operator does not
/// reproduce.
pub fn consistency_warnings(p: &ClassParams) -> Vec<String> {
    let mut out = Vec::new();
    if p.delta().is_positive() {
        out.push(format!(
            "delta > 0 ({p}): the published F_2 functional differs from the direct operator \
             expansion, so the a2 sqrt branch and the a3 bound rest on an identity that does not hold here"
        ));
    }
    out
}

pub fn bound_report(p: &ClassParams, gap_ns: &[usize]) -> Result<BoundReport, BoundError> {
    let an = gap_ns
        .iter()
        .map(|&n| Ok(GapBound { n, value: bound_an_gap(n, p)? }))
        .collect::<Result<Vec<_>, BoundError>>()?;
    Ok(BoundReport { params: p.clone(), a2: bound_a2(p), a3: bound_a3(p), an, warnings: consistency_warnings(p) })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AuditTarget {
    A2,
    A3,
    /// Gap-series bound for the first nonzero `a_n`, `n >= 4`.
    Gap(usize),
}

impl fmt::Display for AuditTarget {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AuditTarget::A2 => f.write_str("a2"),
            AuditTarget::A3 => f.write_str("a3"),
            AuditTarget::Gap(n) => write!(f, "a{n}"),
        }
    }
}

/// One checked inequality `|a| <= bound`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AuditRecord {
    pub target: AuditTarget,
    pub coefficient: Rational,
    pub bound: BoundValue,
    pub holds: bool,
}

impl AuditRecord {
    pub fn is_counterexample(&self) -> bool {
        !self.holds
    }
}

/// Index of the first nonzero coefficient past `z`, if the gap hypothesis
/// `a_m = 0 (2 <= m <= n-1)` places it at `n >= 4`.
pub fn gap_index(f: &ExactSeries) -> Option<usize> {
    let first = (2..=f.order()).find(|&k| !f.coeff(k).is_zero())?;
    (first >= 4).then_some(first)
}

/// Checks the coefficients of `f` against the bounds for `p`: `|a_2|` and
/// `|a_3|` always, and `|a_n|` when `f` is a gap series. Only meaningful
/// when `f` has been verified to belong to the class.
pub fn audit_coefficients(f: &ExactSeries, p: &ClassParams) -> Vec<AuditRecord> {
    let mut out = Vec::new();
    let zero = Rational::zero();
    let a2 = f.get(2).unwrap_or(&zero).clone();
    let b2 = bound_a2(p).value;
    out.push(AuditRecord { target: AuditTarget::A2, holds: b2.admits(&a2), coefficient: a2, bound: b2 });
    let a3 = f.get(3).unwrap_or(&zero).clone();
    let b3 = bound_a3(p).value;
    out.push(AuditRecord {
        target: AuditTarget::A3,
        holds: a3.abs() <= b3,
        coefficient: a3,
        bound: BoundValue::Exact(b3),
    });
    if let Some(n) = gap_index(f) {
        let bn = bound_an_gap(n, p).expect("gap index is at least 4");
        let an = f.coeff(n).clone();
        out.push(AuditRecord {
            target: AuditTarget::Gap(n),
            holds: an.abs() <= bn,
            coefficient: an,
            bound: BoundValue::Exact(bn),
        });
    }
    out
}

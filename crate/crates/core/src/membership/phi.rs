use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;

use crate::error::MembershipError;
use crate::scalar::{parse_rational, rational_to_f64};
use crate::series::FloatSeries;

/// The subordinating function `Phi`, with `Phi(0) = 1`.
#[derive(Debug, Clone, PartialEq)]
pub enum PhiSpec {
    /// `(1 + (1 - 2 alpha) z) / (1 - z)`: maps the disk onto `Re w > alpha`.
    HalfPlane { alpha: f64 },
    /// `1 + rho z`: maps the disk onto the disk of radius `rho` about 1.
    Disk { rho: f64 },
    /// Truncated `1 + Phi_1 z + Phi_2 z^2 + ...`.
    Coeffs(Vec<f64>),
}

impl PhiSpec {
    pub fn halfplane(alpha: f64) -> Result<Self, MembershipError> {
        if !(0.0..1.0).contains(&alpha) {
            return Err(MembershipError::Alpha(alpha));
        }
        Ok(PhiSpec::HalfPlane { alpha })
    }

    pub fn disk(rho: f64) -> Result<Self, MembershipError> {
        if !(rho > 0.0 && rho <= 1.0) {
            return Err(MembershipError::DiskRadius(rho));
        }
        Ok(PhiSpec::Disk { rho })
    }

    pub fn eval(&self, z: Complex64) -> Complex64 {
        match self {
            PhiSpec::HalfPlane { alpha } => (1.0 + (1.0 - 2.0 * alpha) * z) / (1.0 - z),
            PhiSpec::Disk { rho } => 1.0 + rho * z,
            PhiSpec::Coeffs(c) => c.iter().rev().fold(Complex64::new(0.0, 0.0), |acc, &x| (acc + x) * z) + 1.0,
        }
    }

    /// Taylor coefficient `Phi_n` for `n >= 1`.
    pub fn coeff(&self, n: usize) -> f64 {
        if n == 0 {
            return 1.0;
        }
        match self {
            PhiSpec::HalfPlane { alpha } => 2.0 * (1.0 - alpha),
            PhiSpec::Disk { rho } => {
                if n == 1 {
                    *rho
                } else {
                    0.0
                }
            }
            PhiSpec::Coeffs(c) => c.get(n - 1).copied().unwrap_or(0.0),
        }
    }

    /// `max_{1 <= n <= order} |Phi_n|` (all given coefficients for `Coeffs`).
    pub fn max_coeff_abs(&self, order: usize) -> f64 {
        let upto = match self {
            PhiSpec::Coeffs(c) => c.len().max(1),
            _ => order.max(1),
        };
        (1..=upto).map(|n| self.coeff(n).abs()).fold(0.0, f64::max)
    }

    /// Closed-form inverse for the presets.
    pub fn inverse(&self, w: Complex64) -> Result<Complex64, MembershipError> {
        match self {
            PhiSpec::HalfPlane { alpha } => Ok((w - 1.0) / (w + 1.0 - 2.0 * alpha)),
            PhiSpec::Disk { rho } => Ok((w - 1.0) / rho),
            PhiSpec::Coeffs(_) => Err(MembershipError::NoClosedFormInverse),
        }
    }

    /// `Phi^{-1}(W(z))` as a series, for `W(0) = 1`.
    pub fn inverse_series(&self, w: &FloatSeries) -> Result<FloatSeries, MembershipError> {
        let order = w.order();
        let one = FloatSeries::one(order);
        match self {
            PhiSpec::HalfPlane { alpha } => {
                let den = w + &FloatSeries::constant(Complex64::new(1.0 - 2.0 * alpha, 0.0), order);
                Ok(&(w - &one) * &den.recip()?)
            }
            PhiSpec::Disk { rho } => Ok((w - &one).scale(&Complex64::new(1.0 / rho, 0.0))),
            PhiSpec::Coeffs(_) => Err(MembershipError::NoClosedFormInverse),
        }
    }

    pub fn is_preset(&self) -> bool {
        !matches!(self, PhiSpec::Coeffs(_))
    }
}

impl Default for PhiSpec {
    fn default() -> Self {
        PhiSpec::HalfPlane { alpha: 0.0 }
    }
}

fn parse_number(s: &str, whole: &str) -> Result<f64, MembershipError> {
    parse_rational(s).map(|r| rational_to_f64(&r)).map_err(|_| MembershipError::PhiSyntax(whole.to_string()))
}

impl FromStr for PhiSpec {
    type Err = MembershipError;

    /// `halfplane:ALPHA`, `disk:RHO` or `coeffs:C1,C2,...`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let (kind, arg) = s.split_once(':').ok_or_else(|| MembershipError::PhiSyntax(s.to_string()))?;
        match kind.trim() {
            "halfplane" => PhiSpec::halfplane(parse_number(arg, s)?),
            "disk" => PhiSpec::disk(parse_number(arg, s)?),
            "coeffs" => {
                let c = arg.split(',').map(|x| parse_number(x, s)).collect::<Result<Vec<_>, _>>()?;
                Ok(PhiSpec::Coeffs(c))
            }
            _ => Err(MembershipError::PhiSyntax(s.to_string())),
        }
    }
}

impl fmt::Display for PhiSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PhiSpec::HalfPlane { alpha } => write!(f, "halfplane:{alpha}"),
            PhiSpec::Disk { rho } => write!(f, "disk:{rho}"),
            PhiSpec::Coeffs(c) => {
                let parts: Vec<String> = c.iter().map(|x| x.to_string()).collect();
                write!(f, "coeffs:{}", parts.join(","))
            }
        }
    }
}

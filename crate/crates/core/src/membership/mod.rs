//! Sampled membership tests for the class, on both the function and its
//! inverse.
//!
//! Sampling cannot certify an open condition, so every test produces a
//! three-valued [`Verdict`] from a margin and a tolerance `tau`: the margin
//! must clear `+tau` to accept and fall below `-tau` to reject. Truncation
//! error of the operator series is estimated from a geometric fit of its
//! trailing coefficients and shrinks the margin toward zero before
//! classification.
//!
//! Univalence of the candidate is a precondition and is not checked.

mod curve;
mod phi;

use std::fmt;

use num_complex::Complex64;
use rayon::prelude::*;

pub use curve::ClosedCurve;
pub use phi::PhiSpec;

use crate::error::MembershipError;
use crate::faber::inverse_coeffs;
use crate::operator::{operator_series, ClassParams};
use crate::scalar::rational_to_f64;
use crate::series::{ExactSeries, FloatSeries};

/// Radius of the circle whose image under `Phi` bounds `Phi(disk)`.
pub const BOUNDARY_RADIUS: f64 = 0.999;

#[derive(Debug, Clone, PartialEq)]
pub struct SamplingGrid {
    pub radii: Vec<f64>,
    pub samples_per_circle: usize,
    pub inverse_radius_cap: f64,
    pub tolerance: f64,
    /// Truncation order of the operator series that get sampled.
    pub truncation_order: usize,
}

impl Default for SamplingGrid {
    fn default() -> Self {
        SamplingGrid {
            radii: vec![0.5, 0.7, 0.9, 0.99],
            samples_per_circle: 1024,
            inverse_radius_cap: 0.9,
            tolerance: 1e-3,
            truncation_order: 16,
        }
    }
}

impl SamplingGrid {
    pub fn validate(&self) -> Result<(), MembershipError> {
        let increasing = self.radii.windows(2).all(|w| w[0] < w[1]);
        if self.radii.is_empty() || !increasing || self.radii.iter().any(|&r| !(r > 0.0 && r < 1.0)) {
            return Err(MembershipError::Radii);
        }
        if self.samples_per_circle < 3 {
            return Err(MembershipError::Samples);
        }
        if !(self.tolerance > 0.0 && self.tolerance.is_finite()) {
            return Err(MembershipError::Tolerance);
        }
        if !(self.inverse_radius_cap > 0.0 && self.inverse_radius_cap < 1.0) {
            return Err(MembershipError::InverseCap);
        }
        Ok(())
    }

    /// `samples_per_circle`-th roots of unity scaled by `r`.
    pub fn circle(&self, r: f64) -> Vec<Complex64> {
        let n = self.samples_per_circle;
        (0..n).map(|j| Complex64::from_polar(r, std::f64::consts::TAU * j as f64 / n as f64)).collect()
    }

    /// Radii used on the inverse side: every radius clipped at the cap.
    pub fn inverse_radii(&self) -> Vec<f64> {
        let mut out: Vec<f64> = Vec::new();
        for &r in &self.radii {
            let r = r.min(self.inverse_radius_cap);
            if out.last().is_none_or(|&last| last < r) {
                out.push(r);
            }
        }
        out
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Verdict {
    Member,
    NonMember,
    Inconclusive,
}

impl Verdict {
    pub fn classify(margin: f64, tolerance: f64) -> Verdict {
        if margin >= tolerance {
            Verdict::Member
        } else if margin <= -tolerance {
            Verdict::NonMember
        } else {
            Verdict::Inconclusive
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Member => "member",
            Verdict::NonMember => "non-member",
            Verdict::Inconclusive => "inconclusive",
        })
    }
}

/// Which of the two conditions kept the verdict from being `member`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FailingSide {
    None,
    Direct,
    Inverse,
    Both,
}

impl fmt::Display for FailingSide {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            FailingSide::None => "none",
            FailingSide::Direct => "direct",
            FailingSide::Inverse => "inverse",
            FailingSide::Both => "both",
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RadiusSample {
    pub radius: f64,
    /// Smallest raw score on this circle.
    pub sampled_min: f64,
    /// Estimated bound on the truncation error on this circle.
    pub tail: f64,
}

impl RadiusSample {
    /// The sampled minimum pulled toward zero by the tail estimate.
    pub fn margin(&self) -> f64 {
        shrink(self.sampled_min, self.tail)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SideReport {
    pub radii: Vec<RadiusSample>,
}

impl SideReport {
    pub fn margin(&self) -> f64 {
        self.radii.iter().map(RadiusSample::margin).fold(f64::INFINITY, f64::min)
    }

    pub fn sampled_min(&self) -> f64 {
        self.radii.iter().map(|r| r.sampled_min).fold(f64::INFINITY, f64::min)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct MembershipReport {
    pub verdict: Verdict,
    pub side: FailingSide,
    pub min_margin: f64,
    pub direct: SideReport,
    pub inverse: SideReport,
    pub grid: SamplingGrid,
    pub notes: Vec<String>,
    pub warnings: Vec<String>,
}

fn shrink(m: f64, tail: f64) -> f64 {
    if !tail.is_finite() {
        return 0.0;
    }
    m.signum() * (m.abs() - tail).max(0.0)
}

/// Bound on `sum_{k > T} |c_k| r^k` from a geometric envelope fitted to the
/// upper half of the nonzero coefficients. Infinite when the fitted growth
/// rate reaches `1 / r`; zero when the upper half vanishes.
pub fn tail_estimate(coeffs: &[Complex64], r: f64) -> f64 {
    let t = coeffs.len() - 1;
    let pts: Vec<(f64, f64)> = (t.div_ceil(2).max(1)..=t)
        .filter(|&k| coeffs[k].norm() > 0.0)
        .map(|k| (k as f64, coeffs[k].norm().ln()))
        .collect();
    if pts.is_empty() {
        return 0.0;
    }
    let slope = if pts.len() == 1 {
        pts[0].1 / pts[0].0
    } else {
        let n = pts.len() as f64;
        let mx = pts.iter().map(|p| p.0).sum::<f64>() / n;
        let my = pts.iter().map(|p| p.1).sum::<f64>() / n;
        let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
        let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
        sxy / sxx
    };
    // amplitude chosen so the envelope dominates every fitted coefficient
    let amp = pts.iter().map(|&(k, l)| (l - slope * k).exp()).fold(0.0, f64::max);
    let q = slope.exp() * r;
    if q >= 1.0 {
        return f64::INFINITY;
    }
    amp * q.powi(t as i32 + 1) / (1.0 - q)
}

// Operator series of f and of its inverse at the grid's truncation order.
fn operator_pair(
    f: &ExactSeries,
    p: &ClassParams,
    grid: &SamplingGrid,
) -> Result<(FloatSeries, FloatSeries), MembershipError> {
    if !f.is_normalized() {
        return Err(crate::SeriesError::NotNormalized.into());
    }
    let work = f.order().max(grid.truncation_order + 1);
    let f = f.padded(work);
    let g = inverse_coeffs(&f, work)?;
    let direct = operator_series(&f.to_float(), p)?;
    let inverse = operator_series(&g.to_float(), p)?;
    Ok((direct, inverse))
}

fn sample_side(
    series: &FloatSeries,
    radii: &[f64],
    grid: &SamplingGrid,
    score: &(dyn Fn(Complex64) -> f64 + Sync),
) -> SideReport {
    let radii = radii
        .iter()
        .map(|&r| {
            let sampled_min =
                grid.circle(r).par_iter().map(|z| score(series.eval(z))).reduce(|| f64::INFINITY, f64::min);
            RadiusSample { radius: r, sampled_min, tail: tail_estimate(series.coeffs(), r) }
        })
        .collect();
    SideReport { radii }
}

fn tail_notes(label: &str, side: &SideReport, tol: f64, notes: &mut Vec<String>) {
    for r in &side.radii {
        if !r.tail.is_finite() {
            notes.push(format!(
                "{label} side: truncated series does not converge at r = {r} (tail unbounded)",
                r = r.radius
            ));
        } else if r.tail > tol {
            notes.push(format!(
                "{label} side: truncation tail {t:.3e} at r = {r} exceeds tolerance",
                t = r.tail,
                r = r.radius
            ));
        }
    }
}

fn assemble(
    direct: SideReport,
    inverse: SideReport,
    grid: &SamplingGrid,
    warnings: Vec<String>,
    forced_inconclusive: bool,
) -> MembershipReport {
    let tol = grid.tolerance;
    let mut min_margin = direct.margin().min(inverse.margin());
    if forced_inconclusive && min_margin > -tol {
        min_margin = 0.0;
    }
    let verdict = Verdict::classify(min_margin, tol);
    let fails = |s: &SideReport| {
        let m = if forced_inconclusive && s.margin() > -tol { 0.0 } else { s.margin() };
        verdict != Verdict::Member && Verdict::classify(m, tol) == verdict
    };
    let side = match (fails(&direct), fails(&inverse)) {
        (true, true) => FailingSide::Both,
        (true, false) => FailingSide::Direct,
        (false, true) => FailingSide::Inverse,
        (false, false) => FailingSide::None,
    };
    let mut notes = Vec::new();
    tail_notes("direct", &direct, tol, &mut notes);
    tail_notes("inverse", &inverse, tol, &mut notes);
    MembershipReport { verdict, side, min_margin, direct, inverse, grid: grid.clone(), notes, warnings }
}

/// Real-part form: `Re L[f] > alpha` on the disk and `Re L[g] > alpha` on
/// the inverse side, with `alpha` taken from `p`.
pub fn halfplane_membership(
    f: &ExactSeries,
    p: &ClassParams,
    grid: &SamplingGrid,
) -> Result<MembershipReport, MembershipError> {
    grid.validate()?;
    let (direct, inverse) = operator_pair(f, p, grid)?;
    let alpha = rational_to_f64(p.alpha());
    let score = move |w: Complex64| w.re - alpha;
    let d = sample_side(&direct, &grid.radii, grid, &score);
    let i = sample_side(&inverse, &grid.inverse_radii(), grid, &score);
    Ok(assemble(d, i, grid, Vec::new(), false))
}

/// Subordination form: every sampled value of `L[f]` and `L[g]` must lie in
/// `Phi(disk)`, decided by the winding number of the sampled boundary curve
/// `Phi(0.999 e^{i theta})`. The margin is the signed distance to that curve.
pub fn subordination_membership(
    f: &ExactSeries,
    p: &ClassParams,
    phi: &PhiSpec,
    grid: &SamplingGrid,
) -> Result<MembershipReport, MembershipError> {
    grid.validate()?;
    let (direct, inverse) = operator_pair(f, p, grid)?;
    let boundary = ClosedCurve::sample(grid.samples_per_circle, BOUNDARY_RADIUS, |z| phi.eval(z));
    let mut warnings = Vec::new();
    if boundary.self_intersects() {
        warnings.push(format!("boundary of {phi} self-intersects; Phi is probably not univalent"));
    }
    let bad_winding = std::sync::atomic::AtomicBool::new(false);
    let score = |w: Complex64| {
        let (winding, d) = boundary.locate(w);
        match winding {
            1 => d,
            0 => -d,
            _ => {
                bad_winding.store(true, std::sync::atomic::Ordering::Relaxed);
                0.0
            }
        }
    };
    let d = sample_side(&direct, &grid.radii, grid, &score);
    let i = sample_side(&inverse, &grid.inverse_radii(), grid, &score);
    let forced = bad_winding.into_inner();
    if forced {
        warnings.push(format!("boundary of {phi} winds more than once around a sampled value"));
    }
    Ok(assemble(d, i, grid, warnings, forced))
}

#[derive(Debug, Clone, PartialEq)]
pub struct CaratheodoryReport {
    pub verdict: Verdict,
    pub min_real_part: f64,
    pub radii: Vec<RadiusSample>,
    pub max_coeff_abs: f64,
    /// `max |Phi_n| > 2`, impossible for a function of positive real part.
    pub coeff_bound_exceeded: bool,
}

/// Samples `Re Phi` on the grid circles.
pub fn caratheodory_check(phi: &PhiSpec, grid: &SamplingGrid) -> Result<CaratheodoryReport, MembershipError> {
    grid.validate()?;
    let radii: Vec<RadiusSample> = grid
        .radii
        .iter()
        .map(|&r| {
            let sampled_min = grid.circle(r).par_iter().map(|&z| phi.eval(z).re).reduce(|| f64::INFINITY, f64::min);
            RadiusSample { radius: r, sampled_min, tail: 0.0 }
        })
        .collect();
    let min_real_part = radii.iter().map(|r| r.sampled_min).fold(f64::INFINITY, f64::min);
    let max_coeff_abs = phi.max_coeff_abs(grid.truncation_order);
    Ok(CaratheodoryReport {
        verdict: Verdict::classify(min_real_part, grid.tolerance),
        min_real_part,
        radii,
        max_coeff_abs,
        coeff_bound_exceeded: max_coeff_abs > 2.0,
    })
}

/// Coefficients of the Schwarz functions `w = Phi^{-1}(L[f])` and
/// `v = Phi^{-1}(L[g])`.
#[derive(Debug, Clone, PartialEq)]
pub struct SchwarzWitness {
    pub t: Vec<f64>,
    pub s: Vec<f64>,
    /// `max(|F_1(f) - Phi_1 t_1|, |F_1(g) - Phi_1 s_1|)`.
    pub residual: f64,
}

/// Extracts `t_1..t_k` and `s_1..s_k` for a preset `Phi`.
pub fn schwarz_extract(
    f: &ExactSeries,
    p: &ClassParams,
    phi: &PhiSpec,
    k: usize,
) -> Result<SchwarzWitness, MembershipError> {
    if !phi.is_preset() {
        return Err(MembershipError::NoClosedFormInverse);
    }
    if !f.is_normalized() {
        return Err(crate::SeriesError::NotNormalized.into());
    }
    let k = k.max(1);
    let work = f.order().max(k + 1);
    let f = f.padded(work);
    let g = inverse_coeffs(&f, work)?;
    let phi1 = phi.coeff(1);
    let side = |h: &ExactSeries| -> Result<(Vec<f64>, f64), MembershipError> {
        let l = operator_series(&h.to_float(), p)?;
        let w = phi.inverse_series(&l)?;
        let coeffs = (1..=k).map(|j| w.coeff(j).re).collect::<Vec<_>>();
        let residual = (l.coeff(1).re - phi1 * coeffs[0]).abs();
        Ok((coeffs, residual))
    };
    let (t, rt) = side(&f)?;
    let (s, rs) = side(&g)?;
    Ok(SchwarzWitness { t, s, residual: rt.max(rs) })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{int, rat, Rational};

    fn quad(a: Rational) -> ExactSeries {
        ExactSeries::normalized(&[a], 12)
    }

    #[test]
    fn grid_validation() {
        assert!(SamplingGrid::default().validate().is_ok());
        let bad = SamplingGrid { radii: vec![0.5, 0.5], ..Default::default() };
        assert_eq!(bad.validate(), Err(MembershipError::Radii));
        let bad = SamplingGrid { radii: vec![0.5, 1.0], ..Default::default() };
        assert_eq!(bad.validate(), Err(MembershipError::Radii));
        let bad = SamplingGrid { tolerance: 0.0, ..Default::default() };
        assert_eq!(bad.validate(), Err(MembershipError::Tolerance));
        assert_eq!(SamplingGrid::default().inverse_radii(), vec![0.5, 0.7, 0.9]);
    }

    #[test]
    fn tail_estimates() {
        let poly: Vec<Complex64> = [1.0, 0.2, 0.0, 0.0, 0.0].iter().map(|&x| Complex64::new(x, 0.0)).collect();
        assert_eq!(tail_estimate(&poly, 0.99), 0.0);
        // geometric 0.5^k: exact tail sum_{k>T} (0.5 r)^k
        let geo: Vec<Complex64> = (0..=16).map(|k| Complex64::new(0.5f64.powi(k), 0.0)).collect();
        let r = 0.9f64;
        let exact: f64 = (17..200).map(|k| (0.5 * r).powi(k)).sum();
        assert!((tail_estimate(&geo, r) - exact).abs() < 1e-12 * exact.max(1e-300) + 1e-15);
        let growing: Vec<Complex64> = (0..=16).map(|k| Complex64::new(1.6f64.powi(k), 0.0)).collect();
        assert!(tail_estimate(&growing, 0.7).is_infinite());
    }

    #[test]
    fn identity_is_member() {
        let f = ExactSeries::identity(12);
        let p = ClassParams::ints(2, 3, 1).unwrap();
        let r = halfplane_membership(&f, &p, &SamplingGrid::default()).unwrap();
        assert_eq!(r.verdict, Verdict::Member);
        assert!((r.min_margin - 1.0).abs() < 1e-12);
        assert_eq!(r.side, FailingSide::None);
    }

    #[test]
    fn small_quadratic_is_member() {
        let p = ClassParams::ints(1, 1, 0).unwrap();
        let r = halfplane_membership(&quad(rat(1, 10)), &p, &SamplingGrid::default()).unwrap();
        assert_eq!(r.verdict, Verdict::Member, "{r:?}");
        // Re(1 + 0.2 z) on r = 0.99
        assert!((r.direct.sampled_min() - (1.0 - 0.198)).abs() < 1e-9);
    }

    #[test]
    fn large_quadratic_fails_above_half() {
        let p = ClassParams::ints(1, 1, 0).unwrap().with_alpha(rat(1, 2)).unwrap();
        let r = halfplane_membership(&quad(rat(2, 5)), &p, &SamplingGrid::default()).unwrap();
        assert_eq!(r.verdict, Verdict::NonMember);
        assert!((r.min_margin - (0.208 - 0.5)).abs() < 5e-3, "{}", r.min_margin);
        assert!(matches!(r.side, FailingSide::Direct | FailingSide::Both));
    }

    #[test]
    fn per_radius_minima_decrease() {
        let p = ClassParams::triple(rat(1, 2), int(2), rat(1, 3)).unwrap();
        let f = ExactSeries::normalized(&[rat(1, 20), rat(-1, 30)], 12);
        let r = halfplane_membership(&f, &p, &SamplingGrid::default()).unwrap();
        for side in [&r.direct, &r.inverse] {
            for w in side.radii.windows(2) {
                assert!(w[1].sampled_min <= w[0].sampled_min + 1e-12);
            }
        }
    }

    #[test]
    fn caratheodory_presets() {
        let grid = SamplingGrid::default();
        let hp = caratheodory_check(&PhiSpec::halfplane(0.0).unwrap(), &grid).unwrap();
        assert_eq!(hp.verdict, Verdict::Member);
        assert_eq!(hp.max_coeff_abs, 2.0);
        assert!(!hp.coeff_bound_exceeded);
        assert_eq!(caratheodory_check(&PhiSpec::disk(1.0).unwrap(), &grid).unwrap().verdict, Verdict::Member);
        let bad = caratheodory_check(&PhiSpec::Coeffs(vec![-3.0]), &grid).unwrap();
        assert_eq!(bad.verdict, Verdict::NonMember);
        assert!(bad.coeff_bound_exceeded);
        assert!(bad.radii[0].sampled_min <= 1.0 - 3.0 * 0.5 + 1e-12);
    }

    #[test]
    fn subordination_into_disk() {
        let p = ClassParams::ints(1, 1, 0).unwrap();
        let grid = SamplingGrid::default();
        let r = subordination_membership(&quad(rat(1, 10)), &p, &PhiSpec::disk(1.0).unwrap(), &grid).unwrap();
        assert_eq!(r.verdict, Verdict::Member, "{r:?}");
        let id =
            subordination_membership(&ExactSeries::identity(4), &p, &PhiSpec::Coeffs(vec![0.5, 0.1]), &grid).unwrap();
        assert_eq!(id.verdict, Verdict::Member);
    }

    #[test]
    fn witnesses() {
        let p = ClassParams::ints(1, 1, 0).unwrap();
        let phi = PhiSpec::halfplane(0.0).unwrap();
        let w = schwarz_extract(&quad(rat(1, 10)), &p, &phi, 4).unwrap();
        assert!((w.t[0] - 0.1).abs() < 1e-12);
        assert!((w.s[0] + w.t[0]).abs() < 1e-9);
        assert!(w.residual < 1e-9);
        let zero = schwarz_extract(&ExactSeries::identity(3), &p, &phi, 3).unwrap();
        assert!(zero.t.iter().chain(&zero.s).all(|&x| x == 0.0));
        assert_eq!(
            schwarz_extract(&quad(int(0)), &p, &PhiSpec::Coeffs(vec![1.0]), 2),
            Err(MembershipError::NoClosedFormInverse)
        );
    }
}

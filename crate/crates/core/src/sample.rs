//! Random exact inputs for property checks and the CLI's random mode.

use rand::Rng;

use crate::operator::ClassParams;
use crate::scalar::{rat, Rational};
use crate::series::ExactSeries;

/// `p/q` with `|p| <= 9`, `1 <= q <= 9`.
pub fn random_rational<R: Rng + ?Sized>(rng: &mut R) -> Rational {
    rat(rng.random_range(-9..=9), rng.random_range(1..=9))
}

/// `z + a_2 z^2 + ... + a_N z^N` with random small rationals.
pub fn random_normalized<R: Rng + ?Sized>(rng: &mut R, order: usize) -> ExactSeries {
    let tail: Vec<Rational> = (2..=order).map(|_| random_rational(rng)).collect();
    ExactSeries::normalized(&tail, order)
}

/// Random valid `(mu, lambda, delta)` with `alpha = 0`: `mu` in `[0, 4]`,
/// `lambda` in `[1, 4]`, `delta` in `[0, 3]`, all with denominators up to 6.
pub fn random_params<R: Rng + ?Sized>(rng: &mut R) -> ClassParams {
    let mut draw = |lo: i64, hi: i64| {
        let q = rng.random_range(1..=6);
        rat(rng.random_range(lo * q..=hi * q), q)
    };
    let (mu, lambda, delta) = (draw(0, 4), draw(1, 4), draw(0, 3));
    ClassParams::triple(mu, lambda, delta).expect("drawn inside the valid ranges")
}

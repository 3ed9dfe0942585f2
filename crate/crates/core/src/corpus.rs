//! Built-in candidate functions.

use std::fmt;

use num_traits::Signed;

use crate::scalar::{int, rat, Rational};
use crate::series::ExactSeries;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CorpusKind {
    /// Truncation of a classical bi-univalent example.
    SigmaExample,
    /// `z + a z^2` with `|a| <= 1/2`, which is univalent.
    Quadratic,
    /// `z + eps z^n`: coefficients `a_2..a_{n-1}` vanish.
    Gap,
    Identity,
    Custom,
}

impl fmt::Display for CorpusKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CorpusKind::SigmaExample => "sigma-example",
            CorpusKind::Quadratic => "quadratic",
            CorpusKind::Gap => "gap",
            CorpusKind::Identity => "identity",
            CorpusKind::Custom => "custom",
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CorpusEntry {
    pub label: String,
    pub kind: CorpusKind,
    pub f: ExactSeries,
}

impl CorpusEntry {
    pub fn custom(label: impl Into<String>, tail: &[Rational], order: usize) -> Self {
        CorpusEntry {
            label: label.into(),
            kind: CorpusKind::Custom,
            f: ExactSeries::normalized(tail, order.max(tail.len() + 1)),
        }
    }
}

/// `z/(1-z)`, `-log(1-z)` and `(1/2) log((1+z)/(1-z))`, truncated at `order`.
pub fn sigma_examples(order: usize) -> Vec<CorpusEntry> {
    let geometric: Vec<Rational> = (2..=order).map(|_| int(1)).collect();
    let log: Vec<Rational> = (2..=order as i64).map(|n| rat(1, n)).collect();
    let atanh: Vec<Rational> = (2..=order as i64).map(|n| if n % 2 == 1 { rat(1, n) } else { int(0) }).collect();
    [("z/(1-z)", geometric), ("-log(1-z)", log), ("log((1+z)/(1-z))/2", atanh)]
        .into_iter()
        .map(|(label, tail)| CorpusEntry {
            label: label.into(),
            kind: CorpusKind::SigmaExample,
            f: ExactSeries::normalized(&tail, order),
        })
        .collect()
}

/// `z + a z^2`; `None` unless `|a| <= 1/2`, the range where it is univalent.
pub fn quadratic(a: Rational, order: usize) -> Option<CorpusEntry> {
    if a.abs() > rat(1, 2) {
        return None;
    }
    Some(CorpusEntry {
        label: format!("z+({a})z^2"),
        kind: CorpusKind::Quadratic,
        f: ExactSeries::normalized(&[a], order),
    })
}

/// `z + eps z^n`, `n >= 2`.
pub fn gap(n: usize, eps: Rational, order: usize) -> CorpusEntry {
    assert!(n >= 2 && n <= order, "gap index must lie in 2..=order");
    let mut tail = vec![int(0); n - 1];
    tail[n - 2] = eps.clone();
    CorpusEntry { label: format!("z+({eps})z^{n}"), kind: CorpusKind::Gap, f: ExactSeries::normalized(&tail, order) }
}

/// The corpus shipped with the toolkit.
pub fn shipped(order: usize) -> Vec<CorpusEntry> {
    let mut out = vec![CorpusEntry { label: "z".into(), kind: CorpusKind::Identity, f: ExactSeries::identity(order) }];
    for a in [rat(1, 10), rat(-1, 10), rat(1, 4), rat(2, 5)] {
        out.extend(quadratic(a, order));
    }
    for (n, eps) in [(4, rat(1, 10)), (4, rat(-1, 20)), (5, rat(1, 10)), (6, rat(1, 20))] {
        if n <= order {
            out.push(gap(n, eps, order));
        }
    }
    out.extend(sigma_examples(order));
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sigma_example_coefficients() {
        let ex = sigma_examples(6);
        assert_eq!(ex[0].f.coeffs(), &[int(0), int(1), int(1), int(1), int(1), int(1), int(1)]);
        assert_eq!(ex[1].f.coeff(5), &rat(1, 5));
        assert_eq!(ex[2].f.coeff(4), &int(0));
        assert_eq!(ex[2].f.coeff(5), &rat(1, 5));
        assert!(ex.iter().all(|e| e.f.is_normalized() && e.kind == CorpusKind::SigmaExample));
    }

    #[test]
    fn quadratic_univalence_guard() {
        assert!(quadratic(rat(1, 2), 4).is_some());
        assert!(quadratic(rat(-51, 100), 4).is_none());
    }

    #[test]
    fn shipped_corpus_is_normalized() {
        let c = shipped(12);
        assert_eq!(c.len(), 12);
        assert!(c.iter().all(|e| e.f.is_normalized() && e.f.order() == 12));
        let g = gap(5, rat(1, 10), 8);
        assert_eq!(crate::bounds::gap_index(&g.f), Some(5));
    }
}

use faberkit_core::corpus::CorpusEntry;
use faberkit_core::sample::random_rational;
use faberkit_core::scalar::int;
use faberkit_core::{inverse_coeffs, ExactSeries, Rational};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::Run;
use crate::args::InvertArgs;
use crate::error::{input, CliError};
use crate::output::{q, qd, Format, Report};

const RANDOM_DRAWS: usize = 3;

#[derive(Debug, Serialize)]
struct Row {
    #[serde(skip_serializing_if = "Option::is_none")]
    draw: Option<usize>,
    n: usize,
    faber: String,
    faber_decimal: String,
    reversion: String,
    reversion_decimal: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    closed_form: Option<String>,
    #[serde(rename = "match")]
    matches: bool,
}

/// `b_2, b_3, b_4` written out in terms of `a_2, a_3, a_4`.
fn closed_form(f: &ExactSeries, n: usize) -> Option<Rational> {
    let a = |k: usize| f.get(k).cloned().unwrap_or_else(|| int(0));
    let (a2, a3, a4) = (a(2), a(3), a(4));
    match n {
        2 => Some(-a2),
        3 => Some(int(2) * a2.clone() * a2 - a3),
        4 => Some(-(int(5) * a2.clone() * a2.clone() * a2.clone() - int(5) * a2 * a3 + a4)),
        _ => None,
    }
}

fn rows_for(f: &ExactSeries, draw: Option<usize>, with_closed_form: bool) -> Result<Vec<Row>, CliError> {
    let order = f.order();
    let faber = inverse_coeffs(f, order).map_err(input)?;
    let reversion = f.revert().map_err(input)?;
    Ok((2..=order)
        .map(|n| {
            let (b, r) = (faber.coeff(n), reversion.coeff(n));
            let cf = if with_closed_form { closed_form(f, n) } else { None };
            let matches = b == r && cf.as_ref().is_none_or(|c| c == b);
            Row {
                draw,
                n,
                faber: q(b),
                faber_decimal: qd(b),
                reversion: q(r),
                reversion_decimal: qd(r),
                closed_form: cf.as_ref().map(q),
                matches,
            }
        })
        .collect())
}

pub fn run(args: &InvertArgs, format: Format) -> Result<Run, CliError> {
    let mut report = Report::new("invert");
    let random = args.coeffs.coeffs.trim() == "a";
    if random {
        let order = args.coeffs.order.unwrap_or(4);
        if order < 2 {
            return Err(CliError::Input("--order must be at least 2".into()));
        }
        let mut rng = ChaCha8Rng::seed_from_u64(args.seed);
        let mut draws = Vec::new();
        for d in 0..RANDOM_DRAWS {
            let tail: Vec<Rational> = (2..=order).map(|_| random_rational(&mut rng)).collect();
            let f = CorpusEntry::custom("draw", &tail, order).f;
            draws.push(tail.iter().map(q).collect::<Vec<_>>());
            report.rows.extend(rows_for(&f, Some(d + 1), true)?);
        }
        report.set("mode", "random");
        report.set("seed", args.seed);
        report.set("order", order);
        report.set("draws", draws);
    } else {
        let tail = args.coeffs.tail()?;
        let order = args.coeffs.order_for(&tail, tail.len() + 1)?.max(2);
        let f = ExactSeries::normalized(&tail, order);
        report.set("coeffs", tail.iter().map(q).collect::<Vec<_>>());
        report.set("order", order);
        report.rows = rows_for(&f, None, false)?;
    }
    let all = report.rows.iter().all(|r| r.matches);
    report.set("match", all);
    let mismatch = (!all).then(|| {
        let bad: Vec<String> = report.rows.iter().filter(|r| !r.matches).map(|r| format!("b{}", r.n)).collect();
        format!("Faber and reversion disagree at {}", bad.join(", "))
    });
    Ok(Run { output: report.render(format)?, mismatch, ..Default::default() })
}

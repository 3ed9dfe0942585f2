use faberkit_core::{faber_k, ExactSeries, FaberQuery};
use serde::Serialize;

use super::Run;
use crate::args::FaberArgs;
use crate::error::{input, CliError};
use crate::output::{q, qd, Format, Report};

#[derive(Debug, Serialize)]
struct Row {
    n: usize,
    p: String,
    value: String,
    value_decimal: String,
    /// `[z^n] (f/z)^p`, computed by series powering.
    oracle: String,
    #[serde(rename = "match")]
    matches: bool,
}

pub fn run(args: &FaberArgs, format: Format) -> Result<Run, CliError> {
    let tail = args.coeffs.tail()?;
    let ns = args.n.clone().unwrap_or_default();
    let needed = ns.iter().max().map_or(0, |&n| n + 1);
    let order = args.coeffs.order_for(&tail, (tail.len() + 1).max(needed))?.max(2);
    let ns = if ns.is_empty() { (1..order).collect() } else { ns };
    let f = ExactSeries::normalized(&tail, order);
    let power = f.div_z().and_then(|u| u.pow(args.p.clone())).map_err(input)?;

    let mut report = Report::new("faber");
    report.set("coeffs", tail.iter().map(q).collect::<Vec<_>>());
    report.set("order", order);
    report.set("p", q(&args.p));
    for n in ns {
        let query = FaberQuery::new(&f, n, args.p.clone()).map_err(input)?;
        let k = faber_k(&query).map_err(input)?;
        let oracle = power.coeff(n);
        report.rows.push(Row {
            n,
            p: q(&args.p),
            value: q(&k),
            value_decimal: qd(&k),
            oracle: q(oracle),
            matches: &k == oracle,
        });
    }
    let all = report.rows.iter().all(|r| r.matches);
    report.set("match", all);
    let mismatch = (!all).then(|| "Faber coefficients disagree with the series power".to_string());
    Ok(Run { output: report.render(format)?, mismatch, ..Default::default() })
}

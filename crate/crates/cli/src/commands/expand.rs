use faberkit_core::bounds::consistency_warnings;
use faberkit_core::operator::operator_series;
use faberkit_core::{compare_f, ExactSeries, DEFAULT_ORDER};
use serde::Serialize;

use super::Run;
use crate::args::ExpandArgs;
use crate::error::{input, CliError};
use crate::output::{q, qd, Format, Report};

#[derive(Debug, Serialize)]
struct Row {
    k: usize,
    direct: String,
    direct_decimal: String,
    published: String,
    difference: String,
    difference_decimal: String,
    consistent: bool,
}

pub fn run(args: &ExpandArgs, format: Format) -> Result<Run, CliError> {
    let tail = args.coeffs.tail()?;
    let order = args.coeffs.order_for(&tail, DEFAULT_ORDER)?.max(2);
    let p = args.params.params()?;
    let f = ExactSeries::normalized(&tail, order);
    let l = operator_series(&f, &p).map_err(input)?;
    let audit = compare_f(&f, &p, order).map_err(input)?;

    let mut report = Report::new("expand");
    report.set("coeffs", tail.iter().map(q).collect::<Vec<_>>());
    report.set("order", order);
    report.set("params", p.to_string());
    report.set("xi", q(&p.xi()));
    report.set("operator", l.coeffs().iter().map(q).collect::<Vec<_>>());
    report.set("discrepancy_norm", audit.norm());
    for e in &audit.entries {
        report.rows.push(Row {
            k: e.index,
            direct: q(&e.direct),
            direct_decimal: qd(&e.direct),
            published: q(&e.published),
            difference: q(&e.difference),
            difference_decimal: qd(&e.difference),
            consistent: e.consistent(),
        });
    }
    for e in audit.inconsistent() {
        report.warnings.push(format!(
            "F_{}: direct expansion {} differs from the published functional {} by {} ({p})",
            e.index,
            q(&e.direct),
            q(&e.published),
            q(&e.difference)
        ));
    }
    report.warnings.extend(consistency_warnings(&p));
    let warnings = report.warnings.clone();
    Ok(Run { output: report.render(format)?, warnings, strict: args.strict, ..Default::default() })
}

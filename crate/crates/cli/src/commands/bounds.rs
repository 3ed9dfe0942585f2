use faberkit_core::bound_report;
use faberkit_core::bounds::BoundValue;
use serde::Serialize;

use super::Run;
use crate::args::BoundsArgs;
use crate::error::{input, CliError};
use crate::output::{q, Format, Report};

#[derive(Debug, Serialize)]
struct Row {
    quantity: String,
    bound: String,
    bound_decimal: String,
    branch: String,
    /// The competing expression, when the bound is a minimum of two.
    alternative: String,
}

fn value(b: &BoundValue) -> (String, String) {
    (b.to_string(), b.decimal())
}

pub fn run(args: &BoundsArgs, format: Format) -> Result<Run, CliError> {
    let p = args.params.params()?;
    let r = bound_report(&p, &args.n).map_err(input)?;

    let mut report = Report::new("bounds");
    report.set("params", p.to_string());
    report.set("xi", q(&p.xi()));
    let (bound, bound_decimal) = value(&r.a2.value);
    let alternative = match r.a2.value {
        BoundValue::Exact(_) => BoundValue::Sqrt(r.a2.radicand.clone()).to_string(),
        BoundValue::Sqrt(_) => q(&r.a2.linear),
    };
    report.set("a2_bound", &bound);
    report.set("a2_bound_decimal", &bound_decimal);
    report.rows.push(Row { quantity: "a2".into(), bound, bound_decimal, branch: r.a2.branch.to_string(), alternative });

    let (bound, bound_decimal) = value(&BoundValue::Exact(r.a3.value.clone()));
    let alternative = if r.a3.value == r.a3.expr1 { q(&r.a3.expr2) } else { q(&r.a3.expr1) };
    report.set("a3_bound", &bound);
    report.set("a3_bound_decimal", &bound_decimal);
    report.rows.push(Row { quantity: "a3".into(), bound, bound_decimal, branch: r.a3.branch.to_string(), alternative });

    for g in &r.an {
        let (bound, bound_decimal) = value(&BoundValue::Exact(g.value.clone()));
        report.rows.push(Row {
            quantity: format!("a{}", g.n),
            bound,
            bound_decimal,
            branch: "gap".into(),
            alternative: String::new(),
        });
    }
    report.warnings = r.warnings.clone();
    Ok(Run { output: report.render(format)?, warnings: r.warnings, strict: args.strict, ..Default::default() })
}

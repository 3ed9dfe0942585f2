use faberkit_core::bounds::{audit_coefficients, consistency_warnings, AuditRecord};
use faberkit_core::membership::MembershipReport;
use faberkit_core::{
    compare_f, halfplane_membership, inverse_coeffs, subordination_membership, ClassParams, ExactSeries, PhiSpec,
    SamplingGrid, Verdict, DEFAULT_ORDER,
};
use serde::Serialize;

use super::Run;
use crate::args::VerifyArgs;
use crate::error::{input, CliError};
use crate::output::{q, qd, Format, Report};

/// Indices of the coefficient functionals the bounds are built from.
pub const AUDITED_FUNCTIONALS: usize = 2;

/// Everything computed for one (function, parameters) pair.
pub struct Cell {
    pub membership: MembershipReport,
    /// Empty unless the verdict is `member`.
    pub audit: Vec<AuditRecord>,
    pub discrepancy_norm: f64,
    pub warnings: Vec<String>,
    pub mismatch: Option<String>,
}

impl Cell {
    pub fn counterexamples(&self) -> impl Iterator<Item = &AuditRecord> {
        self.audit.iter().filter(|r| r.is_counterexample())
    }
}

/// Membership (real-part form when `phi` is `None`, subordination otherwise),
/// the coefficient audit for members, and the functional comparison.
pub fn evaluate(
    f: &ExactSeries,
    p: &ClassParams,
    phi: Option<&PhiSpec>,
    grid: &SamplingGrid,
) -> Result<Cell, CliError> {
    let membership = match phi {
        None => halfplane_membership(f, p, grid),
        Some(phi) => subordination_membership(f, p, phi, grid),
    }
    .map_err(input)?;

    let work = f.padded(f.order().max(grid.truncation_order + 1));
    let via_faber = inverse_coeffs(&work, work.order()).map_err(input)?;
    let via_reversion = work.revert().map_err(input)?;
    let mismatch =
        (via_faber != via_reversion).then(|| "inverse coefficients: Faber formula and reversion disagree".to_string());

    let audit = if membership.verdict == Verdict::Member { audit_coefficients(f, p) } else { Vec::new() };
    let cmp = compare_f(f, p, AUDITED_FUNCTIONALS).map_err(input)?;
    let mut warnings = membership.warnings.clone();
    for e in cmp.inconsistent() {
        warnings.push(format!(
            "compare_F: F_{} direct {} vs published {} (difference {})",
            e.index,
            q(&e.direct),
            q(&e.published),
            q(&e.difference)
        ));
    }
    warnings.extend(consistency_warnings(p));
    Ok(Cell { membership, audit, discrepancy_norm: cmp.norm(), warnings, mismatch })
}

pub fn counterexample_line(r: &AuditRecord, label: &str, p: &ClassParams) -> String {
    format!("COUNTEREXAMPLE {label}: |{}| = {} exceeds bound {} at {p}", r.target, q(&r.coefficient), r.bound)
}

/// One audit record, prefixed by the verdict so that a CSV table is never
/// empty: non-members get a single row with `record = SKIPPED`.
#[derive(Debug, Serialize)]
struct Row {
    verdict: String,
    min_margin: f64,
    record: &'static str,
    target: String,
    coefficient: String,
    coefficient_decimal: String,
    bound: String,
    bound_decimal: String,
    holds: Option<bool>,
}

#[derive(Debug, Serialize)]
struct RadiusJson {
    radius: f64,
    sampled_min: f64,
    /// `null` when the truncated series is not convergent at this radius.
    tail: Option<f64>,
}

fn radii_json(side: &faberkit_core::membership::SideReport) -> Vec<RadiusJson> {
    side.radii
        .iter()
        .map(|r| RadiusJson {
            radius: r.radius,
            sampled_min: r.sampled_min,
            tail: r.tail.is_finite().then_some(r.tail),
        })
        .collect()
}

pub fn run(args: &VerifyArgs, format: Format) -> Result<Run, CliError> {
    let tail = args.coeffs.tail()?;
    let order = args.coeffs.order_for(&tail, DEFAULT_ORDER)?.max(2);
    let p = args.params.params()?;
    let grid = args.grid.grid()?;
    let f = ExactSeries::normalized(&tail, order);
    let cell = evaluate(&f, &p, args.phi.as_ref(), &grid)?;
    let m = &cell.membership;

    let mut report = Report::new("verify");
    report.set("coeffs", tail.iter().map(q).collect::<Vec<_>>());
    report.set("order", order);
    report.set("params", p.to_string());
    match &args.phi {
        None => {
            report.set("method", "halfplane");
            report.set("phi", format!("halfplane:{}", q(p.alpha())));
        }
        Some(phi) => {
            report.set("method", "subordination");
            report.set("phi", phi.to_string());
        }
    }
    report.set("verdict", m.verdict.to_string());
    report.set("failing_side", m.side.to_string());
    report.set("min_margin", m.min_margin);
    report.set("direct", radii_json(&m.direct));
    report.set("inverse", radii_json(&m.inverse));
    report.set("notes", &m.notes);
    report.set("discrepancy_norm", cell.discrepancy_norm);
    if m.verdict != Verdict::Member {
        report.set("audit", format!("skipped: verdict is {}", m.verdict));
    }
    let label = format!("f = z + [{}]", tail.iter().map(q).collect::<Vec<_>>().join(", "));
    let mut records = Vec::new();
    for r in &cell.audit {
        let (bound, bound_decimal) = (r.bound.to_string(), r.bound.decimal());
        report.rows.push(Row {
            verdict: m.verdict.to_string(),
            min_margin: m.min_margin,
            record: if r.holds { "AUDIT" } else { "COUNTEREXAMPLE" },
            target: r.target.to_string(),
            coefficient: q(&r.coefficient),
            coefficient_decimal: qd(&r.coefficient),
            bound,
            bound_decimal,
            holds: Some(r.holds),
        });
        if r.is_counterexample() {
            records.push(counterexample_line(r, &label, &p));
        }
    }
    if report.rows.is_empty() {
        report.rows.push(Row {
            verdict: m.verdict.to_string(),
            min_margin: m.min_margin,
            record: "SKIPPED",
            target: String::new(),
            coefficient: String::new(),
            coefficient_decimal: String::new(),
            bound: String::new(),
            bound_decimal: String::new(),
            holds: None,
        });
    }
    report.set("counterexamples", records.len());
    report.warnings = cell.warnings.clone();
    Ok(Run {
        output: report.render(format)?,
        warnings: cell.warnings,
        strict: args.strict,
        records,
        mismatch: cell.mismatch,
        ..Default::default()
    })
}

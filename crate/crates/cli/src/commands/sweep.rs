use std::fs;

use faberkit_core::bounds::{bound_a2, bound_an_gap, gap_index};
use faberkit_core::Verdict;
use rayon::prelude::*;
use serde::Serialize;

use super::verify::{counterexample_line, evaluate};
use super::Run;
use crate::args::SweepArgs;
use crate::config::{Plan, SweepConfig};
use crate::error::CliError;
use crate::output::{q, Format, Report};

/// One (parameters, function) cell. Column order is the CSV header.
#[derive(Debug, Clone, Serialize)]
pub struct SweepRow {
    pub mu: String,
    pub lambda: String,
    pub delta: String,
    pub alpha: String,
    pub function: String,
    pub kind: String,
    pub verdict: String,
    pub failing_side: String,
    pub min_margin: f64,
    pub direct_margin: f64,
    pub inverse_margin: f64,
    pub a2: String,
    pub a2_bound: String,
    pub a2_bound_decimal: String,
    pub gap_n: Option<usize>,
    pub gap_coefficient: Option<String>,
    pub gap_bound: Option<String>,
    /// `pass`, `COUNTEREXAMPLE`, or `skipped` for non-members.
    pub audit: String,
    pub discrepancy_norm: f64,
    pub warning: String,
}

struct CellOutcome {
    row: SweepRow,
    records: Vec<String>,
    mismatch: Option<String>,
}

fn run_cell(plan: &Plan, point: usize, entry: usize) -> Result<CellOutcome, CliError> {
    let p = &plan.points[point];
    let e = &plan.corpus[entry];
    let cell = evaluate(&e.f, p, plan.phi.as_ref(), &plan.grid)?;
    let m = &cell.membership;
    let gap_n = gap_index(&e.f);
    let a2 = e.f.get(2).map(q).unwrap_or_else(|| "0".into());
    let b2 = bound_a2(p).value;
    let records: Vec<String> = cell.counterexamples().map(|r| counterexample_line(r, &e.label, p)).collect();
    let audit = if m.verdict != Verdict::Member {
        "skipped"
    } else if records.is_empty() {
        "pass"
    } else {
        "COUNTEREXAMPLE"
    };
    let gap_coefficient = gap_n.map(|n| q(e.f.coeff(n)));
    let gap_bound = gap_n.map(|n| q(&bound_an_gap(n, p).expect("gap index is at least 4")));
    let row = SweepRow {
        mu: q(p.mu()),
        lambda: q(p.lambda()),
        delta: q(p.delta()),
        alpha: q(p.alpha()),
        function: e.label.clone(),
        kind: e.kind.to_string(),
        verdict: m.verdict.to_string(),
        failing_side: m.side.to_string(),
        min_margin: m.min_margin,
        direct_margin: m.direct.margin(),
        inverse_margin: m.inverse.margin(),
        a2,
        a2_bound: b2.to_string(),
        a2_bound_decimal: b2.decimal(),
        gap_n,
        gap_coefficient,
        gap_bound,
        audit: audit.into(),
        discrepancy_norm: cell.discrepancy_norm,
        warning: cell.warnings.join("; "),
    };
    Ok(CellOutcome { row, records, mismatch: cell.mismatch })
}

pub struct SweepOutput {
    pub rows: Vec<SweepRow>,
    /// COUNTEREXAMPLE lines, in row order.
    pub records: Vec<String>,
    pub mismatch: Option<String>,
}

/// Runs every cell; rows come back in lexicographic grid order (mu, lambda,
/// delta, alpha, corpus) regardless of scheduling.
pub fn execute(plan: &Plan) -> Result<SweepOutput, CliError> {
    let cells: Vec<(usize, usize)> =
        (0..plan.points.len()).flat_map(|i| (0..plan.corpus.len()).map(move |j| (i, j))).collect();
    let outcomes = cells.par_iter().map(|&(i, j)| run_cell(plan, i, j)).collect::<Result<Vec<_>, _>>()?;
    let mut rows = Vec::with_capacity(outcomes.len());
    let mut records = Vec::new();
    let mut mismatch = None;
    for o in outcomes {
        rows.push(o.row);
        records.extend(o.records);
        mismatch = mismatch.or(o.mismatch);
    }
    Ok(SweepOutput { rows, records, mismatch })
}

pub fn run(args: &SweepArgs, format: Option<Format>) -> Result<Run, CliError> {
    let text = fs::read_to_string(&args.config)
        .map_err(|e| CliError::Input(format!("cannot read config {}: {e}", args.config.display())))?;
    let config = SweepConfig::parse(&text)?;
    let plan = config.plan()?;
    let SweepOutput { rows, records, mismatch } = execute(&plan)?;

    let mut report = Report::new("sweep");
    report.set("grid_points", plan.points.len());
    report.set("corpus_size", plan.corpus.len());
    report.set("phi", plan.phi.as_ref().map(|p| p.to_string()));
    report.set("counterexamples", records.len());
    let mut warnings: Vec<String> = Vec::new();
    for w in rows.iter().flat_map(|r| r.warning.split("; ")).filter(|w| !w.is_empty()) {
        if !warnings.iter().any(|x| x == w) {
            warnings.push(w.to_string());
        }
    }
    report.rows = rows;
    let output = report.render(format.unwrap_or(plan.output))?;
    Ok(Run { output, warnings, strict: args.strict || plan.strict, records, dest: args.out.clone(), mismatch })
}

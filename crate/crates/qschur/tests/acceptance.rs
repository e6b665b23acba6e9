//! Acceptance suite: one PASS/FAIL line per criterion.

use std::process::ExitCode;
use std::time::Instant;

use qschur::flaggeom::FlagVariety;
use qschur::verify::{self, Report, FLAG_BUDGET};
use qschur::Result;

struct Outcome {
    passed: bool,
    summary: String,
}

fn summarize(reports: &[Report]) -> (bool, String) {
    let passed = reports.iter().all(Report::passed);
    let checked: u64 = reports.iter().map(|r| r.checked).sum();
    let failures: u64 = reports.iter().map(|r| r.failures).sum();
    let mut s = format!("{checked} checks, {failures} failures");
    if let Some(f) = reports.iter().find_map(|r| r.first_failure.clone()) {
        s.push_str(&format!("; first: {f}"));
    }
    (passed, s)
}

fn finish(reports: Vec<Report>, extra_ok: bool, extra: String) -> Outcome {
    let (passed, mut summary) = summarize(&reports);
    if !extra.is_empty() {
        summary.push_str("; ");
        summary.push_str(&extra);
    }
    Outcome {
        passed: passed && extra_ok,
        summary,
    }
}

fn dimensions() -> Result<Outcome> {
    Ok(finish(vec![verify::dimensions(2, 4)?], true, String::new()))
}

fn type_b_oracle() -> Result<Outcome> {
    let mut reports = Vec::new();
    for (n, r) in [(1, 2), (1, 3), (2, 3)] {
        reports.push(verify::b_oracle(n, r)?);
    }
    let central: u64 = reports.iter().map(|r| r.counts.get("lower-central").copied().unwrap_or(0)).sum();
    Ok(finish(reports, central > 0, format!("{central} central lowering products")))
}

fn type_d_oracle() -> Result<Outcome> {
    let reports = vec![verify::d_oracle(1, 4)?, verify::d_oracle(2, 4)?];
    let missing = verify::missing_branches(&reports);
    let note = if missing.is_empty() {
        format!("all {} branches fired", qschur::FormulaCase::FORMULA_BRANCHES.len())
    } else {
        format!("branches never fired: {}", missing.join(", "))
    };
    Ok(finish(reports, missing.is_empty(), note))
}

fn halving() -> Result<Outcome> {
    let x = FlagVariety::new(1, 2, 3, FLAG_BUDGET)?;
    let reports = vec![
        verify::halving_algebraic(1, 4)?,
        verify::halving_algebraic(2, 4)?,
        verify::geom_halving(&x)?,
    ];
    Ok(finish(reports, true, String::new()))
}

fn geometry() -> Result<Outcome> {
    let reports = vec![verify::geom(1, 2, 3, FLAG_BUDGET)?, verify::geom_census(1, 2, 5, FLAG_BUDGET)?];
    let lines = reports[0].counts.get("isotropic-lines").copied().unwrap_or(0);
    let orbits = reports[0].counts.get("orbits").copied().unwrap_or(0);
    Ok(finish(reports, lines == 16 && orbits == 15, format!("{lines} isotropic lines, {orbits} orbits at p = 3")))
}

fn structure() -> Result<Outcome> {
    let reports = vec![
        verify::structure(4, 1, 4)?,
        verify::bijections(1, 2)?,
        verify::bijections(2, 2)?,
        verify::bijections(1, 4)?,
        verify::bijections(2, 4)?,
    ];
    Ok(finish(reports, true, String::new()))
}

fn embedding() -> Result<Outcome> {
    Ok(finish(vec![verify::embedding(1, 4)?], true, String::new()))
}

type Criterion = (&'static str, fn() -> Result<Outcome>);

fn main() -> ExitCode {
    let criteria: [Criterion; 7] = [
        ("dimension formulas and class census", dimensions),
        ("type-B formulas vs Hecke oracle", type_b_oracle),
        ("type-D formulas vs Hecke oracle with branch coverage", type_d_oracle),
        ("halving, algebraic and on flags", halving),
        ("flag geometry censuses and counts", geometry),
        ("structural invariants", structure),
        ("embedding multiplicativity", embedding),
    ];
    let mut all = true;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let (passed, summary) = match run() {
            Ok(o) => (o.passed, o.summary),
            Err(e) => (false, format!("error: {e}")),
        };
        all &= passed;
        println!(
            "{} criterion {}: {name} ({summary}) [{:.1}s]",
            if passed { "PASS" } else { "FAIL" },
            i + 1,
            start.elapsed().as_secs_f64()
        );
    }
    if all {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}

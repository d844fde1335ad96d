//! Human-readable tables for the default (non-JSON) output.

use newtonps::problem::{CoefficientReport, ScoreLine, VerificationSection};
use newtonps::BuiltProblem;

pub(crate) fn print_diagram(problem: &BuiltProblem) {
    let profile = &problem.profile;
    let d = profile.diagram();
    println!(
        "germ: {}  (variables {})",
        problem.germ,
        problem.spec.variables.join(", ")
    );
    println!("facets ({}):", d.facet_count());
    for l in d.facets() {
        println!("  {}", l.display_with(&problem.spec.variables));
    }
    match d.stellar_vertex() {
        Some(m) => println!("stellar vertex: {}", m),
        None => println!("not stellar"),
    }
    for (name, u) in problem.spec.variables.iter().zip(profile.u_of_variables()) {
        println!("u({}) = {}", name, u);
    }
    println!("u(f) = {}", profile.u_of_f());
    if let Some(check) = &problem.facet_validation {
        if check.passed {
            println!(
                "facet check: {}",
                check.note.as_deref().unwrap_or("user facets match the computed diagram")
            );
        }
    }
}

pub(crate) fn print_coefficients(problem: &BuiltProblem, records: &[CoefficientReport]) {
    println!("germ: {}", problem.germ);
    for r in records {
        let agreement = match r.methods_agree {
            Some(true) => "  (methods agree)",
            Some(false) => "  (METHOD DISCREPANCY)",
            None => "",
        };
        println!(
            "coefficient at {:?} = {}  [method {}]{}",
            r.v, r.coefficient, r.method, agreement
        );
        if records.len() == 1 {
            println!("  boundary monomials: {}", r.boundary_count);
            println!("  relation rank: {}", r.relation_rank);
            for (subset, dim) in &r.dims_by_subset {
                println!("  dim J(v+1_{})/J(v+1) = {}", subset, dim);
            }
        }
    }
}

pub(crate) fn print_verification(section: &VerificationSection) {
    println!("claim: {}", section.claim);
    if let Some(kind) = &section.kind {
        println!("closed form: {}", kind);
        for f in &section.factors {
            let role = if f.sign == 1 { "numerator" } else { "denominator" };
            println!("  (1 - t^{:?})  [{}]", f.exponent, role);
        }
    }
    println!("targets checked: {}", section.targets_checked);
    if section.mismatches.is_empty() {
        println!("result: PASS");
    } else {
        println!("result: FAIL ({} mismatches)", section.mismatches.len());
        for m in &section.mismatches {
            println!("  at {:?}: expected {}, computed {}", m.v, m.predicted, m.computed);
        }
    }
}

pub(crate) fn print_scoreboard(lines: &[ScoreLine]) {
    let width = lines
        .iter()
        .map(|l| l.name.len() + l.check.len())
        .max()
        .unwrap_or(0)
        + 2;
    for l in lines {
        let label = format!("{}: {}", l.name, l.check);
        let mark = if l.passed { "ok " } else { "FAIL" };
        println!("{label:<width$} {mark}  {}", l.detail);
    }
    let green = lines.iter().filter(|l| l.passed).count();
    println!("{green}/{} checks passed", lines.len());
}

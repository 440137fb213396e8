use std::collections::BTreeSet;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_complex::Complex64;
use propmap_core::ballmap::{canonical_form, MonomialBallMap, Signature};
use propmap_core::catalog::{self, get, get_at, homogeneity_check, CatalogError, ParamIssue};
use propmap_core::classify::{
    brute_force_search, classify_degree2_r2, enumerate_linear_qp, lemma_harness, HarnessBounds, Lemma, SearchLimits,
};
use propmap_core::exactnum::{int, rat, Rational};
use propmap_core::induce::{residual_check, solve_induced, SolveStatus};
use propmap_core::numverify::{
    shilov_obstruction_demo, verify_boundary_behavior, verify_fiber_preservation, verify_map_into_domain,
    BOUNDARY_FINAL_TOL, FIBER_TOL, INTERIOR_TOL,
};
use propmap_core::poly::Polynomial;

const SEED: u64 = 20240101;
const NUMERIC_TRIALS: usize = 1000;
const BOUNDARY_STEPS: u32 = 4;
const LEMMA_TRIALS: usize = 1000;
const SHILOV_SAMPLES: usize = 1000;

struct Outcome {
    pass: bool,
    detail: String,
    notes: Vec<String>,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        pass,
        detail: detail.into(),
        notes: Vec::new(),
    }
}

fn sig2233() -> Signature {
    Signature::new(2, 2, 3, 3).unwrap()
}

fn map_a() -> MonomialBallMap {
    MonomialBallMap::parse(sig2233(), &["z1^2", "z1*z2", "z2*z3"], &["z3^2", "z3*z4", "z1*z4"]).unwrap()
}

fn map_b() -> MonomialBallMap {
    MonomialBallMap::parse(sig2233(), &["z1^2", "sqrt(2)*z1*z2", "z2^2"], &["z3^2", "sqrt(2)*z3*z4", "z4^2"]).unwrap()
}

fn all_zero<C: propmap_core::exactnum::Field>(polys: &[Polynomial<C>]) -> bool {
    polys.iter().all(Polynomial::is_zero)
}

fn criterion_1() -> Outcome {
    let expected: BTreeSet<String> = [
        "x1", "x2", "x3", "x4", "x1 + x3", "x1 + x4", "x2 + x3", "x2 + x4", "x1 + x2 + x3 + x4",
    ]
    .iter()
    .map(|t| Polynomial::<Rational>::parse_with(t, 4, "x").unwrap().to_string())
    .collect();
    let start = Instant::now();
    let got = enumerate_linear_qp();
    let elapsed = start.elapsed();
    let texts: BTreeSet<String> = got.iter().map(|q| q.to_string()).collect();
    let pass = got.len() == 9 && texts == expected && elapsed < Duration::from_secs(1);
    outcome(pass, format!("{} polynomials, set equal: {}, {elapsed:.2?} (< 1 s)", got.len(), texts == expected))
}

fn criterion_2() -> Outcome {
    let start = Instant::now();
    let report = classify_degree2_r2();
    let classes: BTreeSet<String> = report.representatives.iter().map(|g| g.to_json()).collect();
    let expected: BTreeSet<String> = [map_a(), map_b()].iter().map(|g| canonical_form(g).to_json()).collect();
    let grid = [int(1), int(2)];
    let search = match brute_force_search(sig2233(), 2, &grid, &SearchLimits::default()) {
        Ok(v) => v,
        Err(e) => return outcome(false, format!("brute_force_search failed: {e}")),
    };
    let found: BTreeSet<String> = search.iter().map(|g| g.to_json()).collect();
    let elapsed = start.elapsed();
    let pass = report.representatives.len() == 2 && classes == expected && found == classes && elapsed < Duration::from_secs(60);
    outcome(
        pass,
        format!(
            "{} classes, equal to (a),(b): {}, brute force {} maps, identical: {}, {elapsed:.2?} (< 60 s)",
            report.representatives.len(),
            classes == expected,
            search.len(),
            found == classes
        ),
    )
}

fn criterion_3() -> Outcome {
    let cases: [(&str, MonomialBallMap, Vec<Vec<&str>>); 2] = [
        ("a", map_a(), vec![vec!["z1^2", "z1*z2", "z2"], vec!["z1*z3", "z2*z3", "z4"], vec!["z3", "z4", "0"]]),
        (
            "b",
            map_b(),
            vec![
                vec!["z1^2", "sqrt(2)*z1*z2", "z2^2"],
                vec!["sqrt(2)*z1*z3", "z1*z4 + z2*z3", "sqrt(2)*z2*z4"],
                vec!["z3^2", "sqrt(2)*z3*z4", "z4^2"],
            ],
        ),
    ];
    let mut pass = true;
    let mut parts = Vec::new();
    for (label, g, printed) in cases {
        let start = Instant::now();
        let out = solve_induced(&g).unwrap();
        let texts = out.particular.texts();
        let equal = texts.iter().zip(&printed).all(|(row, p)| row.iter().map(String::as_str).eq(p.iter().copied()));
        let residual = all_zero(&residual_check(&g, &out.particular).unwrap());
        let elapsed = start.elapsed();
        let ok = out.status == SolveStatus::Unique && equal && residual && elapsed < Duration::from_secs(10);
        pass &= ok;
        parts.push(format!("({label}) {} text match {equal} residual zero {residual} {elapsed:.2?}", out.status.name()));
    }
    outcome(pass, parts.join("; ") + " (< 10 s each)")
}

fn criterion_4() -> Outcome {
    let g = MonomialBallMap::parse(sig2233(), &["z1", "z2", "0"], &["z3", "z4", "0"]).unwrap();
    let out = solve_induced(&g).unwrap();
    let want = vec![(2, 0), (2, 1), (2, 2)];
    let block = out.particular.texts() == vec![vec!["z1", "z2", "0"], vec!["z3", "z4", "0"], vec!["0", "0", "0"]];
    let pass = out.status == SolveStatus::Underdetermined && out.free_entries == want && block;
    outcome(pass, format!("{} free entries {:?}, block form [Z; 0]: {block}", out.status.name(), out.free_entries))
}

fn criterion_5() -> Outcome {
    let start = Instant::now();
    let mut pass = true;
    let mut parts = Vec::new();
    for name in ["family_t_2244", "family_t_2234"] {
        for t in [rat(0, 1), rat(1, 4), rat(1, 2), rat(3, 4)] {
            match catalog::verify_entry(name, Some(&t)) {
                Ok(report) => {
                    let ok = report.solver_residual_zero && report.matches();
                    pass &= ok;
                    if !ok {
                        parts.push(format!("{} residual zero {} match {}", report.label, report.solver_residual_zero, report.matches()));
                    }
                }
                Err(e) => {
                    pass = false;
                    parts.push(format!("{name} t={t}: {e}"));
                }
            }
        }
    }
    let rejected = matches!(
        get_at("family_t_2244", Some(&int(1))),
        Err(CatalogError::ParamError { issue: ParamIssue::IndeterminateEntry { .. } | ParamIssue::OutOfRange { .. }, .. })
    );
    pass &= rejected;
    let elapsed = start.elapsed();
    pass &= elapsed < Duration::from_secs(30);
    if parts.is_empty() {
        parts.push("8 instances with zero residual matching printed f_t".into());
    }
    outcome(pass, format!("{}; t=1 on 2244 -> ParamError: {rejected}, {elapsed:.2?} (< 30 s)", parts.join("; ")))
}

fn criterion_6() -> Outcome {
    let start = Instant::now();
    let mut names = Vec::new();
    for r in 2..=4 {
        for s in 2..=4 {
            names.push(format!("generalized_whitney({r},{s})"));
        }
    }
    for r in 2..=3 {
        for s in 2..=3 {
            names.push(format!("symmetric_square({r},{s})"));
        }
    }
    let mut failures = Vec::new();
    for name in &names {
        match catalog::verify_entry(name, None) {
            Ok(report) if report.solver_residual_zero && report.printed_residual_zero => {}
            Ok(report) => failures.push(format!("{name}: solver {} printed {}", report.solver_residual_zero, report.printed_residual_zero)),
            Err(e) => failures.push(format!("{name}: {e}")),
        }
    }
    let elapsed = start.elapsed();
    let pass = failures.is_empty() && elapsed < Duration::from_secs(120);
    let detail = if failures.is_empty() {
        format!("{} instances with zero residual", names.len())
    } else {
        failures.join("; ")
    };
    outcome(pass, format!("{detail}, {elapsed:.2?} (< 120 s)"))
}

fn criterion_7() -> Outcome {
    let entry = get("degree3_2244").unwrap();
    let report = catalog::verify(&entry).unwrap();
    let printed = entry.printed.as_ref().expect("printed forms");
    let (degree, flagged) = homogeneity_check(&printed.g, 4).unwrap();
    let flagged_texts: BTreeSet<&str> = flagged.iter().map(|&k| printed.g[k]).collect();
    let want: BTreeSet<&str> = ["x_2x_3^3", "x_3^2"].into_iter().collect();
    let q = Polynomial::<Rational>::parse_with("x1^2 + x1*x3 + x3^2", 4, "x").unwrap();
    let l = sig2233().form().polynomial::<Rational>();
    let lq = (&l * &q).to_string();
    let q_ok = entry.q_p == q;
    let corrected = report.corrected_p.as_deref() == Some(lq.as_str());
    let pass = report.solver_residual_zero && flagged_texts == want && q_ok && corrected;
    outcome(
        pass,
        format!(
            "solver residual zero {}, degree {degree}, flagged {:?}, Q_P stated {q_ok}, corrected P = {}",
            report.solver_residual_zero,
            flagged_texts,
            report.corrected_p.as_deref().unwrap_or("none")
        ),
    )
}

fn criterion_8() -> Outcome {
    let start = Instant::now();
    let bounds = HarnessBounds::default();
    let mut pass = true;
    let mut parts = Vec::new();
    for lemma in Lemma::all() {
        let report = lemma_harness(lemma, LEMMA_TRIALS, SEED, &bounds);
        let mut ok = report.violations.is_empty() && report.trials == LEMMA_TRIALS;
        let mut extra = String::new();
        match lemma {
            Lemma::L3_3 => {
                ok &= report.r3_instances > 0 && report.r3_min_monomials.is_some_and(|n| n >= 9);
                extra = format!(", r=3 instances {} min n {:?}", report.r3_instances, report.r3_min_monomials);
            }
            Lemma::L3_5 => {
                let m1 = report.clause_counts.get("m = 1").copied().unwrap_or(0);
                let m2 = report.clause_counts.get("m >= 2").copied().unwrap_or(0);
                ok &= m1 > 0 && m2 > 0;
                extra = format!(", clauses m=1: {m1} m>=2: {m2}");
            }
            _ => {}
        }
        pass &= ok;
        parts.push(format!("{} {} violations{extra}", lemma.name(), report.violations.len()));
    }
    let elapsed = start.elapsed();
    pass &= elapsed < Duration::from_secs(60);
    outcome(pass, format!("{} trials each: {}, {elapsed:.2?} (< 60 s)", LEMMA_TRIALS, parts.join("; ")))
}

fn criterion_9() -> Outcome {
    let start = Instant::now();
    let mut failures = Vec::new();
    let mut notes = Vec::new();
    let (mut worst_interior, mut worst_final, mut worst_fiber) = (f64::INFINITY, 0.0f64, 0.0f64);
    let names = catalog::shipped_names();
    for name in &names {
        let entry = get(name).unwrap();
        let report = catalog::verify(&entry).unwrap();
        let Some(f) = report.solver_f else {
            failures.push(format!("{name}: no solver f"));
            continue;
        };
        let sig = entry.g.signature();
        let interior = verify_map_into_domain(&f, sig.r, sig.s, NUMERIC_TRIALS, SEED).unwrap();
        let boundary = verify_boundary_behavior(&f, sig.r, sig.s, SEED, BOUNDARY_STEPS).unwrap();
        let fiber = verify_fiber_preservation(&f, &entry.g, NUMERIC_TRIALS, SEED).unwrap();
        let m = interior.min_margin_interior.unwrap();
        let last = *boundary.boundary_margins.last().unwrap();
        let res = fiber.fiber_residual_max.unwrap();
        worst_interior = worst_interior.min(m);
        worst_final = worst_final.max(last);
        worst_fiber = worst_fiber.max(res);
        if !(m > INTERIOR_TOL && last < BOUNDARY_FINAL_TOL && res < FIBER_TOL) {
            failures.push(format!("{}: interior {m:.3e} final {last:.3e} fiber {res:.3e}", entry.label()));
        }
        if !boundary.verdict.is_pass() {
            let least = boundary.boundary_margins.iter().copied().fold(f64::INFINITY, f64::min);
            notes.push(format!(
                "{}: boundary verdict {} (f(Z_k) leaves the target for some directions; largest margins {:?}, least {least:.3e})",
                entry.label(),
                boundary.verdict.name(),
                boundary.boundary_margins.iter().map(|m| format!("{m:.2e}")).collect::<Vec<_>>()
            ));
        }
    }
    let elapsed = start.elapsed();
    let pass = failures.is_empty() && elapsed < Duration::from_secs(120);
    let detail = if failures.is_empty() {
        format!(
            "{} maps: min interior margin {worst_interior:.3e} (> {INTERIOR_TOL:e}), max final boundary margin {worst_final:.3e} (< {BOUNDARY_FINAL_TOL:e}), max fiber residual {worst_fiber:.3e} (< {FIBER_TOL:e})",
            names.len()
        )
    } else {
        failures.join("; ")
    };
    Outcome {
        pass,
        detail: format!("{detail}, {elapsed:.2?} (< 120 s)"),
        notes,
    }
}

fn criterion_10() -> Outcome {
    let start = Instant::now();
    let c = |re: f64, im: f64| Complex64::new(re, im);
    let obstructed = shilov_obstruction_demo(&[c(0.5, 0.0), c(0.0, 0.0), c(0.0, 0.0)], SHILOV_SAMPLES, SEED).unwrap();
    let mut pass = obstructed.obstruction_found();
    let mut clean = Vec::new();
    for h in [c(0.0, 0.0), c(0.5, 0.0), c(-0.9, 0.0), c(0.0, 0.9), c(0.9 * 0.6, 0.9 * 0.8)] {
        let report = shilov_obstruction_demo(&[c(0.0, 0.0), c(0.0, 0.0), h], SHILOV_SAMPLES, SEED).unwrap();
        pass &= !report.obstruction_found();
        clean.push(format!("h={h}: min {:.3e}", report.min_value));
    }
    let elapsed = start.elapsed();
    pass &= elapsed < Duration::from_secs(30);
    outcome(
        pass,
        format!(
            "(1/2,0,0) witness value {:.3e}; no witness for {}; {elapsed:.2?} (< 30 s)",
            obstructed.witness.as_ref().map_or(f64::NAN, |w| w.value),
            clean.join(", ")
        ),
    )
}

fn main() -> ExitCode {
    let criteria: [(u32, &str, fn() -> Outcome); 10] = [
        (1, "linear Q_P enumeration", criterion_1),
        (2, "degree-2 classification and brute force", criterion_2),
        (3, "induced maps of (a) and (b)", criterion_3),
        (4, "degree-1 free row", criterion_4),
        (5, "parametrized families", criterion_5),
        (6, "generalized constructions", criterion_6),
        (7, "degree-3 example", criterion_7),
        (8, "lemma harnesses", criterion_8),
        (9, "numeric verification", criterion_9),
        (10, "Shilov obstruction", criterion_10),
    ];
    let mut failed = 0;
    for (n, title, run) in criteria {
        let result = run();
        println!("{} criterion {n:>2} ({title}): {}", if result.pass { "PASS" } else { "FAIL" }, result.detail);
        for note in &result.notes {
            println!("     note: {note}");
        }
        failed += usize::from(!result.pass);
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}

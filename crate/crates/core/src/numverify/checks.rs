use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::Rng;

use super::sample::{gaussian, sample_omega, trial_rng, with_singular_values};
use super::{
    omega_margin, FailReason, NumError, VerificationReport, Verdict, BOUNDARY_FINAL_TOL, FIBER_TOL, INTERIOR_TOL,
    MAX_FIBER_REJECTIONS,
};
use crate::ballmap::MonomialBallMap;
use crate::induce::{ball_fiber, BallPoint, SymbolicMatrixMap};

const BOUNDARY_DIRECTIONS: usize = 16;

fn check_shape(f: &SymbolicMatrixMap, r: usize, s: usize) -> Result<(), NumError> {
    if f.source_shape() != (r, s) {
        return Err(NumError::Shape(format!("f is defined on {:?}, not ({r}, {s})", f.source_shape())));
    }
    Ok(())
}

/// Margins of `f(Z)` at interior samples; all must exceed `INTERIOR_TOL`.
pub fn verify_map_into_domain(
    f: &SymbolicMatrixMap,
    r: usize,
    s: usize,
    trials: usize,
    seed: u64,
) -> Result<VerificationReport, NumError> {
    check_shape(f, r, s)?;
    let mut report = VerificationReport::new("map_into_domain", trials, seed);
    let min = sample_omega(r, s, seed, trials)
        .iter()
        .map(|d| omega_margin(&f.eval(&d.z)))
        .fold(f64::INFINITY, f64::min);
    report.min_margin_interior = Some(min);
    if min.is_nan() || min <= INTERIOR_TOL {
        report.verdict = Verdict::Fail(FailReason::MarginViolation);
    }
    Ok(report)
}

/// Along `Z_k = U diag(1 - 1/k, sigma') V^*` for `k = 10, .., 10^steps` the
/// margins of `f(Z_k)` must stay positive, decrease, and end below
/// `BOUNDARY_FINAL_TOL`.
pub fn verify_boundary_behavior(
    f: &SymbolicMatrixMap,
    r: usize,
    s: usize,
    seed: u64,
    steps: u32,
) -> Result<VerificationReport, NumError> {
    check_shape(f, r, s)?;
    if steps < 2 {
        return Err(NumError::DomainError(format!("need at least 2 steps, got {steps}")));
    }
    let mut report = VerificationReport::new("boundary_behavior", BOUNDARY_DIRECTIONS, seed);
    let mut worst = vec![f64::NEG_INFINITY; steps as usize];
    let mut positive = true;
    let mut decreasing = true;
    for trial in 0..BOUNDARY_DIRECTIONS {
        let mut rng = trial_rng(seed, trial);
        let rest: Vec<f64> = (1..r.min(s)).map(|_| 0.9 * rng.random::<f64>()).collect();
        let u_seed: u64 = rng.random();
        let mut prev = f64::INFINITY;
        for (step, k) in (1..=steps).map(|e| 10f64.powi(e as i32)).enumerate() {
            let mut sigma = vec![1.0 - 1.0 / k];
            sigma.extend(&rest);
            // same unitaries for every k of this direction
            let z = with_singular_values(&mut trial_rng(u_seed, 0), r, s, &sigma);
            let m = omega_margin(&f.eval(&z));
            positive &= m > 0.0;
            decreasing &= m <= prev + 1e-12;
            prev = m;
            worst[step] = worst[step].max(m);
        }
    }
    let last = *worst.last().unwrap();
    report.verdict = if !positive {
        Verdict::Fail(FailReason::MarginViolation)
    } else if !(last < BOUNDARY_FINAL_TOL) || !decreasing {
        Verdict::Fail(FailReason::NotProper)
    } else {
        Verdict::Pass
    };
    report.boundary_margins = worst;
    Ok(report)
}

fn row(v: Vec<Complex64>) -> DMatrix<Complex64> {
    DMatrix::from_row_slice(1, v.len(), &v)
}

/// Relative residual of `g1(X) f(Z) = g2(X)` over interior `X = [A, B]` and
/// interior `Z` on the fiber `A Z = B`.
pub fn verify_fiber_preservation(
    f: &SymbolicMatrixMap,
    g: &MonomialBallMap,
    trials: usize,
    seed: u64,
) -> Result<VerificationReport, NumError> {
    let sig = g.signature();
    let (r, s) = (sig.r, sig.s);
    check_shape(f, r, s)?;
    if (f.rows(), f.cols()) != (sig.rp, sig.sp) {
        return Err(NumError::Shape(format!(
            "f is {}x{}, g needs {}x{}",
            f.rows(),
            f.cols(),
            sig.rp,
            sig.sp
        )));
    }
    let (g1, g2) = (g.positive_polys(), g.negative_polys());
    let eval = |polys: &[crate::poly::Polynomial<crate::exactnum::SurdSum>], x: &[Complex64]| {
        row(polys.iter().map(|p| p.eval_complex(x).expect("arity r+s")).collect())
    };
    let mut report = VerificationReport::new("fiber_preservation", trials, seed);
    let mut max_residual = 0.0f64;
    for trial in 0..trials {
        let mut rng = trial_rng(seed, trial);
        let mut attempts = 0;
        let (x, z) = loop {
            attempts += 1;
            if attempts > MAX_FIBER_REJECTIONS {
                return Err(NumError::SamplingExhausted { attempts: MAX_FIBER_REJECTIONS });
            }
            let a = gaussian(&mut rng, 1, r);
            let b = gaussian(&mut rng, 1, s);
            let rho = 0.95 * rng.random::<f64>();
            let b = &b * Complex64::new(rho * a.norm() / b.norm(), 0.0);
            let x = BallPoint::new(a.iter().copied().collect(), b.iter().copied().collect());
            let coords = x.coords();
            if eval(&g1, &coords).iter().chain(eval(&g2, &coords).iter()).all(|c| c.norm() == 0.0) {
                continue;
            }
            let fiber = ball_fiber(&x).map_err(|e| NumError::DomainError(e.to_string()))?;
            let w = fiber.project(&gaussian(&mut rng, r, s));
            let eps = rng.random::<f64>() / w.norm().max(f64::MIN_POSITIVE);
            let z = fiber.particular() + w * Complex64::new(eps, 0.0);
            if omega_margin(&z) > INTERIOR_TOL {
                break (coords, z);
            }
        };
        let (a1, a2) = (eval(&g1, &x), eval(&g2, &x));
        let fz = f.eval(&z);
        let residual = (&a1 * &fz - &a2).norm() / (a1.norm() * fz.norm() + a2.norm());
        max_residual = max_residual.max(residual);
    }
    report.fiber_residual_max = Some(max_residual);
    if !(max_residual < FIBER_TOL) {
        report.verdict = Verdict::Fail(FailReason::FiberResidual);
    }
    Ok(report)
}

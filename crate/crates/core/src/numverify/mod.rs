//! Floating-point evidence: domain margins, samplers, boundary sequences,
//! fiber preservation and the Shilov-boundary obstruction.

mod checks;
mod sample;
mod shilov;

use nalgebra::DMatrix;
use num_complex::Complex64;
use thiserror::Error;

pub use checks::{verify_boundary_behavior, verify_fiber_preservation, verify_map_into_domain};
pub use sample::{haar_unitary, sample_omega, sample_shilov, trial_rng, DomainSample};
pub use shilov::{shilov_obstruction_demo, ShilovReport, ShilovWitness};

pub const INTERIOR_TOL: f64 = 1e-9;
pub const FIBER_TOL: f64 = 1e-10;
pub const BOUNDARY_FINAL_TOL: f64 = 1e-2;
pub const MAX_FIBER_REJECTIONS: usize = 10_000;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum NumError {
    #[error("domain error: {0}")]
    DomainError(String),
    #[error("no interior point of the fiber after {attempts} attempts")]
    SamplingExhausted { attempts: usize },
    #[error("shape mismatch: {0}")]
    Shape(String),
}

/// Smallest eigenvalue of the Hermitian part of `I - Z Z^*`.
pub fn omega_margin(z: &DMatrix<Complex64>) -> f64 {
    let r = z.nrows();
    let m = DMatrix::<Complex64>::identity(r, r) - z * z.adjoint();
    let h = (&m + m.adjoint()) * Complex64::new(0.5, 0.0);
    h.symmetric_eigenvalues().iter().copied().fold(f64::INFINITY, f64::min)
}

/// `(|x_1|^2 + .. + |x_r|^2 - |x_{r+1}|^2 - ..) / |x|^2`.
pub fn ball_margin(x: &[Complex64], r: usize, s: usize) -> Result<f64, NumError> {
    if x.len() != r + s {
        return Err(NumError::Shape(format!("point has {} coordinates, expected {}", x.len(), r + s)));
    }
    let total: f64 = x.iter().map(|c| c.norm_sqr()).sum();
    if total == 0.0 {
        return Err(NumError::DomainError("zero vector".into()));
    }
    let head: f64 = x[..r].iter().map(|c| c.norm_sqr()).sum();
    Ok((2.0 * head - total) / total)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FailReason {
    /// The boundary sequence does not approach the target boundary.
    NotProper,
    MarginViolation,
    FiberResidual,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Pass,
    Fail(FailReason),
}

impl Verdict {
    pub fn is_pass(self) -> bool {
        self == Verdict::Pass
    }

    pub fn name(self) -> String {
        match self {
            Verdict::Pass => "Pass".into(),
            Verdict::Fail(reason) => format!("Fail({reason:?})"),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct VerificationReport {
    pub check: &'static str,
    pub trials: usize,
    pub seed: u64,
    pub min_margin_interior: Option<f64>,
    /// Largest margin over the sampled directions at `k = 10, 100, ...`.
    pub boundary_margins: Vec<f64>,
    pub fiber_residual_max: Option<f64>,
    pub verdict: Verdict,
}

impl VerificationReport {
    pub(crate) fn new(check: &'static str, trials: usize, seed: u64) -> Self {
        VerificationReport {
            check,
            trials,
            seed,
            min_margin_interior: None,
            boundary_margins: Vec::new(),
            fiber_residual_max: None,
            verdict: Verdict::Pass,
        }
    }

    pub fn to_json_value(&self) -> serde_json::Value {
        serde_json::json!({
            "check": self.check,
            "trials": self.trials,
            "seed": self.seed,
            "min_margin_interior": self.min_margin_interior,
            "boundary_margins": self.boundary_margins,
            "fiber_residual_max": self.fiber_residual_max,
            "verdict": self.verdict.name(),
        })
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("{} (trials {}, seed {}): {}", self.check, self.trials, self.seed, self.verdict.name());
        if let Some(m) = self.min_margin_interior {
            out += &format!("\n  min interior margin: {m:.3e}");
        }
        if !self.boundary_margins.is_empty() {
            let ms: Vec<String> = self.boundary_margins.iter().map(|m| format!("{m:.3e}")).collect();
            out += &format!("\n  boundary margins: {}", ms.join(", "));
        }
        if let Some(r) = self.fiber_residual_max {
            out += &format!("\n  max fiber residual: {r:.3e}");
        }
        out
    }
}

//! Induced maps between type-I domains: fibers, the linear system
//! `g1([X, XZ]) f(Z) = g2([X, XZ])` and its exact polynomial solution.

mod fiber;
mod matrix_map;
mod solve;
mod system;

use thiserror::Error;

use crate::ballmap::BallMapError;
use crate::exactnum::ExactError;
use crate::poly::PolyError;

pub use fiber::{ball_fiber, domain_fiber, fiber_equations, BallFiber, BallPoint};
pub use matrix_map::SymbolicMatrixMap;
pub use solve::{solve_induced, SolveOutcome, SolveStatus};
pub use system::{
    build_system, independence_check, independence_check_components, residual_check, Independence,
    InducedSystem,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum InduceError {
    #[error("degenerate fiber: the first block of the ball point is zero")]
    DegenerateFiber,
    #[error("entry ({row},{col}) is not a polynomial: pivot division leaves a remainder")]
    NonPolynomialSolution { row: usize, col: usize },
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("cannot specialize: {0}")]
    Specialize(String),
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Map(#[from] BallMapError),
    #[error(transparent)]
    Exact(#[from] ExactError),
    #[error("json: {0}")]
    Json(String),
}

use nalgebra::DMatrix;
use num_complex::Complex64;

use super::InduceError;
use crate::exactnum::{Field, SurdSum};
use crate::poly::Polynomial;

/// Homogeneous point `[A, B]` of `D_{r,s}` with `A` of length `r`.
#[derive(Debug, Clone, PartialEq)]
pub struct BallPoint {
    pub a: Vec<Complex64>,
    pub b: Vec<Complex64>,
}

impl BallPoint {
    pub fn new(a: Vec<Complex64>, b: Vec<Complex64>) -> Self {
        BallPoint { a, b }
    }

    pub fn from_reals(a: &[f64], b: &[f64]) -> Self {
        let c = |v: &[f64]| v.iter().map(|&x| Complex64::new(x, 0.0)).collect();
        BallPoint { a: c(a), b: c(b) }
    }

    /// `|A|^2 - |B|^2`; positive inside, zero on the boundary.
    pub fn form_value(&self) -> f64 {
        let n = |v: &[Complex64]| v.iter().map(|z| z.norm_sqr()).sum::<f64>();
        n(&self.a) - n(&self.b)
    }

    /// Concatenation `[A, B]`.
    pub fn coords(&self) -> Vec<Complex64> {
        self.a.iter().chain(&self.b).copied().collect()
    }
}

/// The affine constraint `{Z : A Z = B}`.
#[derive(Debug, Clone, PartialEq)]
pub struct BallFiber {
    a: DMatrix<Complex64>,
    b: DMatrix<Complex64>,
    a_norm_sq: f64,
}

pub fn ball_fiber(x: &BallPoint) -> Result<BallFiber, InduceError> {
    let a_norm_sq: f64 = x.a.iter().map(|z| z.norm_sqr()).sum();
    if a_norm_sq == 0.0 {
        return Err(InduceError::DegenerateFiber);
    }
    Ok(BallFiber {
        a: DMatrix::from_row_slice(1, x.a.len(), &x.a),
        b: DMatrix::from_row_slice(1, x.b.len(), &x.b),
        a_norm_sq,
    })
}

impl BallFiber {
    pub fn r(&self) -> usize {
        self.a.ncols()
    }

    pub fn s(&self) -> usize {
        self.b.ncols()
    }

    /// `|A Z - B|`.
    pub fn residual(&self, z: &DMatrix<Complex64>) -> f64 {
        (&self.a * z - &self.b).norm()
    }

    /// Least-norm solution `A^* B / |A|^2`.
    pub fn particular(&self) -> DMatrix<Complex64> {
        self.a.adjoint() * &self.b / Complex64::new(self.a_norm_sq, 0.0)
    }

    /// Orthogonal projection of a direction onto `{W : A W = 0}`.
    pub fn project(&self, w: &DMatrix<Complex64>) -> DMatrix<Complex64> {
        let correction = self.a.adjoint() * (&self.a * w) / Complex64::new(self.a_norm_sq, 0.0);
        w - correction
    }
}

/// `s` linear equations `sum_i a_i z_{ij} - b_j` in the `rs` entries of `Z`.
pub fn fiber_equations(a: &[SurdSum], b: &[SurdSum]) -> Result<Vec<Polynomial<SurdSum>>, InduceError> {
    if a.iter().all(|x| x.is_zero()) {
        return Err(InduceError::DegenerateFiber);
    }
    let (r, s) = (a.len(), b.len());
    let n = r * s;
    Ok((0..s)
        .map(|j| {
            let mut p = Polynomial::constant(n, b[j].negate());
            for (i, ai) in a.iter().enumerate() {
                p = &p + &Polynomial::var(n, i * s + j).scale(ai);
            }
            p
        })
        .collect())
}

/// `[x_1..x_r, (xZ)_1..(xZ)_s]` in variables `x_1..x_r, z_1..z_{rs}`.
pub fn domain_fiber(r: usize, s: usize) -> Vec<Polynomial<SurdSum>> {
    let n = r + r * s;
    let mut out: Vec<Polynomial<SurdSum>> = (0..r).map(|i| Polynomial::var(n, i)).collect();
    for j in 0..s {
        let mut p = Polynomial::zero(n);
        for i in 0..r {
            p = &p + &(&Polynomial::var(n, i) * &Polynomial::var(n, r + i * s + j));
        }
        out.push(p);
    }
    out
}

use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use super::{omega_margin, NumError};

#[derive(Debug, Clone, PartialEq)]
pub struct DomainSample {
    pub z: DMatrix<Complex64>,
    pub margin: f64,
}

/// Independent stream for one trial, so results do not depend on scheduling.
pub fn trial_rng(seed: u64, trial: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial as u64);
    rng
}

pub(crate) fn gaussian(rng: &mut impl Rng, rows: usize, cols: usize) -> DMatrix<Complex64> {
    DMatrix::from_fn(rows, cols, |_, _| {
        Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal))
    })
}

/// QR of a complex Gaussian matrix with the phases of `R` divided out.
pub fn haar_unitary(rng: &mut impl Rng, n: usize) -> DMatrix<Complex64> {
    let qr = gaussian(rng, n, n).qr();
    let (mut q, r) = (qr.q(), qr.r());
    for j in 0..n {
        let d = r[(j, j)];
        let phase = if d.norm() > 0.0 { d / d.norm() } else { Complex64::new(1.0, 0.0) };
        for i in 0..n {
            q[(i, j)] *= phase;
        }
    }
    q
}

/// `U diag(sigma) V^*` with the given singular values.
pub(crate) fn with_singular_values(
    rng: &mut impl Rng,
    r: usize,
    s: usize,
    sigma: &[f64],
) -> DMatrix<Complex64> {
    let u = haar_unitary(rng, r);
    let v = haar_unitary(rng, s);
    let mut d = DMatrix::<Complex64>::zeros(r, s);
    for (i, &x) in sigma.iter().enumerate() {
        d[(i, i)] = Complex64::new(x, 0.0);
    }
    u * d * v.adjoint()
}

/// Interior points of `Omega_{r,s}`; singular values uniform in `[0, 1)`.
pub fn sample_omega(r: usize, s: usize, seed: u64, count: usize) -> Vec<DomainSample> {
    (0..count)
        .map(|trial| {
            let mut rng = trial_rng(seed, trial);
            let sigma: Vec<f64> = (0..r.min(s)).map(|_| rng.random::<f64>()).collect();
            let z = with_singular_values(&mut rng, r, s, &sigma);
            let margin = omega_margin(&z);
            DomainSample { z, margin }
        })
        .collect()
}

/// Unitary `r x r` matrices, the Shilov boundary of `Omega_{r,r}`.
pub fn sample_shilov(r: usize, s: usize, seed: u64, count: usize) -> Result<Vec<DMatrix<Complex64>>, NumError> {
    if r != s {
        return Err(NumError::DomainError(format!("Shilov boundary sampler needs r = s, got {r} x {s}")));
    }
    Ok((0..count).map(|trial| haar_unitary(&mut trial_rng(seed, trial), r)).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn samplers() {
        let samples = sample_omega(2, 3, 7, 200);
        assert!(samples.iter().all(|d| d.margin > 0.0));
        assert_eq!(samples, sample_omega(2, 3, 7, 200));
        assert_ne!(samples[0], sample_omega(2, 3, 8, 1)[0]);
        for u in sample_shilov(3, 3, 1, 50).unwrap() {
            assert!(omega_margin(&u).abs() < 1e-12);
        }
        assert!(matches!(sample_shilov(2, 3, 1, 1), Err(NumError::DomainError(_))));
    }
}

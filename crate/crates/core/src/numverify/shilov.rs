use std::f64::consts::FRAC_PI_2;

use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::Rng;
use rand_distr::StandardNormal;

use super::sample::{haar_unitary, trial_rng};
use super::NumError;

const RADII: [f64; 4] = [1.0, 10.0, 100.0, 1000.0];
const PHASES: usize = 4;
/// Relative to `|V|^2 = 1 + |v|^2`, which bounds the roundoff of the form.
const NEGATIVE_TOL: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq)]
pub struct ShilovWitness {
    pub trial: usize,
    pub z: DMatrix<Complex64>,
    pub v: Complex64,
    pub value: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ShilovReport {
    pub free_row: Vec<Complex64>,
    pub samples: usize,
    pub seed: u64,
    pub min_value: f64,
    pub witness: Option<ShilovWitness>,
}

impl ShilovReport {
    pub fn obstruction_found(&self) -> bool {
        self.witness.is_some()
    }

    pub fn to_json_value(&self) -> serde_json::Value {
        let c = |z: &Complex64| serde_json::json!([z.re, z.im]);
        serde_json::json!({
            "free_row": self.free_row.iter().map(c).collect::<Vec<_>>(),
            "samples": self.samples,
            "seed": self.seed,
            "min_value": self.min_value,
            "obstruction_found": self.obstruction_found(),
            "witness": self.witness.as_ref().map(|w| serde_json::json!({
                "trial": w.trial,
                "v": c(&w.v),
                "value": w.value,
                "z": w.z.row_iter().map(|row| row.iter().map(c).collect::<Vec<_>>()).collect::<Vec<_>>(),
            })),
        })
    }

    pub fn to_text(&self) -> String {
        let row: Vec<String> = self.free_row.iter().map(|z| format!("{z}")).collect();
        let mut out = format!(
            "free row ({}), {} Shilov samples, seed {}: min V(I - f f^*)V^* = {:.3e}",
            row.join(", "),
            self.samples,
            self.seed,
            self.min_value
        );
        match &self.witness {
            Some(w) => out += &format!("\n  obstruction at trial {} with v = {}: value {:.3e}", w.trial, w.v, w.value),
            None => out += "\n  no obstruction",
        }
        out
    }
}

/// Tests the block form `f(Z) = [[Z, 0], [k, h]]` with constant free row
/// `(k, h)`: at unitary `Z` and `V = (v a, 1)` the form `V (I - f f^*) V^*`
/// must stay nonnegative for every `v`.
pub fn shilov_obstruction_demo(free_row: &[Complex64], samples: usize, seed: u64) -> Result<ShilovReport, NumError> {
    if free_row.len() < 2 {
        return Err(NumError::Shape("free row needs r + 1 >= 2 entries".into()));
    }
    let r = free_row.len() - 1;
    let n = r + 1;
    let mut min_value = f64::INFINITY;
    let mut witness = None;
    for trial in 0..samples {
        let mut rng = trial_rng(seed, trial);
        let z = haar_unitary(&mut rng, r);
        let mut a: Vec<Complex64> = (0..r)
            .map(|_| Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal)))
            .collect();
        let norm = a.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt();
        a.iter_mut().for_each(|c| *c /= norm);
        let mut f = DMatrix::<Complex64>::zeros(n, n);
        f.view_mut((0, 0), (r, r)).copy_from(&z);
        for (j, &value) in free_row.iter().enumerate() {
            f[(r, j)] = value;
        }
        let m = DMatrix::<Complex64>::identity(n, n) - &f * f.adjoint();
        for rho in RADII {
            for p in 0..PHASES {
                let v = Complex64::from_polar(rho, p as f64 * FRAC_PI_2);
                let mut vv: Vec<Complex64> = a.iter().map(|c| c * v).collect();
                vv.push(Complex64::new(1.0, 0.0));
                let row = DMatrix::from_row_slice(1, n, &vv);
                let value = (&row * &m * row.adjoint())[(0, 0)].re;
                min_value = min_value.min(value);
                if value < -NEGATIVE_TOL * (1.0 + rho * rho) && witness.is_none() {
                    witness = Some(ShilovWitness {
                        trial,
                        z: z.clone(),
                        v,
                        value,
                    });
                }
            }
        }
    }
    Ok(ShilovReport {
        free_row: free_row.to_vec(),
        samples,
        seed,
        min_value,
        witness,
    })
}

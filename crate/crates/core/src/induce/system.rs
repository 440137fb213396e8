use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{domain_fiber, InduceError, SymbolicMatrixMap};
use crate::ballmap::MonomialBallMap;
use crate::exactnum::linalg::rank;
use crate::exactnum::{rat, Field, SurdSum};
use crate::poly::{ExponentVector, Polynomial};

/// Coefficients of `g1([X, XZ]) f_j = g2_j([X, XZ])` collected by x-monomial.
///
/// The matrix is shared by all columns `j` of `f`; only the right-hand side
/// changes with `j`. Entries are polynomials in `z_1..z_{rs}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InducedSystem {
    pub r: usize,
    pub s: usize,
    pub x_monomials: Vec<ExponentVector>,
    /// `matrix[row][k]`: coefficient of unknown `f_{k j}`.
    pub matrix: Vec<Vec<Polynomial<SurdSum>>>,
    /// `rhs[j][row]`.
    pub rhs: Vec<Vec<Polynomial<SurdSum>>>,
}

impl InducedSystem {
    pub fn unknown_rows(&self) -> usize {
        self.matrix.first().map_or(0, Vec::len)
    }

    /// Slots whose matrix column vanishes identically.
    pub fn zero_columns(&self) -> Vec<usize> {
        (0..self.unknown_rows())
            .filter(|&k| self.matrix.iter().all(|row| row[k].is_zero()))
            .collect()
    }
}

fn compose(polys: &[Polynomial<SurdSum>], r: usize, s: usize) -> Vec<Polynomial<SurdSum>> {
    let fiber = domain_fiber(r, s);
    polys.iter().map(|p| p.substitute(&fiber).expect("arity r+s")).collect()
}

fn collect(
    composed: &[Polynomial<SurdSum>],
    r: usize,
    s: usize,
    x_monomials: &[ExponentVector],
) -> Vec<Vec<Polynomial<SurdSum>>> {
    let splits: Vec<_> = composed.iter().map(|p| p.split_prefix(r)).collect();
    x_monomials
        .iter()
        .map(|xm| {
            splits
                .iter()
                .map(|sp| sp.get(xm).cloned().unwrap_or_else(|| Polynomial::zero(r * s)))
                .collect()
        })
        .collect()
}

pub fn build_system(g: &MonomialBallMap) -> InducedSystem {
    let sig = g.signature();
    let (r, s) = (sig.r, sig.s);
    let x_monomials = ExponentVector::all_of_degree(r, g.degree());
    let g1 = compose(&g.positive_polys(), r, s);
    let g2 = compose(&g.negative_polys(), r, s);
    let matrix = collect(&g1, r, s, &x_monomials);
    let by_row = collect(&g2, r, s, &x_monomials);
    let rhs = (0..sig.sp)
        .map(|j| by_row.iter().map(|row| row[j].clone()).collect())
        .collect();
    InducedSystem {
        r,
        s,
        x_monomials,
        matrix,
        rhs,
    }
}

/// `g1([X, XZ]) f(Z) - g2([X, XZ])` as polynomials in `x_1..x_r, z_1..z_{rs}`.
pub fn residual_check(g: &MonomialBallMap, f: &SymbolicMatrixMap) -> Result<Vec<Polynomial<SurdSum>>, InduceError> {
    let sig = g.signature();
    if f.source_shape() != (sig.r, sig.s) || f.rows() != sig.rp || f.cols() != sig.sp {
        return Err(InduceError::Shape(format!(
            "f is {}x{} on {:?}, map needs {}x{} on ({}, {})",
            f.rows(),
            f.cols(),
            f.source_shape(),
            sig.rp,
            sig.sp,
            sig.r,
            sig.s
        )));
    }
    let (r, s) = (sig.r, sig.s);
    let n = r + r * s;
    let g1 = compose(&g.positive_polys(), r, s);
    let g2 = compose(&g.negative_polys(), r, s);
    Ok((0..sig.sp)
        .map(|j| {
            let mut acc = -&g2[j];
            for (k, gk) in g1.iter().enumerate() {
                if !gk.is_zero() && !f.entry(k, j).is_zero() {
                    acc = &acc + &(gk * &f.entry(k, j).embed(n, r));
                }
            }
            acc
        })
        .collect())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Independence {
    /// Full rank `r'` at the recorded trial; generic by Zariski openness.
    Independent { trial: usize },
    /// Rank stayed below `r'` in every trial; `rank` is the largest seen.
    DependentEverywhere { rank: usize },
    Unknown,
}

pub fn independence_check(g: &MonomialBallMap, trials: usize, seed: u64) -> Independence {
    let sig = g.signature();
    independence_check_components(&g.positive_polys(), sig.r, sig.s, trials, seed)
}

/// Exact rank of `[g1_k([X_i, X_i Z])]_{i,k}` at random rational `Z` and
/// `r'` random rational parameter points `X_i`.
pub fn independence_check_components(
    components: &[Polynomial<SurdSum>],
    r: usize,
    s: usize,
    trials: usize,
    seed: u64,
) -> Independence {
    let rp = components.len();
    let mut best = None;
    for trial in 0..trials {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(trial as u64);
        let mut q = || SurdSum::from_rational(rat(rng.random_range(-9..=9), rng.random_range(1..=4)));
        let z: Vec<Vec<SurdSum>> = (0..r).map(|_| (0..s).map(|_| q()).collect()).collect();
        let rows: Vec<Vec<SurdSum>> = (0..rp)
            .map(|_| {
                let x: Vec<SurdSum> = (0..r).map(|_| q()).collect();
                let mut point = x.clone();
                for j in 0..s {
                    point.push((0..r).fold(SurdSum::zero(), |acc, i| acc.plus(&x[i].times(&z[i][j]))));
                }
                components.iter().map(|c| c.evaluate(&point).expect("arity r+s")).collect()
            })
            .collect();
        let k = rank(&rows);
        if k == rp {
            return Independence::Independent { trial };
        }
        best = Some(best.map_or(k, |b: usize| b.max(k)));
    }
    match best {
        Some(rank) => Independence::DependentEverywhere { rank },
        None => Independence::Unknown,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ballmap::Signature;

    fn map_a() -> MonomialBallMap {
        MonomialBallMap::parse(Signature::new(2, 2, 3, 3).unwrap(), &["z1^2", "z1*z2", "z2*z3"], &["z3^2", "z3*z4", "z1*z4"]).unwrap()
    }

    #[test]
    fn system_shape() {
        let sys = build_system(&map_a());
        assert_eq!(sys.x_monomials.len(), 3);
        let rhs: Vec<String> = sys.rhs[0].iter().map(|p| p.to_text_with("z")).collect();
        assert_eq!(rhs, vec!["z1^2", "2*z1*z3", "z3^2"]);
        let id = MonomialBallMap::parse(Signature::new(2, 2, 3, 3).unwrap(), &["z1", "z2", "0"], &["z3", "z4", "0"]).unwrap();
        let sys = build_system(&id);
        let m: Vec<Vec<String>> = sys.matrix.iter().map(|r| r.iter().map(|p| p.to_string()).collect()).collect();
        assert_eq!(m, vec![vec!["1", "0", "0"], vec!["0", "1", "0"]]);
        assert_eq!(sys.zero_columns(), vec![2]);
    }

    #[test]
    fn residuals() {
        let f = SymbolicMatrixMap::parse(2, 2, &[&["z1^2", "z1*z2", "z2"], &["z1*z3", "z2*z3", "z4"], &["z3", "z4", "0"]]).unwrap();
        assert!(residual_check(&map_a(), &f).unwrap().iter().all(Polynomial::is_zero));
        let mut bad = f.clone();
        bad.set_entry(0, 0, Polynomial::parse_with("z1", 4, "z").unwrap());
        assert!(!residual_check(&map_a(), &bad).unwrap().iter().all(Polynomial::is_zero));
    }

    #[test]
    fn independence() {
        let sig = Signature::new(2, 2, 3, 3).unwrap();
        let b = MonomialBallMap::parse(sig, &["z1^2", "sqrt(2)*z1*z2", "z2^2"], &["z3^2", "sqrt(2)*z3*z4", "z4^2"]).unwrap();
        assert!(matches!(independence_check(&b, 5, 1), Independence::Independent { .. }));
        let id = MonomialBallMap::parse(sig, &["z1", "z2", "0"], &["z3", "z4", "0"]).unwrap();
        assert_eq!(independence_check(&id, 5, 1), Independence::DependentEverywhere { rank: 2 });
        let comps: Vec<Polynomial<SurdSum>> = ["z1^2", "z1*z2", "z1^2 + z1*z2"]
            .iter()
            .map(|t| Polynomial::parse_with(t, 4, "z").unwrap())
            .collect();
        assert_eq!(independence_check_components(&comps, 2, 2, 5, 1), Independence::DependentEverywhere { rank: 2 });
        assert_eq!(independence_check(&b, 0, 1), Independence::Unknown);
    }
}

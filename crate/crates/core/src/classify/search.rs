//! Exhaustive search over monomial slot assignments.
//!
//! `L` divides `P = P+ - P-` exactly when both halves agree after the
//! substitution `x1 <- x(r+1) + ... + x(r+s) - x2 - ... - xr`, so positive and
//! negative halves are joined on their substituted images.

use std::collections::{HashMap, HashSet};

use num_traits::Signed;

use super::ClassifyError;
use crate::ballmap::{canonical_form, properness_certificate, MapComponent, MonomialBallMap, Signature};
use crate::exactnum::{int, Rational};
use crate::poly::{ExponentVector, Polynomial};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchLimits {
    pub max_source_arity: usize,
    pub max_degree: u32,
    pub max_grid: usize,
    /// Bound on slot assignments per side.
    pub max_side_assignments: usize,
    pub positivity_trials: usize,
    pub seed: u64,
}

impl Default for SearchLimits {
    fn default() -> Self {
        SearchLimits {
            max_source_arity: 4,
            max_degree: 3,
            max_grid: 8,
            max_side_assignments: 2_000_000,
            positivity_trials: 2000,
            seed: 0,
        }
    }
}

/// A side: distinct monomials (indices into the monomial list) with grid values.
type Side = Vec<(usize, usize)>;

fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    (0..k).fold(1u128, |acc, i| acc * (n - i) as u128 / (i + 1) as u128)
}

fn side_count(monomials: usize, grid: usize, slots: usize) -> u128 {
    (0..=slots.min(monomials))
        .map(|j| binomial(monomials, j) * (grid as u128).pow(j as u32))
        .sum()
}

fn enumerate_sides(monomials: usize, grid: usize, slots: usize) -> Vec<Side> {
    fn rec(start: usize, monomials: usize, grid: usize, left: usize, cur: &mut Side, out: &mut Vec<Side>) {
        out.push(cur.clone());
        if left == 0 {
            return;
        }
        for m in start..monomials {
            for g in 0..grid {
                cur.push((m, g));
                rec(m + 1, monomials, grid, left - 1, cur, out);
                cur.pop();
            }
        }
    }
    let mut out = Vec::new();
    rec(0, monomials, grid, slots, &mut Vec::new(), &mut out);
    out
}

/// Canonical forms of every proper monomial map of exactly this degree
/// (no common factor) with coefficient-squares from `grid` and no monomial
/// repeated across slots.
pub fn brute_force_search(
    sig: Signature,
    degree: u32,
    grid: &[Rational],
    limits: &SearchLimits,
) -> Result<Vec<MonomialBallMap>, ClassifyError> {
    let n = sig.source_arity();
    if n > limits.max_source_arity || degree == 0 || degree > limits.max_degree {
        return Err(ClassifyError::ScaleError(format!(
            "need r+s <= {} and 1 <= degree <= {}, got r+s = {n}, degree {degree}",
            limits.max_source_arity, limits.max_degree
        )));
    }
    if grid.is_empty() || grid.len() > limits.max_grid {
        return Err(ClassifyError::ScaleError(format!(
            "grid must have 1..={} values, got {}",
            limits.max_grid,
            grid.len()
        )));
    }
    if grid.iter().any(|q| !q.is_positive()) {
        return Err(ClassifyError::ScaleError("grid values must be positive".into()));
    }
    let monomials = ExponentVector::all_of_degree(n, degree);
    for slots in [sig.rp, sig.sp] {
        let count = side_count(monomials.len(), grid.len(), slots);
        if count > limits.max_side_assignments as u128 {
            return Err(ClassifyError::ScaleError(format!(
                "{count} assignments per side exceed the limit {}",
                limits.max_side_assignments
            )));
        }
    }

    // substituted image of each monomial
    let mut values: Vec<Polynomial<Rational>> = (0..n).map(|i| Polynomial::var(n, i)).collect();
    values[0] = &values[0] - &sig.form().polynomial();
    let images: Vec<Polynomial<Rational>> = monomials
        .iter()
        .map(|e| Polynomial::monomial(e.clone(), int(1)).substitute(&values).unwrap())
        .collect();
    let image_of = |side: &Side| -> Polynomial<Rational> {
        side.iter()
            .fold(Polynomial::zero(n), |acc, &(m, g)| &acc + &images[m].scale(&grid[g]))
    };

    let negatives = enumerate_sides(monomials.len(), grid.len(), sig.sp);
    let mut by_image: HashMap<Polynomial<Rational>, Vec<usize>> = HashMap::new();
    for (i, side) in negatives.iter().enumerate() {
        by_image.entry(image_of(side)).or_default().push(i);
    }

    let to_slots = |side: &Side, len: usize| -> Vec<Option<MapComponent>> {
        let mut slots: Vec<Option<MapComponent>> = side
            .iter()
            .map(|&(m, g)| Some(MapComponent::with_coeff_square(&grid[g], monomials[m].clone()).unwrap()))
            .collect();
        slots.resize(len, None);
        slots
    };

    let mut seen = HashSet::new();
    let mut found = Vec::new();
    for pos in enumerate_sides(monomials.len(), grid.len(), sig.rp) {
        if pos.is_empty() {
            continue;
        }
        let Some(matches) = by_image.get(&image_of(&pos)) else {
            continue;
        };
        for &ni in matches {
            let neg = &negatives[ni];
            if neg.iter().any(|(m, _)| pos.iter().any(|(p, _)| p == m)) {
                continue;
            }
            let common = pos
                .iter()
                .chain(neg)
                .map(|&(m, _)| monomials[m].clone())
                .reduce(|a, b| a.gcd(&b))
                .unwrap();
            if common.degree() > 0 {
                continue;
            }
            let g = MonomialBallMap::new(sig, to_slots(&pos, sig.rp), to_slots(neg, sig.sp))?;
            let proper = properness_certificate(&g, limits.positivity_trials, limits.seed)
                .is_ok_and(|c| c.is_proper());
            if !proper {
                continue;
            }
            let canon = canonical_form(&g);
            if seen.insert(canon.clone()) {
                found.push(canon);
            }
        }
    }
    found.sort_by_key(|g| g.to_string());
    Ok(found)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts() {
        assert_eq!(side_count(10, 2, 3), 1 + 20 + 180 + 960);
        assert_eq!(enumerate_sides(10, 2, 3).len(), 1161);
    }

    #[test]
    fn degree_one_is_identity_shape() {
        let sig = Signature::new(2, 2, 3, 3).unwrap();
        let found = brute_force_search(sig, 1, &[int(1)], &SearchLimits::default()).unwrap();
        assert_eq!(found.len(), 1);
        assert_eq!(found[0].to_string(), "[z1, z2, 0 | z3, z4, 0]");
    }

    #[test]
    fn scale_errors() {
        let sig = Signature::new(3, 2, 3, 3).unwrap();
        assert!(matches!(
            brute_force_search(sig, 2, &[int(1)], &SearchLimits::default()),
            Err(ClassifyError::ScaleError(_))
        ));
        let sig = Signature::new(2, 2, 3, 3).unwrap();
        assert!(brute_force_search(sig, 4, &[int(1)], &SearchLimits::default()).is_err());
        let grid: Vec<Rational> = (1..=9).map(int).collect();
        assert!(brute_force_search(sig, 2, &grid, &SearchLimits::default()).is_err());
    }
}

//! All linear `Q_P` for `(2,2) -> (3,3)` with `n(L Q_P) <= 6` and `Q_P > 0`
//! on the open region.
//!
//! Each coefficient of `P = L Q_P` is a linear form in `a = (a_1..a_4)`.
//! For every support `S` of `a` and every set `C` of those forms forced to
//! vanish, the solution space is computed exactly; one-dimensional spaces
//! give candidate rays, higher-dimensional ones are checked generically.

use num_traits::Signed;

use crate::ballmap::{linear_positivity, Positivity};
use crate::exactnum::linalg::nullspace;
use crate::exactnum::{int, Field, Rational};
use crate::poly::{ExponentVector, Polynomial};

const R: usize = 2;
const S: usize = 2;
const N: usize = R + S;
const MAX_TERMS: usize = 6;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearQpEnumeration {
    pub solutions: Vec<Polynomial<Rational>>,
    /// Positive-dimensional solution spaces whose generic member still has
    /// at most six monomials; reported rather than enumerated.
    pub open_families: Vec<String>,
    pub cases_examined: usize,
}

/// Coefficient forms of `L * (a . x)` indexed by degree-2 monomials.
fn coefficient_forms() -> Vec<Vec<Rational>> {
    let l: Vec<Rational> = (0..N).map(|i| if i < R { int(1) } else { int(-1) }).collect();
    ExponentVector::all_of_degree(N, 2)
        .into_iter()
        .map(|e| {
            let vars: Vec<usize> = (0..N).filter(|&i| e.get(i) > 0).collect();
            let mut form = vec![int(0); N];
            if vars.len() == 1 {
                form[vars[0]] = l[vars[0]].clone();
            } else {
                let (i, j) = (vars[0], vars[1]);
                form[j] += &l[i];
                form[i] += &l[j];
            }
            form
        })
        .collect()
}

fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn as_polynomial(v: &[Rational]) -> Polynomial<Rational> {
    Polynomial::from_terms(N, v.iter().enumerate().map(|(i, c)| (ExponentVector::unit(N, i), c.clone())))
}

pub fn enumerate_linear_qp_detailed() -> LinearQpEnumeration {
    let forms = coefficient_forms();
    let mut solutions: Vec<Vec<Rational>> = Vec::new();
    let mut open_families = Vec::new();
    let mut cases = 0;
    for support in 1u32..(1 << N) {
        let in_support = |i: usize| support >> i & 1 == 1;
        // forms that can be nonzero on this support
        let live: Vec<usize> = (0..forms.len())
            .filter(|&k| (0..N).any(|i| in_support(i) && !forms[k][i].is_zero()))
            .collect();
        for cancel in 0u32..(1 << live.len()) {
            cases += 1;
            let mut rows: Vec<Vec<Rational>> = (0..N)
                .filter(|&i| !in_support(i))
                .map(|i| {
                    let mut e = vec![int(0); N];
                    e[i] = int(1);
                    e
                })
                .collect();
            for (bit, &k) in live.iter().enumerate() {
                if cancel >> bit & 1 == 1 {
                    rows.push(forms[k].clone());
                }
            }
            let basis = nullspace(&rows, N);
            match basis.len() {
                0 => {}
                1 => {
                    let v = &basis[0];
                    if (0..N).any(|i| in_support(i) == v[i].is_zero()) {
                        continue;
                    }
                    let terms = forms.iter().filter(|f| !dot(f, v).is_zero()).count();
                    if terms > MAX_TERMS {
                        continue;
                    }
                    for sign in [int(1), int(-1)] {
                        let w: Vec<Rational> = v.iter().map(|x| x * &sign).collect();
                        if linear_positivity(&as_polynomial(&w), R, S) == Positivity::ExactLinear {
                            let lead = w.iter().find(|x| !x.is_zero()).unwrap().abs();
                            let w: Vec<Rational> = w.iter().map(|x| x / &lead).collect();
                            if !solutions.contains(&w) {
                                solutions.push(w);
                            }
                        }
                    }
                }
                _ => {
                    let generic = forms
                        .iter()
                        .filter(|f| basis.iter().any(|b| !dot(f, b).is_zero()))
                        .count();
                    if generic <= MAX_TERMS {
                        open_families.push(format!(
                            "support {support:04b}, {} cancelled forms, dimension {}",
                            cancel.count_ones(),
                            basis.len()
                        ));
                    }
                }
            }
        }
    }
    let mut polys: Vec<Polynomial<Rational>> = solutions.iter().map(|v| as_polynomial(v)).collect();
    polys.sort_by_key(|p| {
        let exps: Vec<ExponentVector> = p.terms().map(|t| t.0.clone()).collect();
        (p.count_monomials(), std::cmp::Reverse(exps))
    });
    LinearQpEnumeration {
        solutions: polys,
        open_families,
        cases_examined: cases,
    }
}

/// The linear `Q_P` of Lemma-type case analysis, up to positive scaling.
pub fn enumerate_linear_qp() -> Vec<Polynomial<Rational>> {
    enumerate_linear_qp_detailed().solutions
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn nine_solutions() {
        let e = enumerate_linear_qp_detailed();
        let texts: Vec<String> = e.solutions.iter().map(|p| p.to_string()).collect();
        assert_eq!(
            texts,
            vec![
                "x1", "x2", "x3", "x4", "x1 + x3", "x1 + x4", "x2 + x3", "x2 + x4",
                "x1 + x2 + x3 + x4"
            ]
        );
        assert!(e.open_families.is_empty());
    }

    #[test]
    fn excludes_seven_term_products() {
        let l = crate::poly::SignatureLinearForm::new(2, 2).unwrap().polynomial::<Rational>();
        let q = Polynomial::parse("x3 + x4", 4).unwrap();
        assert_eq!((&l * &q).count_monomials(), 7);
        assert!(!enumerate_linear_qp().contains(&q));
    }
}

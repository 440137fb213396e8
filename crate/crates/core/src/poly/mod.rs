//! Sparse multivariate polynomials over an exact field, with the monomial
//! counting functionals `n(A)`, `n_i(A)` and division by the signature form.
//!
//! Terms are keyed by exponent vector and ordered lexicographically with
//! `x1 > x2 > ...`; the leading term is the lex-largest one.

mod linear_form;
mod text;

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;
use thiserror::Error;

use crate::exactnum::{ExactError, Field, Rational, SurdSum};

pub use linear_form::{divide_by_signature_form, SignatureLinearForm};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("arity mismatch: expected {expected}, found {found}")]
    Arity { expected: usize, found: usize },
    #[error("domain error: {0}")]
    Domain(String),
    #[error("not divisible")]
    NotDivisible,
    #[error(transparent)]
    Exact(#[from] ExactError),
    #[error("parse error at position {position} in {input:?}: {reason}")]
    Parse {
        input: String,
        position: usize,
        reason: String,
    },
}

/// Exponents of one monomial; `Ord` is lex with the first variable heaviest.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ExponentVector(Vec<u32>);

impl ExponentVector {
    pub fn new(exponents: Vec<u32>) -> Self {
        ExponentVector(exponents)
    }

    pub fn zeros(arity: usize) -> Self {
        ExponentVector(vec![0; arity])
    }

    pub fn unit(arity: usize, var: usize) -> Self {
        let mut e = vec![0; arity];
        e[var] = 1;
        ExponentVector(e)
    }

    pub fn arity(&self) -> usize {
        self.0.len()
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn get(&self, var: usize) -> u32 {
        self.0[var]
    }

    pub fn as_slice(&self) -> &[u32] {
        &self.0
    }

    pub fn product(&self, other: &Self) -> Self {
        ExponentVector(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn divides(&self, other: &Self) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// `other / self` when `self` divides `other`.
    pub fn quotient_of(&self, other: &Self) -> Option<Self> {
        self.divides(other)
            .then(|| ExponentVector(other.0.iter().zip(&self.0).map(|(b, a)| b - a).collect()))
    }

    /// Entry-wise minimum.
    pub fn gcd(&self, other: &Self) -> Self {
        ExponentVector(self.0.iter().zip(&other.0).map(|(a, b)| *a.min(b)).collect())
    }

    /// Variable `i` of the result takes the exponent of variable `perm[i]`.
    pub fn permuted(&self, perm: &[usize]) -> Self {
        ExponentVector(perm.iter().map(|&p| self.0[p]).collect())
    }

    /// Every monomial of total degree `degree` in `arity` variables, lex-descending.
    pub fn all_of_degree(arity: usize, degree: u32) -> Vec<ExponentVector> {
        fn rec(arity: usize, left: u32, prefix: &mut Vec<u32>, out: &mut Vec<ExponentVector>) {
            if prefix.len() + 1 == arity {
                prefix.push(left);
                out.push(ExponentVector(prefix.clone()));
                prefix.pop();
                return;
            }
            for e in (0..=left).rev() {
                prefix.push(e);
                rec(arity, left - e, prefix, out);
                prefix.pop();
            }
        }
        let mut out = Vec::new();
        if arity == 0 {
            if degree == 0 {
                out.push(ExponentVector(Vec::new()));
            }
            return out;
        }
        rec(arity, degree, &mut Vec::with_capacity(arity), &mut out);
        out
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Polynomial<C> {
    arity: usize,
    terms: BTreeMap<ExponentVector, C>,
}

impl<C: Field> Polynomial<C> {
    pub fn zero(arity: usize) -> Self {
        Polynomial {
            arity,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(arity: usize, c: C) -> Self {
        Self::monomial(ExponentVector::zeros(arity), c)
    }

    pub fn one(arity: usize) -> Self {
        Self::constant(arity, C::one())
    }

    pub fn var(arity: usize, index: usize) -> Self {
        assert!(index < arity, "variable {index} out of range for arity {arity}");
        Self::monomial(ExponentVector::unit(arity, index), C::one())
    }

    pub fn monomial(exponents: ExponentVector, c: C) -> Self {
        let arity = exponents.arity();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(exponents, c);
        }
        Polynomial { arity, terms }
    }

    /// Sums duplicate exponents and drops zeros.
    pub fn from_terms(arity: usize, terms: impl IntoIterator<Item = (ExponentVector, C)>) -> Self {
        let mut p = Self::zero(arity);
        for (e, c) in terms {
            assert_eq!(e.arity(), arity, "exponent arity mismatch");
            p.add_term(e, &c);
        }
        p
    }

    fn add_term(&mut self, e: ExponentVector, c: &C) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&e) {
            Some(existing) => {
                *existing = existing.plus(c);
                if existing.is_zero() {
                    self.terms.remove(&e);
                }
            }
            None => {
                self.terms.insert(e, c.clone());
            }
        }
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms from the lex-largest down.
    pub fn terms(&self) -> impl Iterator<Item = (&ExponentVector, &C)> {
        self.terms.iter().rev()
    }

    pub fn coeff(&self, e: &ExponentVector) -> Option<&C> {
        self.terms.get(e)
    }

    pub fn leading_term(&self) -> Option<(&ExponentVector, &C)> {
        self.terms.iter().next_back()
    }

    /// Maximum total degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(ExponentVector::degree).max()
    }

    pub fn degree_in(&self, var: usize) -> Option<u32> {
        self.terms.keys().map(|e| e.get(var)).max()
    }

    /// True for the zero polynomial and whenever all stored degrees agree.
    pub fn is_homogeneous(&self) -> bool {
        let mut degrees = self.terms.keys().map(ExponentVector::degree);
        match degrees.next() {
            None => true,
            Some(d) => degrees.all(|x| x == d),
        }
    }

    pub fn as_constant(&self) -> Option<C> {
        match self.terms.len() {
            0 => Some(C::zero()),
            1 => {
                let (e, c) = self.terms.iter().next().unwrap();
                (e.degree() == 0).then(|| c.clone())
            }
            _ => None,
        }
    }

    /// `n(A)`: the number of stored monomials.
    pub fn count_monomials(&self) -> usize {
        self.terms.len()
    }

    /// `n_i(A)`: monomials attaining the maximal degree in variable `var`.
    pub fn count_max_degree_monomials(&self, var: usize) -> Result<usize, PolyError> {
        self.check_var(var)?;
        let top = self
            .degree_in(var)
            .ok_or_else(|| PolyError::Domain("n_i of the zero polynomial".into()))?;
        Ok(self.terms.keys().filter(|e| e.get(var) == top).count())
    }

    /// `[A_0, ..., A_alpha]` with `self = sum A_l * x_var^l`, each `A_l` free of `x_var`.
    pub fn expand_in_variable(&self, var: usize) -> Result<Vec<Polynomial<C>>, PolyError> {
        self.check_var(var)?;
        let top = self.degree_in(var).unwrap_or(0) as usize;
        let mut parts = vec![Self::zero(self.arity); top + 1];
        for (e, c) in &self.terms {
            let mut stripped = e.clone();
            stripped.0[var] = 0;
            parts[e.get(var) as usize].add_term(stripped, c);
        }
        Ok(parts)
    }

    fn check_var(&self, var: usize) -> Result<(), PolyError> {
        if var >= self.arity {
            Err(PolyError::Arity {
                expected: self.arity,
                found: var + 1,
            })
        } else {
            Ok(())
        }
    }

    fn check_arity(&self, other: &Self) -> Result<(), PolyError> {
        if self.arity != other.arity {
            Err(PolyError::Arity {
                expected: self.arity,
                found: other.arity,
            })
        } else {
            Ok(())
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self, PolyError> {
        self.check_arity(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c);
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self, PolyError> {
        self.check_arity(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), &c.negate());
        }
        Ok(out)
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self, PolyError> {
        self.check_arity(other)?;
        let mut out = Self::zero(self.arity);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                out.add_term(e1.product(e2), &c1.times(c2));
            }
        }
        Ok(out)
    }

    pub fn pow(&self, mut exp: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(self.arity);
        while exp > 0 {
            if exp & 1 == 1 {
                acc = &acc * &base;
            }
            exp >>= 1;
            if exp > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    pub fn scale(&self, c: &C) -> Self {
        if c.is_zero() {
            return Self::zero(self.arity);
        }
        Polynomial {
            arity: self.arity,
            terms: self
                .terms
                .iter()
                .map(|(e, x)| (e.clone(), x.times(c)))
                .collect(),
        }
    }

    /// Multiplies every exponent by a fixed monomial.
    pub fn shift(&self, by: &ExponentVector) -> Self {
        Polynomial {
            arity: self.arity,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (e.product(by), c.clone()))
                .collect(),
        }
    }

    /// Exact quotient `self / divisor`; `NotDivisible` when a remainder would remain.
    ///
    /// Leading-term reduction in lex order: if `divisor` divides `self` then its
    /// leading monomial divides the leading monomial of every intermediate remainder.
    pub fn div_exact(&self, divisor: &Self) -> Result<Self, PolyError> {
        self.check_arity(divisor)?;
        let (lead_e, lead_c) = divisor
            .leading_term()
            .ok_or(PolyError::Exact(ExactError::DivisionByZero))?;
        if let Some(c) = divisor.as_constant() {
            return Ok(self.scale(&c.recip()?));
        }
        let lead_inv = lead_c.recip()?;
        let mut remainder = self.clone();
        let mut quotient = Self::zero(self.arity);
        while let Some((e, c)) = remainder.leading_term() {
            let q_e = lead_e.quotient_of(e).ok_or(PolyError::NotDivisible)?;
            let q_c = c.times(&lead_inv);
            for (de, dc) in &divisor.terms {
                remainder.add_term(de.product(&q_e), &dc.times(&q_c).negate());
            }
            quotient.add_term(q_e, &q_c);
        }
        Ok(quotient)
    }

    pub fn evaluate(&self, point: &[C]) -> Result<C, PolyError> {
        if point.len() != self.arity {
            return Err(PolyError::Arity {
                expected: self.arity,
                found: point.len(),
            });
        }
        let mut total = C::zero();
        for (e, c) in &self.terms {
            let mut value = c.clone();
            for (x, &k) in point.iter().zip(e.as_slice()) {
                for _ in 0..k {
                    value = value.times(x);
                }
            }
            total = total.plus(&value);
        }
        Ok(total)
    }

    pub fn eval_f64(&self, point: &[f64]) -> Result<f64, PolyError> {
        if point.len() != self.arity {
            return Err(PolyError::Arity {
                expected: self.arity,
                found: point.len(),
            });
        }
        Ok(self
            .terms
            .iter()
            .map(|(e, c)| {
                e.as_slice()
                    .iter()
                    .zip(point)
                    .fold(c.to_f64(), |acc, (&k, x)| acc * x.powi(k as i32))
            })
            .sum())
    }

    pub fn eval_complex(&self, point: &[Complex64]) -> Result<Complex64, PolyError> {
        if point.len() != self.arity {
            return Err(PolyError::Arity {
                expected: self.arity,
                found: point.len(),
            });
        }
        Ok(self
            .terms
            .iter()
            .map(|(e, c)| {
                e.as_slice()
                    .iter()
                    .zip(point)
                    .fold(Complex64::new(c.to_f64(), 0.0), |acc, (&k, x)| {
                        acc * x.powu(k)
                    })
            })
            .sum())
    }

    /// Replaces variable `i` by `values[i]`; all values share one arity.
    pub fn substitute(&self, values: &[Polynomial<C>]) -> Result<Polynomial<C>, PolyError> {
        if values.len() != self.arity {
            return Err(PolyError::Arity {
                expected: self.arity,
                found: values.len(),
            });
        }
        let target = values.first().map_or(0, |v| v.arity);
        if let Some(bad) = values.iter().find(|v| v.arity != target) {
            return Err(PolyError::Arity {
                expected: target,
                found: bad.arity,
            });
        }
        let mut powers: Vec<Vec<Polynomial<C>>> = values
            .iter()
            .map(|v| vec![Polynomial::one(target), v.clone()])
            .collect();
        let mut out = Polynomial::zero(target);
        for (e, c) in &self.terms {
            let mut term = Polynomial::constant(target, c.clone());
            for (i, &k) in e.as_slice().iter().enumerate() {
                if k == 0 {
                    continue;
                }
                while powers[i].len() <= k as usize {
                    let next = &powers[i][powers[i].len() - 1] * &values[i];
                    powers[i].push(next);
                }
                term = &term * &powers[i][k as usize];
            }
            out = &out + &term;
        }
        Ok(out)
    }

    /// Renames variable `i` to `offset + i` inside a ring of `new_arity` variables.
    pub fn embed(&self, new_arity: usize, offset: usize) -> Self {
        assert!(offset + self.arity <= new_arity, "embedding out of range");
        Polynomial {
            arity: new_arity,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| {
                    let mut v = vec![0; new_arity];
                    v[offset..offset + self.arity].copy_from_slice(e.as_slice());
                    (ExponentVector(v), c.clone())
                })
                .collect(),
        }
    }

    /// Groups terms by the exponents of the first `k` variables; returns
    /// polynomials in the remaining variables keyed by that prefix.
    pub fn split_prefix(&self, k: usize) -> BTreeMap<ExponentVector, Polynomial<C>> {
        let mut out: BTreeMap<ExponentVector, Polynomial<C>> = BTreeMap::new();
        for (e, c) in &self.terms {
            let prefix = ExponentVector(e.0[..k].to_vec());
            let rest = ExponentVector(e.0[k..].to_vec());
            out.entry(prefix)
                .or_insert_with(|| Polynomial::zero(self.arity - k))
                .add_term(rest, c);
        }
        out
    }

    /// Variable `i` of the result is variable `perm[i]` of `self`.
    pub fn permute_vars(&self, perm: &[usize]) -> Self {
        // exponent of new variable j is the exponent of old variable perm[j]
        Polynomial {
            arity: self.arity,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (e.permuted(perm), c.clone()))
                .collect(),
        }
    }

    pub fn map_coeffs<D: Field>(&self, f: impl Fn(&C) -> D) -> Polynomial<D> {
        Polynomial::from_terms(self.arity, self.terms.iter().map(|(e, c)| (e.clone(), f(c))))
    }

    pub fn to_surdsum(&self) -> Polynomial<SurdSum> {
        self.map_coeffs(Field::to_surdsum)
    }

    /// Number of terms that would survive in each coefficient class.
    pub fn coefficients(&self) -> impl Iterator<Item = &C> {
        self.terms.values().rev()
    }
}

impl Polynomial<SurdSum> {
    /// `None` if some coefficient is irrational.
    pub fn to_rational(&self) -> Option<Polynomial<Rational>> {
        let mut terms = BTreeMap::new();
        for (e, c) in &self.terms {
            terms.insert(e.clone(), c.as_rational()?);
        }
        Some(Polynomial {
            arity: self.arity,
            terms,
        })
    }
}

macro_rules! poly_binop {
    ($tr:ident, $method:ident, $checked:ident) => {
        impl<C: Field> $tr<&Polynomial<C>> for &Polynomial<C> {
            type Output = Polynomial<C>;
            /// Panics on arity mismatch; use the `try_` variant to get an error.
            fn $method(self, other: &Polynomial<C>) -> Polynomial<C> {
                self.$checked(other).expect("polynomial arity mismatch")
            }
        }
        impl<C: Field> $tr for Polynomial<C> {
            type Output = Polynomial<C>;
            fn $method(self, other: Polynomial<C>) -> Polynomial<C> {
                (&self).$method(&other)
            }
        }
    };
}
poly_binop!(Add, add, try_add);
poly_binop!(Sub, sub, try_sub);
poly_binop!(Mul, mul, try_mul);

impl<C: Field> Neg for &Polynomial<C> {
    type Output = Polynomial<C>;
    fn neg(self) -> Polynomial<C> {
        self.scale(&C::one().negate())
    }
}

impl<C: Field> fmt::Display for Polynomial<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text_with("x"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::{int, Rational};

    type P = Polynomial<Rational>;

    fn p(text: &str, arity: usize) -> P {
        P::parse(text, arity).unwrap()
    }

    #[test]
    fn ring_examples() {
        assert_eq!(p("x1 + x2", 2).pow(2), p("x1^2 + 2*x1*x2 + x2^2", 2));
        let l = SignatureLinearForm::new(2, 2).unwrap().polynomial::<Rational>();
        assert_eq!(
            &l * &p("x1 + x2 + x3 + x4", 4),
            p("x1^2 + 2*x1*x2 + x2^2 - x3^2 - 2*x3*x4 - x4^2", 4)
        );
        assert_eq!(
            &l * &p("x1 + x3", 4),
            p("x1^2 + x1*x2 + x2*x3 - x3^2 - x1*x4 - x3*x4", 4)
        );
        assert!(matches!(
            p("x1", 1).try_add(&p("x1", 2)),
            Err(PolyError::Arity { .. })
        ));
        assert_eq!(p("x1 - x2", 2).pow(0), P::one(2));
    }

    #[test]
    fn monomial_counts() {
        assert_eq!(p("x1^2 + 2*x1*x2 + x2^2 - x3^2 - 2*x3*x4 - x4^2", 4).count_monomials(), 6);
        assert_eq!(P::zero(3).count_monomials(), 0);
        assert_eq!(p("x1 + x2 + x3", 3).pow(2).count_monomials(), 6);
    }

    #[test]
    fn max_degree_counts() {
        assert_eq!(p("x1^2 + x1*x2", 2).count_max_degree_monomials(0).unwrap(), 1);
        assert_eq!(p("x1 + x2 + x3", 3).count_max_degree_monomials(1).unwrap(), 1);
        let a = &p("x1 + x2", 3).pow(2) * &p("x2 + x3", 3);
        assert_eq!(a.count_max_degree_monomials(1).unwrap(), 1);
        assert!(matches!(
            P::zero(2).count_max_degree_monomials(0),
            Err(PolyError::Domain(_))
        ));
    }

    #[test]
    fn expansion_examples() {
        let parts = p("x1^2 + x1*x2 + x3", 3).expand_in_variable(0).unwrap();
        assert_eq!(parts, vec![p("x3", 3), p("x2", 3), P::one(3)]);
        let single = p("x2 + x3", 3).expand_in_variable(0).unwrap();
        assert_eq!(single, vec![p("x2 + x3", 3)]);
        let l = SignatureLinearForm::new(2, 2).unwrap().polynomial::<Rational>();
        let parts = (&l * &p("x1 + x3", 4)).expand_in_variable(0).unwrap();
        assert_eq!(
            parts,
            vec![p("x2*x3 - x3^2 - x3*x4", 4), p("x2 - x4", 4), P::one(4)]
        );
    }

    #[test]
    fn evaluation() {
        assert_eq!(p("x1 + x2", 2).evaluate(&[int(1), int(1)]).unwrap(), int(2));
        let r2: SurdSum = "sqrt(2)".parse().unwrap();
        let q = Polynomial::<SurdSum>::parse("x1*x2", 2).unwrap();
        assert_eq!(q.evaluate(&[r2.clone(), r2]).unwrap(), SurdSum::from_i64(2));
        let l = SignatureLinearForm::new(2, 2).unwrap().polynomial::<Rational>();
        assert_eq!(l.evaluate(&[int(1), int(1), int(1), int(1)]).unwrap(), int(0));
        assert!(matches!(l.evaluate(&[int(1)]), Err(PolyError::Arity { .. })));
        assert_eq!(l.eval_f64(&[1.0, 2.0, 0.5, 0.25]).unwrap(), 2.25);
    }

    #[test]
    fn exact_division() {
        let a = p("x1^2 - x2^2", 2);
        assert_eq!(a.div_exact(&p("x1 - x2", 2)).unwrap(), p("x1 + x2", 2));
        assert_eq!(p("x1^2 + x2", 2).div_exact(&p("x1", 2)), Err(PolyError::NotDivisible));
        assert_eq!(p("2*x1", 1).div_exact(&p("4", 1)).unwrap(), p("1/2*x1", 1));
    }

    #[test]
    fn substitution_and_split() {
        let q = p("x1*x2", 2);
        let values = [p("x1 + x2", 3), p("x3", 3)];
        assert_eq!(q.substitute(&values).unwrap(), p("x1*x3 + x2*x3", 3));
        let split = p("x1^2*x3 + x1*x2*x3 + 2*x1^2", 3).split_prefix(2);
        assert_eq!(split.len(), 2);
        assert_eq!(split[&ExponentVector::new(vec![2, 0])], p("x1 + 2", 1));
    }

    #[test]
    fn degree_enumeration() {
        let all = ExponentVector::all_of_degree(2, 2);
        assert_eq!(
            all,
            vec![
                ExponentVector::new(vec![2, 0]),
                ExponentVector::new(vec![1, 1]),
                ExponentVector::new(vec![0, 2])
            ]
        );
        assert_eq!(ExponentVector::all_of_degree(4, 3).len(), 20);
    }
}

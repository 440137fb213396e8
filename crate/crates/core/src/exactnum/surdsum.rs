use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::surd::prime_factors;
use super::{parse_rational, CoeffText, ExactError, Rational, Surd};

/// Most square-root generators (distinct primes) an inversion may involve.
pub const MAX_GENERATORS: usize = 8;

/// Finite sum `sum q_d * sqrt(d)` over distinct squarefree radicands `d`.
///
/// No zero coefficients are stored, so the empty map is the only zero.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct SurdSum {
    terms: BTreeMap<u64, Rational>,
}

impl SurdSum {
    pub fn zero() -> Self {
        SurdSum::default()
    }

    pub fn one() -> Self {
        SurdSum::from_rational(Rational::one())
    }

    pub fn from_rational(q: Rational) -> Self {
        let mut terms = BTreeMap::new();
        if !q.is_zero() {
            terms.insert(1, q);
        }
        SurdSum { terms }
    }

    pub fn from_i64(n: i64) -> Self {
        SurdSum::from_rational(Rational::from_integer(BigInt::from(n)))
    }

    pub fn from_surd(s: &Surd) -> Self {
        let mut terms = BTreeMap::new();
        if !s.is_zero() {
            terms.insert(s.radicand(), s.coeff().clone());
        }
        SurdSum { terms }
    }

    /// Positive square root of a positive rational.
    pub fn sqrt(r: &Rational) -> Result<Self, ExactError> {
        Ok(SurdSum::from_surd(&Surd::sqrt(r)?))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_rational(&self) -> bool {
        self.terms.keys().all(|&d| d == 1)
    }

    pub fn as_rational(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(Rational::zero()),
            1 => self.terms.get(&1).cloned(),
            _ => None,
        }
    }

    /// The value as a single surd when it has at most one term.
    pub fn as_surd(&self) -> Option<Surd> {
        match self.terms.len() {
            0 => Some(Surd::zero()),
            1 => {
                let (&d, q) = self.terms.iter().next().unwrap();
                Some(super::surd_normalize(q, &Rational::from_integer(BigInt::from(d))).unwrap())
            }
            _ => None,
        }
    }

    /// `(radicand, coefficient)` pairs in increasing radicand order.
    pub fn terms(&self) -> impl Iterator<Item = (u64, &Rational)> {
        self.terms.iter().map(|(&d, q)| (d, q))
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    /// Distinct primes dividing some radicand.
    pub fn generators(&self) -> BTreeSet<u64> {
        self.terms
            .keys()
            .flat_map(|&d| prime_factors(d))
            .collect()
    }

    fn insert_add(terms: &mut BTreeMap<u64, Rational>, d: u64, q: Rational) {
        if q.is_zero() {
            return;
        }
        let slot = terms.entry(d).or_insert_with(Rational::zero);
        *slot += q;
        if slot.is_zero() {
            terms.remove(&d);
        }
    }

    pub fn scale(&self, q: &Rational) -> Self {
        if q.is_zero() {
            return SurdSum::zero();
        }
        SurdSum {
            terms: self.terms.iter().map(|(&d, c)| (d, c * q)).collect(),
        }
    }

    /// Exact inverse by conjugating away one prime generator at a time.
    pub fn invert(&self) -> Result<Self, ExactError> {
        if self.is_zero() {
            return Err(ExactError::DivisionByZero);
        }
        let primes = self.generators();
        if primes.len() > MAX_GENERATORS {
            return Err(ExactError::UnsupportedExtension {
                generators: primes.len(),
                max: MAX_GENERATORS,
            });
        }
        let mut numerator = SurdSum::one();
        let mut current = self.clone();
        for p in primes {
            let conjugate = SurdSum {
                terms: current
                    .terms
                    .iter()
                    .map(|(&d, q)| (d, if d % p == 0 { -q } else { q.clone() }))
                    .collect(),
            };
            numerator = &numerator * &conjugate;
            current = &current * &conjugate;
        }
        let norm = current
            .as_rational()
            .expect("conjugation over every generator leaves a rational");
        Ok(numerator.scale(&norm.recip()))
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self, ExactError> {
        Ok(self * &other.invert()?)
    }

    /// Correctly rounded to `bits` significant bits (at most 53).
    pub fn to_float(&self, bits: u32) -> f64 {
        super::surdsum_to_float(self, bits)
    }

    pub fn to_f64(&self) -> f64 {
        self.to_float(53)
    }

    /// Exact sign: -1, 0 or 1.
    pub fn signum(&self) -> i32 {
        super::float::exact_sign(self)
    }
}

impl Add for &SurdSum {
    type Output = SurdSum;
    fn add(self, other: &SurdSum) -> SurdSum {
        let mut terms = self.terms.clone();
        for (&d, q) in &other.terms {
            SurdSum::insert_add(&mut terms, d, q.clone());
        }
        SurdSum { terms }
    }
}

impl Sub for &SurdSum {
    type Output = SurdSum;
    fn sub(self, other: &SurdSum) -> SurdSum {
        let mut terms = self.terms.clone();
        for (&d, q) in &other.terms {
            SurdSum::insert_add(&mut terms, d, -q);
        }
        SurdSum { terms }
    }
}

impl Mul for &SurdSum {
    type Output = SurdSum;
    fn mul(self, other: &SurdSum) -> SurdSum {
        let mut terms = BTreeMap::new();
        for (&d1, q1) in &self.terms {
            for (&d2, q2) in &other.terms {
                // sqrt(d1) sqrt(d2) = g sqrt((d1/g)(d2/g)), squarefree since d1, d2 are
                let g = d1.gcd(&d2);
                let d3 = (d1 / g)
                    .checked_mul(d2 / g)
                    .expect("radicand product overflows u64");
                let q = q1 * q2 * Rational::from_integer(BigInt::from(g));
                SurdSum::insert_add(&mut terms, d3, q);
            }
        }
        SurdSum { terms }
    }
}

impl Neg for &SurdSum {
    type Output = SurdSum;
    fn neg(self) -> SurdSum {
        SurdSum {
            terms: self.terms.iter().map(|(&d, q)| (d, -q)).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $method:ident) => {
        impl $tr for SurdSum {
            type Output = SurdSum;
            fn $method(self, other: SurdSum) -> SurdSum {
                (&self).$method(&other)
            }
        }
        impl $tr<&SurdSum> for SurdSum {
            type Output = SurdSum;
            fn $method(self, other: &SurdSum) -> SurdSum {
                (&self).$method(other)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for SurdSum {
    type Output = SurdSum;
    fn neg(self) -> SurdSum {
        -&self
    }
}

fn surd_term_text(d: u64, magnitude: &Rational) -> String {
    if d == 1 {
        magnitude.to_string()
    } else if magnitude.is_one() {
        format!("sqrt({d})")
    } else {
        format!("{magnitude}*sqrt({d})")
    }
}

impl fmt::Display for SurdSum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (&d, q)) in self.terms.iter().enumerate() {
            let text = surd_term_text(d, &q.abs());
            match (i, q.is_negative()) {
                (0, false) => write!(f, "{text}")?,
                (0, true) => write!(f, "-{text}")?,
                (_, false) => write!(f, " + {text}")?,
                (_, true) => write!(f, " - {text}")?,
            }
        }
        Ok(())
    }
}

impl FromStr for SurdSum {
    type Err = ExactError;

    /// Accepts the rendered form: `q`, `q*sqrt(d)`, `sqrt(d)` joined by `+`/`-`.
    fn from_str(text: &str) -> Result<Self, ExactError> {
        let err = |reason: &str| ExactError::Parse {
            input: text.to_string(),
            reason: reason.to_string(),
        };
        let compact: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(err("empty"));
        }
        let mut pieces: Vec<(bool, String)> = Vec::new();
        let mut depth = 0i32;
        let mut current = String::new();
        let mut negative = false;
        for (i, c) in compact.chars().enumerate() {
            match c {
                '(' => depth += 1,
                ')' => depth -= 1,
                _ => {}
            }
            let after_slash = current.ends_with('/');
            if depth == 0 && (c == '+' || c == '-') && !after_slash {
                if i > 0 {
                    if current.is_empty() {
                        return Err(err("dangling sign"));
                    }
                    pieces.push((negative, std::mem::take(&mut current)));
                }
                negative = c == '-';
                continue;
            }
            current.push(c);
        }
        if current.is_empty() {
            return Err(err("dangling sign"));
        }
        pieces.push((negative, current));

        let mut out = SurdSum::zero();
        for (neg, piece) in pieces {
            let (coeff, radicand) = match piece.find("sqrt(") {
                Some(pos) => {
                    let inner = piece[pos + 5..]
                        .strip_suffix(')')
                        .ok_or_else(|| err("unclosed sqrt"))?;
                    let prefix = &piece[..pos];
                    let coeff = if prefix.is_empty() {
                        Rational::one()
                    } else {
                        parse_rational(
                            prefix.strip_suffix('*').ok_or_else(|| err("expected '*'"))?,
                        )?
                    };
                    (coeff, parse_rational(inner)?)
                }
                None => (parse_rational(&piece)?, Rational::one()),
            };
            let coeff = if neg { -coeff } else { coeff };
            out = &out + &SurdSum::from_surd(&super::surd_normalize(&coeff, &radicand)?);
        }
        Ok(out)
    }
}

impl super::Field for SurdSum {
    fn zero() -> Self {
        SurdSum::zero()
    }
    fn one() -> Self {
        SurdSum::one()
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
    fn plus(&self, other: &Self) -> Self {
        self + other
    }
    fn minus(&self, other: &Self) -> Self {
        self - other
    }
    fn times(&self, other: &Self) -> Self {
        self * other
    }
    fn negate(&self) -> Self {
        -self
    }
    fn recip(&self) -> Result<Self, ExactError> {
        self.invert()
    }
    fn from_rational(q: &Rational) -> Self {
        SurdSum::from_rational(q.clone())
    }
    fn to_f64(&self) -> f64 {
        SurdSum::to_f64(self)
    }
    fn to_surdsum(&self) -> SurdSum {
        self.clone()
    }
    fn from_surdsum(value: &SurdSum) -> Option<Self> {
        Some(value.clone())
    }
    fn coeff_text(&self) -> CoeffText {
        if self.terms.len() != 1 {
            return CoeffText::Compound(format!("({self})"));
        }
        let (&d, q) = self.terms.iter().next().unwrap();
        let negative = q.is_negative();
        let magnitude = q.abs();
        if d == 1 && One::is_one(&magnitude) {
            CoeffText::Unit { negative }
        } else {
            CoeffText::Atom {
                negative,
                magnitude: surd_term_text(d, &magnitude),
            }
        }
    }
}

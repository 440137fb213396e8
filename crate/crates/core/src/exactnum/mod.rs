//! Exact arithmetic: arbitrary-precision rationals and the real field
//! generated by square roots of squarefree positive integers.
//!
//! Every value here is immutable once built and kept in a unique canonical
//! form, so structural equality is value equality.

mod float;
pub mod linalg;
mod surd;
mod surdsum;

use std::fmt::Debug;
use std::hash::Hash;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

pub use float::{rational_to_f64, surdsum_to_float};
pub use surd::{squarefree_decompose, surd_normalize, Surd};
pub use surdsum::{SurdSum, MAX_GENERATORS};

/// Arbitrary-precision rational with positive, coprime denominator.
pub type Rational = num_rational::BigRational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExactError {
    #[error("domain error: {0}")]
    Domain(String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("extension needs {generators} square-root generators; at most {max} supported")]
    UnsupportedExtension { generators: usize, max: usize },
    #[error("radicand does not fit in 64 bits")]
    RadicandOverflow,
    #[error("cannot parse {input:?}: {reason}")]
    Parse { input: String, reason: String },
}

/// Builds `numer/denom` as a reduced rational. Panics on a zero denominator.
pub fn rat(numer: i64, denom: i64) -> Rational {
    Rational::new(BigInt::from(numer), BigInt::from(denom))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Parses `"a"` or `"a/b"` (optional leading sign, surrounding spaces allowed).
pub fn parse_rational(text: &str) -> Result<Rational, ExactError> {
    let trimmed = text.trim();
    let err = |reason: &str| ExactError::Parse {
        input: text.to_string(),
        reason: reason.to_string(),
    };
    let (num, den) = match trimmed.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (trimmed, "1"),
    };
    let num: BigInt = num.parse().map_err(|_| err("bad numerator"))?;
    let den: BigInt = den.parse().map_err(|_| err("bad denominator"))?;
    if den.is_zero() {
        return Err(err("zero denominator"));
    }
    Ok(Rational::new(num, den))
}

/// How a coefficient renders in front of a monomial.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CoeffText {
    /// Magnitude one; only the sign is shown.
    Unit { negative: bool },
    /// A single signed atom such as `3/2` or `1/2*sqrt(6)`.
    Atom { negative: bool, magnitude: String },
    /// Needs parentheses, e.g. `(1 + sqrt(2))`.
    Compound(String),
}

/// Exact coefficient field used by the polynomial ring.
///
/// Method names avoid the `std::ops` names so both can be in scope.
pub trait Field: Clone + PartialEq + Eq + Hash + Debug + Send + Sync + 'static {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn is_one(&self) -> bool {
        *self == Self::one()
    }
    fn plus(&self, other: &Self) -> Self;
    fn minus(&self, other: &Self) -> Self;
    fn times(&self, other: &Self) -> Self;
    fn negate(&self) -> Self;
    fn recip(&self) -> Result<Self, ExactError>;
    fn from_rational(q: &Rational) -> Self;
    fn to_f64(&self) -> f64;
    fn to_surdsum(&self) -> SurdSum;
    /// `None` when the value lies outside this field.
    fn from_surdsum(value: &SurdSum) -> Option<Self>;
    fn coeff_text(&self) -> CoeffText;

    fn from_i64(n: i64) -> Self {
        Self::from_rational(&int(n))
    }
    fn div_by(&self, other: &Self) -> Result<Self, ExactError> {
        Ok(self.times(&other.recip()?))
    }
}

impl Field for Rational {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
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
        if Zero::is_zero(self) {
            Err(ExactError::DivisionByZero)
        } else {
            Ok(num_traits::Inv::inv(self))
        }
    }
    fn from_rational(q: &Rational) -> Self {
        q.clone()
    }
    fn to_f64(&self) -> f64 {
        rational_to_f64(self, 53)
    }
    fn to_surdsum(&self) -> SurdSum {
        SurdSum::from_rational(self.clone())
    }
    fn from_surdsum(value: &SurdSum) -> Option<Self> {
        value.as_rational()
    }
    fn coeff_text(&self) -> CoeffText {
        let negative = self.is_negative();
        let magnitude = self.abs();
        if One::is_one(&magnitude) {
            CoeffText::Unit { negative }
        } else {
            CoeffText::Atom {
                negative,
                magnitude: magnitude.to_string(),
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_rationals() {
        assert_eq!(parse_rational("3/6").unwrap(), rat(1, 2));
        assert_eq!(parse_rational(" -4 ").unwrap(), int(-4));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
    }

    #[test]
    fn rational_display_matches_text_grammar() {
        assert_eq!(rat(-3, 4).to_string(), "-3/4");
        assert_eq!(int(5).to_string(), "5");
    }
}

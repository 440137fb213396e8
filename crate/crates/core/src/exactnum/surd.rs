use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::{ExactError, Rational, SurdSum};

/// `coeff * sqrt(radicand)` with a squarefree radicand; zero is `0 * sqrt(1)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Surd {
    coeff: Rational,
    radicand: u64,
}

/// Splits `n = s^2 * d` with `d` squarefree. `n` must be positive.
pub fn squarefree_decompose(mut n: u64) -> (u64, u64) {
    debug_assert!(n > 0);
    let mut square_root = 1u64;
    let mut free = 1u64;
    let mut p = 2u64;
    while p.saturating_mul(p) <= n {
        let mut e = 0u32;
        while n.is_multiple_of(p) {
            n /= p;
            e += 1;
        }
        square_root *= p.pow(e / 2);
        if e % 2 == 1 {
            free *= p;
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n > 1 {
        free *= n;
    }
    (square_root, free)
}

pub(crate) fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut p = 2u64;
    while p.saturating_mul(p) <= n {
        if n.is_multiple_of(p) {
            out.push(p);
            while n.is_multiple_of(p) {
                n /= p;
            }
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Rewrites `q * sqrt(r)` as `c * sqrt(d)` with `d` a squarefree integer.
///
/// A rational radicand `a/b` becomes `sqrt(a*b)/b` before squarefree
/// extraction.
pub fn surd_normalize(q: &Rational, r: &Rational) -> Result<Surd, ExactError> {
    if !r.is_positive() {
        return Err(ExactError::Domain(format!(
            "square root of non-positive value {r}"
        )));
    }
    if q.is_zero() {
        return Ok(Surd::zero());
    }
    let product = r.numer() * r.denom();
    let n = product.to_u64().ok_or(ExactError::RadicandOverflow)?;
    let (root, free) = squarefree_decompose(n);
    let coeff = q * Rational::new(BigInt::from(root), r.denom().clone());
    Ok(Surd {
        coeff,
        radicand: free,
    })
}

impl Surd {
    pub fn zero() -> Self {
        Surd {
            coeff: Rational::zero(),
            radicand: 1,
        }
    }

    pub fn rational(q: Rational) -> Self {
        Surd {
            coeff: q,
            radicand: 1,
        }
    }

    /// Positive square root of a positive rational.
    pub fn sqrt(r: &Rational) -> Result<Self, ExactError> {
        surd_normalize(&Rational::one(), r)
    }

    pub fn coeff(&self) -> &Rational {
        &self.coeff
    }

    pub fn radicand(&self) -> u64 {
        self.radicand
    }

    pub fn is_zero(&self) -> bool {
        self.coeff.is_zero()
    }

    pub fn is_positive(&self) -> bool {
        self.coeff.is_positive()
    }

    /// `coeff^2 * radicand`, always rational.
    pub fn square(&self) -> Rational {
        &self.coeff * &self.coeff * Rational::from_integer(BigInt::from(self.radicand))
    }

    pub fn to_surdsum(&self) -> SurdSum {
        SurdSum::from_surd(self)
    }

    pub fn to_f64(&self) -> f64 {
        self.to_surdsum().to_f64()
    }
}

impl fmt::Display for Surd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_surdsum())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::{int, rat};

    #[test]
    fn normalizes_integer_radicands() {
        let s = surd_normalize(&int(1), &int(8)).unwrap();
        assert_eq!((s.coeff().clone(), s.radicand()), (int(2), 2));
        let one = surd_normalize(&int(1), &int(1)).unwrap();
        assert_eq!((one.coeff().clone(), one.radicand()), (int(1), 1));
    }

    #[test]
    fn normalizes_rational_radicand() {
        // (1/2 sqrt 6)^2 = 3/2
        let s = surd_normalize(&int(1), &rat(3, 2)).unwrap();
        assert_eq!((s.coeff().clone(), s.radicand()), (rat(1, 2), 6));
        assert_eq!(s.square(), rat(3, 2));
    }

    #[test]
    fn rejects_non_positive_radicand() {
        assert!(matches!(
            surd_normalize(&int(1), &int(0)),
            Err(ExactError::Domain(_))
        ));
        assert!(surd_normalize(&int(1), &int(-2)).is_err());
    }

    #[test]
    fn zero_coefficient_is_canonical_zero() {
        let z = surd_normalize(&int(0), &int(7)).unwrap();
        assert_eq!(z, Surd::zero());
    }

    #[test]
    fn squarefree_parts() {
        assert_eq!(squarefree_decompose(72), (6, 2));
        assert_eq!(squarefree_decompose(1), (1, 1));
        assert_eq!(squarefree_decompose(97), (1, 97));
        assert_eq!(prime_factors(60), vec![2, 3, 5]);
    }
}

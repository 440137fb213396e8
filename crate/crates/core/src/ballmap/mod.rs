//! Monomial rational maps `D_{r,s} -> D_{r',s'}` between generalized balls.

mod certificate;
mod json;

use thiserror::Error;

use crate::exactnum::{ExactError, Rational, Surd, SurdSum};
use crate::poly::{ExponentVector, PolyError, Polynomial, SignatureLinearForm};

pub(crate) use certificate::linear_positivity;
pub use certificate::{
    canonical_form, numeric_eval, properness_certificate, rationally_reduce,
    squared_norm_polynomial, Positivity, PropernessCertificate,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BallMapError {
    #[error("invalid map: {0}")]
    Invalid(String),
    #[error("not proper: {0}")]
    NotProper(PolyError),
    #[error("point lies in the indeterminacy locus")]
    IndeterminacyPoint,
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Exact(#[from] ExactError),
    #[error("json: {0}")]
    Json(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Signature {
    pub r: usize,
    pub s: usize,
    pub rp: usize,
    pub sp: usize,
}

impl Signature {
    pub fn new(r: usize, s: usize, rp: usize, sp: usize) -> Result<Self, BallMapError> {
        if [r, s, rp, sp].contains(&0) {
            return Err(BallMapError::Invalid(format!(
                "signature ({r},{s})->({rp},{sp}) has a zero entry"
            )));
        }
        Ok(Signature { r, s, rp, sp })
    }

    pub fn source_arity(&self) -> usize {
        self.r + self.s
    }

    pub fn target_arity(&self) -> usize {
        self.rp + self.sp
    }

    pub fn form(&self) -> SignatureLinearForm {
        SignatureLinearForm {
            r: self.r,
            s: self.s,
        }
    }
}

/// `coeff * z^exponents` with `coeff > 0`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MapComponent {
    coeff: Surd,
    exponents: ExponentVector,
}

impl MapComponent {
    pub fn new(coeff: Surd, exponents: ExponentVector) -> Result<Self, BallMapError> {
        if !coeff.is_positive() {
            return Err(BallMapError::Invalid(format!(
                "component coefficient {coeff} is not positive"
            )));
        }
        Ok(MapComponent { coeff, exponents })
    }

    pub fn unit(exponents: ExponentVector) -> Self {
        MapComponent {
            coeff: Surd::rational(crate::exactnum::int(1)),
            exponents,
        }
    }

    /// Component with coefficient `sqrt(square)`.
    pub fn with_coeff_square(square: &Rational, exponents: ExponentVector) -> Result<Self, BallMapError> {
        Self::new(Surd::sqrt(square)?, exponents)
    }

    pub fn coeff(&self) -> &Surd {
        &self.coeff
    }

    pub fn coeff_square(&self) -> Rational {
        self.coeff.square()
    }

    pub fn exponents(&self) -> &ExponentVector {
        &self.exponents
    }

    pub fn degree(&self) -> u32 {
        self.exponents.degree()
    }

    pub fn polynomial(&self) -> Polynomial<SurdSum> {
        Polynomial::monomial(self.exponents.clone(), self.coeff.to_surdsum())
    }
}

/// `g = [g1 | g2]`; `None` marks a zero slot.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MonomialBallMap {
    signature: Signature,
    positive: Vec<Option<MapComponent>>,
    negative: Vec<Option<MapComponent>>,
}

impl MonomialBallMap {
    pub fn new(
        signature: Signature,
        positive: Vec<Option<MapComponent>>,
        negative: Vec<Option<MapComponent>>,
    ) -> Result<Self, BallMapError> {
        if positive.len() != signature.rp || negative.len() != signature.sp {
            return Err(BallMapError::Invalid(format!(
                "expected {} positive and {} negative slots, got {} and {}",
                signature.rp,
                signature.sp,
                positive.len(),
                negative.len()
            )));
        }
        let n = signature.source_arity();
        let mut degree = None;
        for c in positive.iter().chain(&negative).flatten() {
            if c.exponents.arity() != n {
                return Err(BallMapError::Invalid(format!(
                    "component exponent has arity {}, expected {n}",
                    c.exponents.arity()
                )));
            }
            match degree {
                None => degree = Some(c.degree()),
                Some(d) if d != c.degree() => {
                    return Err(BallMapError::Invalid(format!(
                        "components of degree {d} and {} are mixed",
                        c.degree()
                    )))
                }
                _ => {}
            }
        }
        if positive.iter().all(Option::is_none) {
            return Err(BallMapError::Invalid("every positive slot is zero".into()));
        }
        Ok(MonomialBallMap {
            signature,
            positive,
            negative,
        })
    }

    /// Builds a map from component text such as `"sqrt(2)*z1*z2"` (or `"0"`),
    /// in variables `z1..z(r+s)`.
    pub fn parse(signature: Signature, positive: &[&str], negative: &[&str]) -> Result<Self, BallMapError> {
        let n = signature.source_arity();
        let side = |texts: &[&str]| -> Result<Vec<Option<MapComponent>>, BallMapError> {
            texts
                .iter()
                .map(|t| {
                    let p = Polynomial::<SurdSum>::parse_with(t, n, "z")?;
                    component_from_polynomial(&p)
                })
                .collect()
        };
        Self::new(signature, side(positive)?, side(negative)?)
    }

    pub fn signature(&self) -> Signature {
        self.signature
    }

    pub fn positive(&self) -> &[Option<MapComponent>] {
        &self.positive
    }

    pub fn negative(&self) -> &[Option<MapComponent>] {
        &self.negative
    }

    /// Common total degree of the nonzero components.
    pub fn degree(&self) -> u32 {
        self.components().flatten().next().map_or(0, MapComponent::degree)
    }

    /// Positive slots then negative slots.
    pub fn components(&self) -> impl Iterator<Item = &Option<MapComponent>> {
        self.positive.iter().chain(&self.negative)
    }

    fn side_polys(&self, side: &[Option<MapComponent>]) -> Vec<Polynomial<SurdSum>> {
        let n = self.signature.source_arity();
        side.iter()
            .map(|c| c.as_ref().map_or_else(|| Polynomial::zero(n), MapComponent::polynomial))
            .collect()
    }

    pub fn positive_polys(&self) -> Vec<Polynomial<SurdSum>> {
        self.side_polys(&self.positive)
    }

    pub fn negative_polys(&self) -> Vec<Polynomial<SurdSum>> {
        self.side_polys(&self.negative)
    }

    /// True when no monomial occurs in two nonzero slots, so that `P`
    /// determines the slots up to order.
    pub fn has_distinct_monomials(&self) -> bool {
        let mut seen = std::collections::HashSet::new();
        self.components()
            .flatten()
            .all(|c| seen.insert(c.exponents.clone()))
    }

    /// Component texts in variables `z1..`, `"0"` for zero slots.
    pub fn component_texts(&self) -> (Vec<String>, Vec<String>) {
        let text = |side: &[Option<MapComponent>]| {
            self.side_polys(side)
                .iter()
                .map(|p| p.to_text_with("z"))
                .collect()
        };
        (text(&self.positive), text(&self.negative))
    }
}

fn component_from_polynomial(p: &Polynomial<SurdSum>) -> Result<Option<MapComponent>, BallMapError> {
    if p.is_zero() {
        return Ok(None);
    }
    if p.count_monomials() != 1 {
        return Err(BallMapError::Invalid(format!("component {p} is not a monomial")));
    }
    let (e, c) = p.leading_term().unwrap();
    let surd = c
        .as_surd()
        .ok_or_else(|| BallMapError::Invalid(format!("coefficient {c} is not a single surd")))?;
    MapComponent::new(surd, e.clone()).map(Some)
}

impl std::fmt::Display for MonomialBallMap {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let (p, n) = self.component_texts();
        write!(f, "[{} | {}]", p.join(", "), n.join(", "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sig22_33() -> Signature {
        Signature::new(2, 2, 3, 3).unwrap()
    }

    #[test]
    fn validation() {
        let sig = sig22_33();
        assert!(MonomialBallMap::parse(sig, &["z1^2", "z1*z2", "z2*z3"], &["z3^2", "z3*z4", "z1*z4"]).is_ok());
        assert!(MonomialBallMap::parse(sig, &["z1^2", "z1", "0"], &["0", "0", "0"]).is_err());
        assert!(MonomialBallMap::parse(sig, &["0", "0", "0"], &["z1", "0", "0"]).is_err());
        assert!(MonomialBallMap::parse(sig, &["z1 + z2", "0", "0"], &["0", "0", "0"]).is_err());
        assert!(MonomialBallMap::parse(sig, &["z1", "0"], &["0", "0", "0"]).is_err());
        assert!(MapComponent::new(Surd::rational(crate::exactnum::int(-1)), ExponentVector::zeros(2)).is_err());
    }

    #[test]
    fn display_uses_z_variables() {
        let g = MonomialBallMap::parse(sig22_33(), &["z1^2", "sqrt(2)*z1*z2", "z2^2"], &["z3^2", "sqrt(2)*z3*z4", "z4^2"]).unwrap();
        assert_eq!(g.to_string(), "[z1^2, sqrt(2)*z1*z2, z2^2 | z3^2, sqrt(2)*z3*z4, z4^2]");
        assert_eq!(g.degree(), 2);
    }
}

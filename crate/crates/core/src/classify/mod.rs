//! Classification of proper monomial maps `D_{2,2} -> D_{3,3}` of degree two,
//! lemma harnesses and the brute-force oracle.

mod harness;
mod linear_qp;
mod search;

use serde_json::json;
use thiserror::Error;

use crate::ballmap::{
    canonical_form, properness_certificate, rationally_reduce, BallMapError, MapComponent,
    MonomialBallMap, Positivity, Signature,
};
use crate::exactnum::Rational;
use crate::poly::Polynomial;

pub use harness::{lemma_harness, HarnessBounds, HarnessReport, Lemma, Violation};
pub use linear_qp::{enumerate_linear_qp, enumerate_linear_qp_detailed, LinearQpEnumeration};
pub use search::{brute_force_search, SearchLimits};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ClassifyError {
    #[error("infeasible: {0}")]
    Infeasible(String),
    #[error("scale bound exceeded: {0}")]
    ScaleError(String),
    #[error(transparent)]
    Map(#[from] BallMapError),
}

/// Reads `g` off the sign split of `P = L^m q`: positive terms fill `g1`,
/// negative terms fill `g2`, each with coefficient `sqrt(|c|)`.
pub fn qp_to_map(q: &Polynomial<Rational>, m: u32, sig: Signature) -> Result<MonomialBallMap, ClassifyError> {
    let l = sig.form().polynomial::<Rational>();
    if q.arity() != sig.source_arity() {
        return Err(ClassifyError::Infeasible(format!(
            "Q_P has arity {}, signature needs {}",
            q.arity(),
            sig.source_arity()
        )));
    }
    let p = &l.pow(m) * q;
    if !p.is_homogeneous() || p.is_zero() {
        return Err(ClassifyError::Infeasible("L^m Q_P is not a nonzero homogeneous polynomial".into()));
    }
    let mut positive = Vec::new();
    let mut negative = Vec::new();
    for (e, c) in p.terms() {
        use num_traits::Signed;
        let slot = Some(
            MapComponent::with_coeff_square(&c.abs(), e.clone()).map_err(ClassifyError::Map)?,
        );
        if c.is_positive() {
            positive.push(slot);
        } else {
            negative.push(slot);
        }
    }
    if positive.len() > sig.rp || negative.len() > sig.sp {
        return Err(ClassifyError::Infeasible(format!(
            "{} positive and {} negative terms do not fit {} + {} slots",
            positive.len(),
            negative.len(),
            sig.rp,
            sig.sp
        )));
    }
    positive.resize(sig.rp, None);
    negative.resize(sig.sp, None);
    Ok(MonomialBallMap::new(sig, positive, negative)?)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CandidateOutcome {
    /// Index into the report's representatives.
    Class(usize),
    ReducesToDegree(u32),
    Infeasible(String),
    NotProper,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Candidate {
    pub q_p: Polynomial<Rational>,
    pub m: u32,
    pub positivity: Option<Positivity>,
    pub map: Option<MonomialBallMap>,
    pub outcome: CandidateOutcome,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassificationReport {
    pub degree: u32,
    pub signature: Signature,
    pub representatives: Vec<MonomialBallMap>,
    pub candidates: Vec<Candidate>,
    pub rejected_count: usize,
    pub lemma_bounds_used: Vec<String>,
}

/// Degree-two classes of `(2,2) -> (3,3)`, from the linear `Q_P` list.
pub fn classify_degree2_r2() -> ClassificationReport {
    let sig = Signature::new(2, 2, 3, 3).expect("valid signature");
    let mut representatives: Vec<MonomialBallMap> = Vec::new();
    let mut candidates = Vec::new();
    for q in enumerate_linear_qp() {
        let (map, positivity, outcome) = match qp_to_map(&q, 1, sig) {
            Err(ClassifyError::Infeasible(why)) => (None, None, CandidateOutcome::Infeasible(why)),
            Err(other) => (None, None, CandidateOutcome::Infeasible(other.to_string())),
            Ok(g) => {
                let cert = properness_certificate(&g, 0, 0).ok();
                let positivity = cert.as_ref().map(|c| c.positivity.clone());
                let outcome = if !cert.as_ref().is_some_and(|c| c.is_proper()) {
                    CandidateOutcome::NotProper
                } else {
                    let reduced = rationally_reduce(&g);
                    if reduced.degree() < 2 {
                        CandidateOutcome::ReducesToDegree(reduced.degree())
                    } else {
                        let canon = canonical_form(&g);
                        let idx = match representatives.iter().position(|r| *r == canon) {
                            Some(i) => i,
                            None => {
                                representatives.push(canon);
                                representatives.len() - 1
                            }
                        };
                        CandidateOutcome::Class(idx)
                    }
                };
                (Some(g), positivity, outcome)
            }
        };
        candidates.push(Candidate {
            q_p: q,
            m: 1,
            positivity,
            map,
            outcome,
        });
    }
    let accepted = candidates
        .iter()
        .filter(|c| matches!(c.outcome, CandidateOutcome::Class(_)))
        .count();
    ClassificationReport {
        degree: 2,
        signature: sig,
        representatives,
        rejected_count: candidates.len() - accepted,
        candidates,
        lemma_bounds_used: vec![
            "m = 1 forced: for m >= 2 the monomial count of P exceeds 2r+2".into(),
            "Q_P linear: n(P) <= 6 together with positivity on the region".into(),
            "linear Q_P list computed exactly by support/cancellation enumeration".into(),
        ],
    }
}

fn outcome_text(o: &CandidateOutcome) -> String {
    match o {
        CandidateOutcome::Class(i) => format!("class {}", i + 1),
        CandidateOutcome::ReducesToDegree(d) => format!("reduces to degree {d}"),
        CandidateOutcome::Infeasible(why) => format!("infeasible: {why}"),
        CandidateOutcome::NotProper => "not proper".into(),
    }
}

impl ClassificationReport {
    pub fn to_text(&self) -> String {
        let s = self.signature;
        let mut out = format!(
            "degree {} proper monomial maps ({},{}) -> ({},{})\n",
            self.degree, s.r, s.s, s.rp, s.sp
        );
        out.push_str(&format!("{:<22} {:<3} {:<14} outcome\n", "Q_P", "m", "positivity"));
        for c in &self.candidates {
            let pos = c.positivity.as_ref().map_or("-".to_string(), positivity_name);
            out.push_str(&format!(
                "{:<22} {:<3} {:<14} {}\n",
                c.q_p.to_string(),
                c.m,
                pos,
                outcome_text(&c.outcome)
            ));
        }
        out.push_str(&format!("classes: {}\n", self.representatives.len()));
        for (i, r) in self.representatives.iter().enumerate() {
            out.push_str(&format!("  ({}) {}\n", i + 1, r));
        }
        out.push_str(&format!("rejected: {}\n", self.rejected_count));
        out
    }

    pub fn to_json_value(&self) -> serde_json::Value {
        let s = self.signature;
        json!({
            "degree": self.degree,
            "signature": [s.r, s.s, s.rp, s.sp],
            "representatives": self.representatives.iter().map(|g| g.to_json_value()).collect::<Vec<_>>(),
            "candidates": self.candidates.iter().map(|c| json!({
                "q_p": c.q_p.to_string(),
                "m": c.m,
                "positivity": c.positivity.as_ref().map(positivity_name),
                "map": c.map.as_ref().map(|g| g.to_string()),
                "outcome": outcome_text(&c.outcome),
            })).collect::<Vec<_>>(),
            "rejected_count": self.rejected_count,
            "lemma_bounds_used": self.lemma_bounds_used,
        })
    }
}

pub(crate) fn positivity_name(p: &Positivity) -> String {
    match p {
        Positivity::NonnegCoeffs => "NonnegCoeffs".into(),
        Positivity::ExactLinear => "ExactLinear".into(),
        Positivity::SampledPositive { trials, seed } => format!("SampledPositive({trials},{seed})"),
        Positivity::FailedAt(_) => "FailedAt".into(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sig() -> Signature {
        Signature::new(2, 2, 3, 3).unwrap()
    }

    #[test]
    fn maps_from_qp() {
        let b = qp_to_map(&Polynomial::parse("x1 + x2 + x3 + x4", 4).unwrap(), 1, sig()).unwrap();
        assert_eq!(b.to_string(), "[z1^2, sqrt(2)*z1*z2, z2^2 | z3^2, sqrt(2)*z3*z4, z4^2]");
        let a = qp_to_map(&Polynomial::parse("x1 + x3", 4).unwrap(), 1, sig()).unwrap();
        assert_eq!(a.to_string(), "[z1^2, z1*z2, z2*z3 | z1*z4, z3^2, z3*z4]");
        assert!(matches!(
            qp_to_map(&Polynomial::parse("x3 + x4", 4).unwrap(), 1, sig()),
            Err(ClassifyError::Infeasible(_))
        ));
    }

    #[test]
    fn two_degree_two_classes() {
        let report = classify_degree2_r2();
        assert_eq!(report.representatives.len(), 2);
        assert_eq!(report.candidates.len(), 9);
        assert_eq!(report.rejected_count, 4);
        let degree_one = report
            .candidates
            .iter()
            .filter(|c| c.outcome == CandidateOutcome::ReducesToDegree(1))
            .count();
        assert_eq!(degree_one, 4);
        assert_eq!(report.to_text(), classify_degree2_r2().to_text());
    }
}

use num_complex::Complex64;
use num_traits::Signed;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{BallMapError, MapComponent, MonomialBallMap};
use crate::exactnum::{int, rat, Field, Rational, Surd};
use crate::poly::{divide_by_signature_form, ExponentVector, PolyError, Polynomial};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Positivity {
    NonnegCoeffs,
    ExactLinear,
    SampledPositive { trials: usize, seed: u64 },
    /// A point of the open region where `Q_P <= 0`.
    FailedAt(Vec<Rational>),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PropernessCertificate {
    pub m: u32,
    pub q_p: Polynomial<Rational>,
    pub positivity: Positivity,
}

impl PropernessCertificate {
    pub fn is_proper(&self) -> bool {
        !matches!(self.positivity, Positivity::FailedAt(_))
    }

    pub fn verdict_name(&self) -> &'static str {
        match self.positivity {
            Positivity::NonnegCoeffs => "NonnegCoeffs",
            Positivity::ExactLinear => "ExactLinear",
            Positivity::SampledPositive { .. } => "SampledPositive",
            Positivity::FailedAt(_) => "FailedAt",
        }
    }

    pub fn to_json_value(&self) -> serde_json::Value {
        let mut v = serde_json::json!({
            "proper": self.is_proper(),
            "m": self.m,
            "q_p": self.q_p.to_string(),
            "positivity": self.verdict_name(),
        });
        match &self.positivity {
            Positivity::SampledPositive { trials, seed } => {
                v["trials"] = (*trials).into();
                v["seed"] = (*seed).into();
            }
            Positivity::FailedAt(x) => {
                v["failed_at"] = x.iter().map(|q| q.to_string()).collect::<Vec<_>>().into();
            }
            _ => {}
        }
        v
    }
}

/// `P(x) = sum_{k<=r'} c_k^2 x^{e_k} - sum_{k>r'} c_k^2 x^{e_k}`.
pub fn squared_norm_polynomial(g: &MonomialBallMap) -> Polynomial<Rational> {
    let n = g.signature().source_arity();
    let pos = g.positive().iter().flatten().map(|c| (c.exponents.clone(), c.coeff_square()));
    let neg = g
        .negative()
        .iter()
        .flatten()
        .map(|c| (c.exponents.clone(), -c.coeff_square()));
    Polynomial::from_terms(n, pos.chain(neg))
}

pub fn properness_certificate(
    g: &MonomialBallMap,
    positivity_trials: usize,
    seed: u64,
) -> Result<PropernessCertificate, BallMapError> {
    let sig = g.signature();
    let p = squared_norm_polynomial(g);
    let (m, q_p) = divide_by_signature_form(&p, &sig.form()).map_err(BallMapError::NotProper)?;
    let positivity = if q_p.coefficients().all(|c| c.is_positive()) {
        Positivity::NonnegCoeffs
    } else if q_p.degree() == Some(1) {
        linear_positivity(&q_p, sig.r, sig.s)
    } else {
        sampled_positivity(&q_p, sig.r, sig.s, positivity_trials, seed)
    };
    Ok(PropernessCertificate { m, q_p, positivity })
}

/// A point strictly inside `{x_i > 0, sum_{i<=r} x_i > sum_{i>r} x_i}`.
fn interior_direction(r: usize, s: usize) -> Vec<Rational> {
    let mut c = vec![int(1); r];
    c.extend(std::iter::repeat_n(rat(r as i64, 2 * s as i64), s));
    c
}

/// Exact test for linear `Q`: the closed region is the cone spanned by
/// `e_i` (i <= r) and `e_i + e_j` (i <= r < j).
pub(crate) fn linear_positivity(q: &Polynomial<Rational>, r: usize, s: usize) -> Positivity {
    let n = r + s;
    let a: Vec<Rational> = (0..n)
        .map(|i| q.coeff(&ExponentVector::unit(n, i)).cloned().unwrap_or_else(Rational::zero))
        .collect();
    let mut rays = Vec::new();
    for i in 0..r {
        rays.push(vec![i]);
        for j in r..n {
            rays.push(vec![i, j]);
        }
    }
    let c = interior_direction(r, s);
    let qc: Rational = a.iter().zip(&c).map(|(x, y)| x * y).sum();
    for ray in rays {
        let value: Rational = ray.iter().map(|&i| a[i].clone()).sum();
        if value.is_negative() {
            // ray + eps*c keeps the sign of Q for small eps and is interior
            let eps = value.abs() / (int(2) * (qc.abs() + int(1)));
            let mut point: Vec<Rational> = c.iter().map(|x| x * &eps).collect();
            for &i in &ray {
                point[i] += int(1);
            }
            return Positivity::FailedAt(point);
        }
    }
    Positivity::ExactLinear
}

fn sampled_positivity(q: &Polynomial<Rational>, r: usize, s: usize, trials: usize, seed: u64) -> Positivity {
    let n = r + s;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..trials {
        let mut x: Vec<Rational> = (0..n).map(|_| rat(rng.random_range(1..=1000), 1000)).collect();
        let head: Rational = x[..r].iter().sum();
        let tail: Rational = x[r..].iter().sum();
        // rescale the first block so it beats the second by a factor in (1, 2]
        let factor = rat(1000 + rng.random_range(1..=1000), 1000);
        if head <= &tail * &factor {
            let scale = tail * &factor / &head;
            for v in &mut x[..r] {
                *v *= &scale;
            }
        }
        let value = q.evaluate(&x).expect("arity checked");
        if !value.is_positive() {
            return Positivity::FailedAt(x);
        }
    }
    Positivity::SampledPositive { trials, seed }
}

/// Strips the common monomial factor of all nonzero components.
pub fn rationally_reduce(g: &MonomialBallMap) -> MonomialBallMap {
    let mut common: Option<ExponentVector> = None;
    for c in g.components().flatten() {
        common = Some(match common {
            None => c.exponents.clone(),
            Some(e) => e.gcd(&c.exponents),
        });
    }
    let Some(common) = common else {
        return g.clone();
    };
    let strip = |side: &[Option<MapComponent>]| -> Vec<Option<MapComponent>> {
        side.iter()
            .map(|slot| {
                slot.as_ref().map(|c| MapComponent {
                    coeff: c.coeff.clone(),
                    exponents: common.quotient_of(&c.exponents).expect("gcd divides"),
                })
            })
            .collect()
    };
    MonomialBallMap {
        signature: g.signature(),
        positive: strip(g.positive()),
        negative: strip(g.negative()),
    }
}

type SideKey = Vec<(ExponentVector, Rational)>;

fn side_key(side: &[Option<MapComponent>], perm: &[usize], scale: &Rational) -> SideKey {
    let mut key: SideKey = side
        .iter()
        .flatten()
        .map(|c| (c.exponents.permuted(perm), c.coeff_square() / scale))
        .collect();
    key.sort_by(|a, b| b.cmp(a));
    key
}

fn permutations(items: &[usize]) -> Vec<Vec<usize>> {
    if items.len() <= 1 {
        return vec![items.to_vec()];
    }
    let mut out = Vec::new();
    for i in 0..items.len() {
        let mut rest = items.to_vec();
        let head = rest.remove(i);
        for mut tail in permutations(&rest) {
            tail.insert(0, head);
            out.push(tail);
        }
    }
    out
}

/// Orbit representative under block-wise source permutations, slot
/// permutations within each side and positive rescaling.
///
/// Slots are sorted lex-descending with zero slots last; coefficients are
/// scaled so the largest coefficient-square is 1; among all `r! s!` source
/// permutations the lexicographically smallest slot list wins.
pub fn canonical_form(g: &MonomialBallMap) -> MonomialBallMap {
    let g = rationally_reduce(g);
    let sig = g.signature();
    let scale = g
        .components()
        .flatten()
        .map(MapComponent::coeff_square)
        .max()
        .expect("a positive slot is nonzero");
    let head: Vec<usize> = (0..sig.r).collect();
    let tail: Vec<usize> = (sig.r..sig.r + sig.s).collect();
    let mut best: Option<(SideKey, SideKey)> = None;
    for p in permutations(&head) {
        for q in permutations(&tail) {
            let perm: Vec<usize> = p.iter().chain(&q).copied().collect();
            let key = (
                side_key(g.positive(), &perm, &scale),
                side_key(g.negative(), &perm, &scale),
            );
            if best.as_ref().is_none_or(|b| key < *b) {
                best = Some(key);
            }
        }
    }
    let (pos, neg) = best.unwrap();
    let build = |key: SideKey, len: usize| -> Vec<Option<MapComponent>> {
        let mut slots: Vec<Option<MapComponent>> = key
            .into_iter()
            .map(|(e, q)| {
                Some(MapComponent {
                    coeff: Surd::sqrt(&q).expect("coefficient squares are positive"),
                    exponents: e,
                })
            })
            .collect();
        slots.resize(len, None);
        slots
    };
    MonomialBallMap {
        signature: sig,
        positive: build(pos, sig.rp),
        negative: build(neg, sig.sp),
    }
}

/// Evaluates every component at a complex point of `C^{r+s}`.
pub fn numeric_eval(g: &MonomialBallMap, point: &[Complex64]) -> Result<Vec<Complex64>, BallMapError> {
    let n = g.signature().source_arity();
    if point.len() != n {
        return Err(BallMapError::Poly(PolyError::Arity {
            expected: n,
            found: point.len(),
        }));
    }
    if point.iter().all(|z| z.norm_sqr() == 0.0) {
        return Err(BallMapError::Invalid("the zero vector is not a projective point".into()));
    }
    let image: Vec<Complex64> = g
        .components()
        .map(|slot| match slot {
            None => Complex64::new(0.0, 0.0),
            Some(c) => c
                .exponents
                .as_slice()
                .iter()
                .zip(point)
                .fold(Complex64::new(c.coeff.to_f64(), 0.0), |acc, (&k, z)| acc * z.powu(k)),
        })
        .collect();
    if image.iter().all(|w| w.norm_sqr() == 0.0) {
        return Err(BallMapError::IndeterminacyPoint);
    }
    Ok(image)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ballmap::Signature;

    fn sig(r: usize, s: usize, rp: usize, sp: usize) -> Signature {
        Signature::new(r, s, rp, sp).unwrap()
    }

    fn map_a() -> MonomialBallMap {
        MonomialBallMap::parse(sig(2, 2, 3, 3), &["z1^2", "z1*z2", "z2*z3"], &["z3^2", "z1*z4", "z3*z4"]).unwrap()
    }

    fn map_b() -> MonomialBallMap {
        MonomialBallMap::parse(
            sig(2, 2, 3, 3),
            &["z1^2", "sqrt(2)*z1*z2", "z2^2"],
            &["z3^2", "sqrt(2)*z3*z4", "z4^2"],
        )
        .unwrap()
    }

    fn q(text: &str, n: usize) -> Polynomial<Rational> {
        Polynomial::parse(text, n).unwrap()
    }

    #[test]
    fn squared_norms() {
        assert_eq!(
            squared_norm_polynomial(&map_b()),
            q("x1^2 + 2*x1*x2 + x2^2 - x3^2 - 2*x3*x4 - x4^2", 4)
        );
        assert_eq!(
            squared_norm_polynomial(&map_a()),
            q("x1^2 + x1*x2 + x2*x3 - x3^2 - x1*x4 - x3*x4", 4)
        );
        let id = MonomialBallMap::parse(sig(3, 3, 3, 3), &["z1", "z2", "z3"], &["z4", "z5", "z6"]).unwrap();
        assert_eq!(squared_norm_polynomial(&id), sig(3, 3, 3, 3).form().polynomial());
    }

    #[test]
    fn certificates() {
        let b = properness_certificate(&map_b(), 100, 1).unwrap();
        assert_eq!((b.m, b.q_p.clone(), b.positivity), (1, q("x1 + x2 + x3 + x4", 4), Positivity::NonnegCoeffs));
        let a = properness_certificate(&map_a(), 100, 1).unwrap();
        assert_eq!((a.m, a.q_p.clone()), (1, q("x1 + x3", 4)));
        assert!(a.is_proper());
        let c = MonomialBallMap::parse(sig(1, 1, 1, 1), &["z1^2"], &["z1*z2"]).unwrap();
        let c = properness_certificate(&c, 10, 1).unwrap();
        assert_eq!((c.m, c.q_p, c.positivity), (1, q("x1", 2), Positivity::NonnegCoeffs));
        let bad = MonomialBallMap::parse(sig(2, 1, 2, 2), &["z1^2", "z1*z3"], &["z2^2", "z2*z3"]).unwrap();
        assert!(matches!(
            properness_certificate(&bad, 10, 1),
            Err(BallMapError::NotProper(PolyError::NotDivisible))
        ));
    }

    #[test]
    fn linear_witness_is_interior_and_negative() {
        let qp = q("x1 - 2*x3", 4);
        match linear_positivity(&qp, 2, 2) {
            Positivity::FailedAt(point) => {
                assert!(point.iter().all(|x| x.is_positive()));
                assert!(&point[0] + &point[1] > &point[2] + &point[3]);
                assert!(qp.evaluate(&point).unwrap().is_negative());
            }
            other => panic!("expected failure, got {other:?}"),
        }
        assert_eq!(linear_positivity(&q("x1 + x2 - x4", 4), 2, 2), Positivity::ExactLinear);
    }

    #[test]
    fn sampling_detects_sign_changes() {
        let qp = q("x1^2 - 3*x3^2", 4);
        assert!(matches!(sampled_positivity(&qp, 2, 2, 500, 7), Positivity::FailedAt(_)));
        let ok = q("x1^2 - x1*x3 + x3^2", 4);
        assert!(matches!(sampled_positivity(&ok, 2, 2, 500, 7), Positivity::SampledPositive { .. }));
    }

    #[test]
    fn reduction() {
        let g = MonomialBallMap::parse(sig(2, 2, 2, 2), &["z1*z2", "z2^2"], &["z2*z3", "z2*z4"]).unwrap();
        let expect = MonomialBallMap::parse(sig(2, 2, 2, 2), &["z1", "z2"], &["z3", "z4"]).unwrap();
        assert_eq!(rationally_reduce(&g), expect);
        assert_eq!(rationally_reduce(&map_a()), map_a());
    }

    #[test]
    fn canonical_forms() {
        let a = canonical_form(&map_a());
        let swapped = map_a_permuted(&[1, 0, 2, 3]);
        assert_eq!(canonical_form(&swapped), a);
        assert_ne!(canonical_form(&map_b()), a);
        let scaled = MonomialBallMap::parse(
            sig(2, 2, 3, 3),
            &["sqrt(3)*z1^2", "sqrt(6)*z1*z2", "sqrt(3)*z2^2"],
            &["sqrt(3)*z3^2", "sqrt(6)*z3*z4", "sqrt(3)*z4^2"],
        )
        .unwrap();
        assert_eq!(canonical_form(&scaled), canonical_form(&map_b()));
        assert_eq!(canonical_form(&a), a);
    }

    fn map_a_permuted(perm: &[usize]) -> MonomialBallMap {
        let g = map_a();
        let side = |s: &[Option<MapComponent>]| {
            s.iter()
                .map(|c| {
                    c.as_ref().map(|c| MapComponent {
                        coeff: c.coeff.clone(),
                        exponents: c.exponents.permuted(perm),
                    })
                })
                .collect()
        };
        MonomialBallMap::new(g.signature(), side(g.positive()), side(g.negative())).unwrap()
    }

    #[test]
    fn numeric_evaluation() {
        let one = Complex64::new(1.0, 0.0);
        let zero = Complex64::new(0.0, 0.0);
        let img = numeric_eval(&map_b(), &[one, zero, zero, zero]).unwrap();
        assert_eq!(img, vec![one, zero, zero, zero, zero, zero]);
        assert_eq!(
            numeric_eval(&map_a(), &[zero, one, zero, zero]),
            Err(BallMapError::IndeterminacyPoint)
        );
    }
}

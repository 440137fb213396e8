use nalgebra::DMatrix;
use num_complex::Complex64;
use proptest::prelude::*;
use propmap_core::ballmap::{canonical_form, MapComponent, MonomialBallMap, Signature};
use propmap_core::classify::{lemma_harness, HarnessBounds, Lemma};
use propmap_core::exactnum::{rat, Rational, SurdSum};
use propmap_core::numverify::{ball_margin, haar_unitary, omega_margin, sample_omega, trial_rng};
use propmap_core::poly::{divide_by_signature_form, ExponentVector, Polynomial, SignatureLinearForm};

fn rational() -> impl Strategy<Value = Rational> {
    (-20i64..=20, 1i64..=9).prop_map(|(n, d)| rat(n, d))
}

fn nonzero_rational() -> impl Strategy<Value = Rational> {
    rational().prop_filter("nonzero", |q| *q != rat(0, 1))
}

/// `q0 + q1 sqrt(p1) + q2 sqrt(p2) + q3 sqrt(p1 p2)` over small primes.
fn surdsum() -> impl Strategy<Value = SurdSum> {
    (prop::sample::select(vec![(2u64, 3u64), (2, 5), (3, 7), (5, 11)]), prop::collection::vec(rational(), 4)).prop_map(
        |((p, q), c)| {
            let radicands = [1, p, q, p * q];
            radicands.iter().zip(&c).fold(SurdSum::zero(), |acc, (&d, q)| {
                &acc + &SurdSum::sqrt(&Rational::from_integer(d.into())).unwrap().scale(q)
            })
        },
    )
}

fn exponent(arity: usize, degree: u32) -> impl Strategy<Value = ExponentVector> {
    let all = ExponentVector::all_of_degree(arity, degree);
    prop::sample::select(all)
}

fn polynomial(arity: usize) -> impl Strategy<Value = Polynomial<Rational>> {
    prop::collection::vec(((0u32..=3).prop_flat_map(move |d| exponent(arity, d)), rational()), 0..6)
        .prop_map(move |terms| Polynomial::from_terms(arity, terms))
}

fn homogeneous(arity: usize, degree: u32) -> impl Strategy<Value = Polynomial<Rational>> {
    prop::collection::vec((exponent(arity, degree), nonzero_rational()), 1..5)
        .prop_map(move |terms| Polynomial::from_terms(arity, terms))
        .prop_filter("nonzero", |p| !p.is_zero())
}

/// Degree-2 maps `D(2,2) -> D(3,3)` with distinct slot monomials.
fn ball_map() -> impl Strategy<Value = MonomialBallMap> {
    let pool = ExponentVector::all_of_degree(4, 2);
    (
        Just(pool.clone()).prop_shuffle(),
        prop::collection::vec(prop::sample::select(vec![rat(1, 1), rat(2, 1), rat(1, 2), rat(3, 1)]), 6),
        prop::collection::vec(any::<bool>(), 6),
    )
        .prop_map(|(monomials, squares, present)| {
            let mut slots: Vec<Option<MapComponent>> = (0..6)
                .map(|i| present[i].then(|| MapComponent::with_coeff_square(&squares[i], monomials[i].clone()).unwrap()))
                .collect();
            if slots[..3].iter().all(Option::is_none) {
                slots[0] = Some(MapComponent::with_coeff_square(&squares[0], monomials[0].clone()).unwrap());
            }
            let negative = slots.split_off(3);
            MonomialBallMap::new(Signature::new(2, 2, 3, 3).unwrap(), slots, negative).unwrap()
        })
}

fn complex_matrix(rows: usize, cols: usize) -> impl Strategy<Value = DMatrix<Complex64>> {
    prop::collection::vec((-1.0f64..1.0, -1.0f64..1.0), rows * cols)
        .prop_map(move |v| DMatrix::from_iterator(rows, cols, v.into_iter().map(|(a, b)| Complex64::new(a, b))))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn surd_inverse(a in surdsum()) {
        prop_assume!(!a.is_zero());
        prop_assert_eq!(&a.invert().unwrap() * &a, SurdSum::one());
    }

    #[test]
    fn surd_product_square_is_rational(
        q in nonzero_rational(), r in nonzero_rational(), a in 1u64..60, b in 1u64..60,
    ) {
        let x = SurdSum::sqrt(&Rational::from_integer(a.into())).unwrap().scale(&q);
        let y = SurdSum::sqrt(&Rational::from_integer(b.into())).unwrap().scale(&r);
        let xy = &x * &y;
        prop_assert!((&xy * &xy).is_rational());
        prop_assert!(xy.term_count() <= 1);
    }

    #[test]
    fn polynomial_text_round_trip(p in polynomial(4)) {
        let text = p.to_string();
        prop_assert_eq!(Polynomial::<Rational>::parse(&text, 4).unwrap(), p.clone());
        let z = p.to_text_with("z");
        prop_assert_eq!(Polynomial::<Rational>::parse_with(&z, 4, "z").unwrap(), p);
    }

    #[test]
    fn signature_form_division_round_trip(q in homogeneous(4, 2), m in 1u32..=3, r in 1usize..=3) {
        let form = SignatureLinearForm::new(r, 4 - r).unwrap();
        let l = form.polynomial::<Rational>();
        let p = &l.pow(m) * &q;
        let (m2, q2) = divide_by_signature_form(&p, &form).unwrap();
        prop_assert!(m2 >= m);
        prop_assert_eq!(&l.pow(m2) * &q2, p);
    }

    #[test]
    fn canonical_form_is_orbit_invariant(
        g in ball_map(),
        swap_head in any::<bool>(),
        swap_tail in any::<bool>(),
        scale in prop::sample::select(vec![rat(1, 1), rat(2, 1), rat(1, 3), rat(5, 2)]),
        rotate in 0usize..3,
    ) {
        let canon = canonical_form(&g);
        prop_assert_eq!(canonical_form(&canon), canon.clone());
        let perm: Vec<usize> = vec![
            usize::from(swap_head),
            usize::from(!swap_head),
            2 + usize::from(swap_tail),
            2 + usize::from(!swap_tail),
        ];
        let act = |slots: &[Option<MapComponent>]| -> Vec<Option<MapComponent>> {
            let mut out: Vec<_> = slots
                .iter()
                .map(|c| c.as_ref().map(|c| {
                    MapComponent::with_coeff_square(&(c.coeff_square() * &scale), c.exponents().permuted(&perm)).unwrap()
                }))
                .collect();
            out.rotate_left(rotate);
            out
        };
        let moved = MonomialBallMap::new(g.signature(), act(g.positive()), act(g.negative())).unwrap();
        prop_assert_eq!(canonical_form(&moved), canon);
    }

    #[test]
    fn omega_margin_unitary_invariance(z in complex_matrix(2, 3), seed in any::<u64>()) {
        let mut rng = trial_rng(seed, 0);
        let u = haar_unitary(&mut rng, 2);
        let v = haar_unitary(&mut rng, 3);
        let moved = &u * &z * &v;
        prop_assert!((omega_margin(&moved) - omega_margin(&z)).abs() < 1e-12);
    }

    #[test]
    fn ball_margin_scale_invariance(
        x in prop::collection::vec((-1.0f64..1.0, -1.0f64..1.0), 5),
        lambda in (0.01f64..100.0, 0.0f64..std::f64::consts::TAU),
    ) {
        let x: Vec<Complex64> = x.into_iter().map(|(a, b)| Complex64::new(a, b)).collect();
        prop_assume!(x.iter().any(|c| c.norm() > 1e-6));
        let l = Complex64::from_polar(lambda.0, lambda.1);
        let y: Vec<Complex64> = x.iter().map(|c| c * l).collect();
        let (a, b) = (ball_margin(&x, 2, 3).unwrap(), ball_margin(&y, 2, 3).unwrap());
        prop_assert!((a - b).abs() < 1e-12);
        prop_assert!((-1.0..=1.0).contains(&a));
    }

    #[test]
    fn seeded_runs_are_reproducible(seed in any::<u64>()) {
        prop_assert_eq!(sample_omega(2, 2, seed, 5), sample_omega(2, 2, seed, 5));
        let bounds = HarnessBounds::default();
        prop_assert_eq!(lemma_harness(Lemma::L3_5, 20, seed, &bounds), lemma_harness(Lemma::L3_5, 20, seed, &bounds));
    }
}

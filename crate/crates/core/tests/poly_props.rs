use std::collections::HashMap;

use grautkit_core::poly::{rat, Arity, GradedDegree, Monomial, Poly, Rational, WeightVector};
use num_traits::Zero;
use proptest::prelude::*;

fn term(arity: Arity) -> impl Strategy<Value = (Vec<u32>, i64, i64)> {
    (
        prop::collection::vec(0u32..4, arity.len()),
        -6i64..=6,
        1i64..=3,
    )
}

fn poly(arity: Arity) -> impl Strategy<Value = Poly> {
    prop::collection::vec(term(arity), 0..6).prop_map(move |ts| {
        Poly::from_terms(
            arity,
            ts.into_iter()
                .map(|(e, n, d)| (Monomial::new(arity, &e).unwrap(), rat(n, d))),
        )
        .unwrap()
    })
}

fn space() -> impl Strategy<Value = Poly> {
    poly(Arity::Space)
}

// independent product: exponent vectors in a hash map, no ordering
fn naive_mul(p: &Poly, q: &Poly) -> HashMap<Vec<u32>, Rational> {
    let mut acc: HashMap<Vec<u32>, Rational> = HashMap::new();
    for (m1, c1) in p.terms() {
        for (m2, c2) in q.terms() {
            let e: Vec<u32> = m1
                .exponents()
                .iter()
                .zip(m2.exponents())
                .map(|(a, b)| a + b)
                .collect();
            *acc.entry(e).or_insert_with(Rational::zero) += c1 * c2;
        }
    }
    acc.retain(|_, c| !c.is_zero());
    acc
}

fn as_map(p: &Poly) -> HashMap<Vec<u32>, Rational> {
    p.terms()
        .map(|(m, c)| (m.exponents().to_vec(), c.clone()))
        .collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn ring_axioms(p in space(), q in space(), r in space()) {
        prop_assert_eq!(&p + &q, &q + &p);
        prop_assert_eq!(&p * &q, &q * &p);
        prop_assert_eq!(&(&p + &q) + &r, &p + &(&q + &r));
        prop_assert_eq!(&(&p * &q) * &r, &p * &(&q * &r));
        prop_assert_eq!(&p * &(&q + &r), &(&p * &q) + &(&p * &r));
        prop_assert_eq!(&p * &Poly::one(Arity::Space), p.clone());
        prop_assert!((&p - &p).is_zero());
        prop_assert!((&p * &q).is_canonical());
    }

    #[test]
    fn product_matches_naive_expansion(p in space(), q in space()) {
        prop_assert_eq!(as_map(&(&p * &q)), naive_mul(&p, &q));
    }

    #[test]
    fn substitute_is_a_homomorphism(
        p in poly(Arity::Plane),
        q in poly(Arity::Plane),
        images in prop::collection::vec(space(), 2),
    ) {
        let s = |x: &Poly| x.substitute(&images).unwrap();
        prop_assert_eq!(s(&(&p + &q)), &s(&p) + &s(&q));
        prop_assert_eq!(s(&(&p * &q)), &s(&p) * &s(&q));
    }

    #[test]
    fn substitute_agrees_with_evaluation(
        p in poly(Arity::Plane),
        images in prop::collection::vec(poly(Arity::Plane), 2),
        point in prop::collection::vec((-5i64..=5, 1i64..=3), 2),
    ) {
        let point: Vec<Rational> = point.into_iter().map(|(n, d)| rat(n, d)).collect();
        let inner: Vec<Rational> = images.iter().map(|f| f.eval(&point).unwrap()).collect();
        prop_assert_eq!(p.substitute(&images).unwrap().eval(&point).unwrap(), p.eval(&inner).unwrap());
    }

    #[test]
    fn gamma_degree_is_additive(
        m1 in prop::collection::vec(0u32..5, 3),
        m2 in prop::collection::vec(0u32..5, 3),
        c1 in 1i64..5,
        c2 in -5i64..0,
        w in prop::collection::vec(-4i64..=4, 3),
    ) {
        let w = WeightVector::new(&w).unwrap();
        let p = Poly::monomial(Monomial::new(Arity::Space, &m1).unwrap(), rat(c1, 1));
        let q = Poly::monomial(Monomial::new(Arity::Space, &m2).unwrap(), rat(c2, 1));
        let (GradedDegree::Exactly(dp), GradedDegree::Exactly(dq)) =
            (p.gamma_degree(&w).unwrap().unwrap(), q.gamma_degree(&w).unwrap().unwrap())
        else {
            panic!("monomials are homogeneous");
        };
        prop_assert_eq!(p.checked_mul(&q).unwrap().gamma_degree(&w).unwrap(), Some(GradedDegree::Exactly(dp + dq)));
        let sum = &p + &q;
        let expect = if dp == dq { Some(GradedDegree::Exactly(dp)) } else { None };
        if !sum.is_zero() && m1 != m2 {
            prop_assert_eq!(sum.gamma_degree(&w).unwrap(), expect);
        }
    }
}

#[test]
fn zero_is_homogeneous_of_every_degree() {
    let w = WeightVector::new(&[3, 1, -1]).unwrap();
    assert_eq!(
        Poly::zero(Arity::Space).gamma_degree(&w).unwrap(),
        Some(GradedDegree::Any)
    );
}

#[test]
fn arity_mismatch_is_an_error() {
    let p = Poly::var(Arity::Plane, 0);
    let q = Poly::var(Arity::Space, 0);
    assert!(p.checked_add(&q).is_err());
    assert!(p.checked_mul(&q).is_err());
    assert!(p.substitute(std::slice::from_ref(&q)).is_err());
}

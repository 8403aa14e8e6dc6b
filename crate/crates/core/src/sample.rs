//! Random inputs for tests and benchmarks.
//!
//! Every sampler takes the generator explicitly so callers can seed it.

use num_traits::Zero;
use rand::seq::SliceRandom;
use rand::Rng;

use crate::endo::{compose, compose_all, ElemAuto, ElemSeq, PolyMap};
use crate::gens::{make_s_element, DElement, UElement, WElement};
use crate::grading::NormalizedGrading;
use crate::lift::{lift, restrict_map, EMember, TorusFactor};
use crate::poly::{rat, Arity, Monomial, Poly, Rational};

/// Numerator in `-9..=9`, denominator in `1..=4`.
pub fn small_rational<R: Rng + ?Sized>(rng: &mut R) -> Rational {
    rat(rng.gen_range(-9..=9), rng.gen_range(1..=4))
}

pub fn nonzero_rational<R: Rng + ?Sized>(rng: &mut R) -> Rational {
    loop {
        let c = small_rational(rng);
        if !c.is_zero() {
            return c;
        }
    }
}

/// Up to `max_terms` random terms of total degree at most `max_degree`.
pub fn random_poly<R: Rng + ?Sized>(
    rng: &mut R,
    arity: Arity,
    max_degree: u32,
    max_terms: usize,
) -> Poly {
    let n = rng.gen_range(0..=max_terms);
    let terms = (0..n).map(|_| {
        let mut left = rng.gen_range(0..=max_degree);
        let mut exps = vec![0u32; arity.len()];
        for e in exps.iter_mut() {
            let take = rng.gen_range(0..=left);
            *e = take;
            left -= take;
        }
        exps.shuffle(rng);
        (
            Monomial::new(arity, &exps).expect("arity matches"),
            small_rational(rng),
        )
    });
    Poly::from_terms(arity, terms).expect("arity matches")
}

/// Random polynomial in one variable of the plane, no constant term.
fn random_univariate<R: Rng + ?Sized>(rng: &mut R, var: usize, exps: &[u32]) -> Poly {
    let mut p = Poly::zero(Arity::Plane);
    for &q in exps {
        if rng.gen_bool(0.6) {
            p = &p
                + &Poly::monomial(
                    Monomial::var_pow(Arity::Plane, var, q),
                    nonzero_rational(rng),
                );
        }
    }
    p
}

fn first_type_exponents(g: &NormalizedGrading, max_degree: u32, upper: bool) -> Vec<u32> {
    (2..=max_degree)
        .filter(|&q| (q as i64 * g.b() - g.a()).rem_euclid(g.c()) == 0)
        .filter(|&q| (g.b() * q as i64 >= g.a()) == upper)
        .collect()
}

/// Exponents `k ≤ max_k` with `k·a ≡ b (mod c)`.
pub fn d_exponents(g: &NormalizedGrading, max_k: u32) -> Vec<u32> {
    (1..=max_k)
        .filter(|&k| (k as i64 * g.a() - g.b()).rem_euclid(g.c()) == 0)
        .collect()
}

pub fn random_u_element<R: Rng + ?Sized>(
    rng: &mut R,
    g: &NormalizedGrading,
    max_degree: u32,
) -> UElement {
    let f = random_univariate(rng, 1, &first_type_exponents(g, max_degree, true));
    UElement::new(nonzero_rational(rng), f, g).expect("sampled U element")
}

/// `W` element with `λ = 1` and shift degrees in `2..`.
pub fn random_w_element<R: Rng + ?Sized>(
    rng: &mut R,
    g: &NormalizedGrading,
    max_degree: u32,
) -> WElement {
    let f = random_univariate(rng, 1, &first_type_exponents(g, max_degree, false));
    WElement::new(Rational::from_integer(1.into()), f, g).expect("sampled W element")
}

pub fn random_d_element<R: Rng + ?Sized>(
    rng: &mut R,
    g: &NormalizedGrading,
    max_k: u32,
) -> DElement {
    let ks = d_exponents(g, max_k);
    match ks.choose(rng) {
        Some(&k) if rng.gen_bool(0.8) => {
            DElement::new(nonzero_rational(rng), nonzero_rational(rng), k, g).expect("sampled D")
        }
        _ => DElement::new(nonzero_rational(rng), Rational::zero(), 1, g).expect("sampled D"),
    }
}

/// A graded plane elementary map from `U`, `W` or `D`.
pub fn random_graded_plane_factor<R: Rng + ?Sized>(
    rng: &mut R,
    g: &NormalizedGrading,
    max_degree: u32,
) -> PolyMap {
    match rng.gen_range(0..3) {
        0 => random_u_element(rng, g, max_degree).to_map(),
        1 => random_w_element(rng, g, max_degree).to_map(),
        _ => random_d_element(rng, g, max_degree).to_map(),
    }
}

/// A graded plane automorphism that lifts: a product of `U`, `D` and
/// corrected conjugates, each taken in the plane.
pub fn random_liftable_plane_map<R: Rng + ?Sized>(
    rng: &mut R,
    g: &NormalizedGrading,
    len: usize,
) -> PolyMap {
    let maps: Vec<PolyMap> = (0..len)
        .map(|_| match rng.gen_range(0..3) {
            0 => random_u_element(rng, g, 4).to_map(),
            1 => random_d_element(rng, g, 2).to_map(),
            _ => {
                let tau = random_w_element(rng, g, 3);
                let theta = random_d_element(rng, g, 1);
                make_s_element(&tau, &theta, g)
                    .expect("S element")
                    .plane_map()
                    .clone()
            }
        })
        .collect();
    compose_all(Arity::Plane, &maps).expect("plane maps")
}

/// A graded plane automorphism from `U`, `W` and `D` factors; lifts or not.
pub fn random_graded_plane_map<R: Rng + ?Sized>(
    rng: &mut R,
    g: &NormalizedGrading,
    len: usize,
) -> PolyMap {
    let maps: Vec<PolyMap> = (0..len)
        .map(|_| random_graded_plane_factor(rng, g, 3))
        .collect();
    compose_all(Arity::Plane, &maps).expect("plane maps")
}

/// One lifted graded elementary factor: a lifted `U` or `D` element, or an
/// `S` generator.
pub fn random_lifted_factor<R: Rng + ?Sized>(rng: &mut R, g: &NormalizedGrading) -> PolyMap {
    // room for a few U exponents above a/b
    let u_degree = 4.max((g.a() + g.b() - 1) / g.b() + 3) as u32;
    let plane = match rng.gen_range(0..3) {
        0 => random_u_element(rng, g, u_degree).to_map(),
        1 => random_d_element(rng, g, 2).to_map(),
        _ => {
            let tau = random_w_element(rng, g, 3);
            let theta = random_d_element(rng, g, 1);
            return make_s_element(&tau, &theta, g)
                .expect("S element")
                .lifted()
                .map()
                .clone();
        }
    };
    lift(&plane, g).expect("U and D lift").into_map()
}

fn plane_degree(space: &PolyMap) -> u64 {
    restrict_map(space)
        .expect("space map")
        .images()
        .iter()
        .filter_map(Poly::total_degree)
        .max()
        .unwrap_or(0)
        .max(1)
}

/// Product of `len` lifted factors whose restrictions to `z = 1` have
/// degrees multiplying to at most `degree_budget`.
pub fn random_e_member<R: Rng + ?Sized>(
    rng: &mut R,
    g: &NormalizedGrading,
    len: usize,
    degree_budget: u64,
) -> EMember {
    let mut budget = degree_budget.max(1);
    let mut maps = Vec::with_capacity(len);
    for _ in 0..len {
        let factor = (0..8)
            .map(|_| random_lifted_factor(rng, g))
            .find(|m| plane_degree(m) <= budget)
            .unwrap_or_else(|| {
                let d = DElement::new(nonzero_rational(rng), Rational::zero(), 1, g)
                    .expect("diagonal D");
                lift(&d.to_map(), g).expect("D lifts").into_map()
            });
        budget /= plane_degree(&factor);
        maps.push(factor);
    }
    let map = compose_all(Arity::Space, &maps).expect("space maps");
    EMember::new(map, *g).expect("product of lifted factors")
}

/// A random `E` member composed with a torus factor `(x, y, λz)`.
pub fn random_graded_automorphism<R: Rng + ?Sized>(
    rng: &mut R,
    g: &NormalizedGrading,
    len: usize,
    degree_budget: u64,
) -> PolyMap {
    let e = random_e_member(rng, g, len, degree_budget);
    let torus = TorusFactor::new(nonzero_rational(rng)).expect("nonzero λ");
    compose(e.map(), &torus.to_map()).expect("space maps")
}

/// Elementary plane map on `axis` with a shift of at most three terms and
/// degree at most `max_degree`.
pub fn random_elem<R: Rng + ?Sized>(rng: &mut R, axis: usize, max_degree: u32) -> ElemAuto {
    let other = 1 - axis;
    let mut shift = Poly::zero(Arity::Plane);
    for _ in 0..rng.gen_range(0..=3) {
        let q = rng.gen_range(0..=max_degree);
        shift = &shift
            + &Poly::monomial(
                Monomial::var_pow(Arity::Plane, other, q),
                small_rational(rng),
            );
    }
    ElemAuto::new(axis, nonzero_rational(rng), shift).expect("shift avoids the moved variable")
}

/// Word of at most `max_len` elementary plane maps with alternating axes.
/// The product of the shift degrees is kept within `degree_budget` so the
/// composed map stays small.
pub fn random_elem_word<R: Rng + ?Sized>(
    rng: &mut R,
    max_len: usize,
    max_degree: u32,
    degree_budget: u32,
) -> ElemSeq {
    let len = rng.gen_range(1..=max_len);
    let mut axis = rng.gen_range(0..2);
    let mut budget = degree_budget.max(1);
    let mut factors = Vec::with_capacity(len);
    for _ in 0..len {
        let cap = max_degree.min(budget).max(1);
        let f = random_elem(rng, axis, cap);
        let deg = f.shift().total_degree().unwrap_or(1).max(1) as u32;
        budget /= deg;
        factors.push(f);
        axis = 1 - axis;
    }
    ElemSeq::new(Arity::Plane, factors).expect("plane factors")
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn samplers_respect_membership() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for (a, b, c) in [(3, 1, 1), (5, 2, 1), (8, 3, 2)] {
            let g = NormalizedGrading::new(a, b, c).unwrap();
            for _ in 0..20 {
                assert!(random_u_element(&mut rng, &g, 6)
                    .as_first_type()
                    .is_u_member(&g));
                assert!(random_w_element(&mut rng, &g, 6)
                    .as_first_type()
                    .is_w_member(&g));
                let e = random_e_member(&mut rng, &g, 3, 16);
                assert!(e.map().is_graded(&g.weights()).unwrap());
            }
        }
    }

    #[test]
    fn elem_words_stay_within_budget() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..50 {
            let w = random_elem_word(&mut rng, 6, 5, 64);
            assert!(w.len() <= 6);
            let deg = w
                .compose()
                .images()
                .iter()
                .filter_map(|p| p.total_degree())
                .max()
                .unwrap_or(0);
            assert!(deg <= 64);
        }
    }
}

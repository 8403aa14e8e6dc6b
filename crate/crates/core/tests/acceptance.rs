//! Acceptance checks. Runs every criterion, prints one PASS/FAIL line for
//! each and exits nonzero if any fails.

use std::panic::{self, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use grautkit_core::endo::{compose, jvdk_decompose, PolyMap};
use grautkit_core::gens::{
    decompose_graded, make_s_element, recompose, DElement, GenWord, Generator, WElement,
};
use grautkit_core::grading::{admits_wild, normalize, NormalizedGrading, RawGrading};
use grautkit_core::lift::{lift, liftable, rehomogenize, restrict, EMember};
use grautkit_core::poly::{Arity, Monomial, Poly, Rational};
use grautkit_core::sample::{
    nonzero_rational, random_e_member, random_elem_word, random_graded_automorphism,
    random_graded_plane_map, random_liftable_plane_map, random_poly,
};
use grautkit_core::{format_map, format_poly, parse_map, parse_poly, Error};
use num_integer::Integer;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const SIGMA: &str = "x - x^2*z^3 - y^4*z - 2*x*y*z - 2*y^3 - 2*x*y^2*z^2; y + x*z^2 + y^2*z; z";

struct Outcome {
    pass: bool,
    detail: String,
}

fn pass(detail: impl Into<String>) -> Outcome {
    Outcome {
        pass: true,
        detail: detail.into(),
    }
}

fn fail(detail: impl Into<String>) -> Outcome {
    Outcome {
        pass: false,
        detail: detail.into(),
    }
}

fn grading(a: i64, b: i64, c: i64) -> NormalizedGrading {
    normalize(&RawGrading::new(a, b, c)).expect("mixed grading")
}

fn plane(s: &str) -> PolyMap {
    parse_map(s).expect("plane map")
}

fn nagata() -> Outcome {
    let g = grading(3, 1, -1);
    let tau = plane("u + v^2; v");
    let tau_inv = plane("u - v^2; v");
    let theta = plane("u; v + u");
    let conj = compose(&compose(&tau_inv, &theta).unwrap(), &tau).unwrap();
    let expected = plane("u - u^2 - v^4 - 2*u*v - 2*v^3 - 2*u*v^2; v + u + v^2");
    if conj != expected {
        return fail(format!("conjugate is {}", format_map(&conj)));
    }
    let sigma = parse_map(SIGMA).unwrap();
    let lifted = match lift(&conj, &g) {
        Ok(l) => l,
        Err(e) => return fail(format!("lift failed: {}", e)),
    };
    if *lifted.map() != sigma {
        return fail(format!("lift is {}", format_map(lifted.map())));
    }
    if restrict(&lifted) != conj {
        return fail("restriction of σ differs from the conjugate");
    }
    let word = decompose_graded(&sigma, &g).unwrap();
    if recompose(&word).unwrap() != sigma {
        return fail("decomposition of σ does not recompose");
    }
    pass("conjugate and lift bit-exact, σ decomposes and recomposes")
}

/// `u + (ν/λ₁)v² − (ν/λ₁)(λ₂v + μ(λ₁u + νv²))²`, expanded by hand.
fn conjugate_first_image(l1: &Rational, nu: &Rational, l2: &Rational, mu: &Rational) -> Poly {
    let u = Poly::var(Arity::Plane, 0);
    let v = Poly::var(Arity::Plane, 1);
    let v2 = &v * &v;
    let inner = &u.scale(l1) + &v2.scale(nu);
    let second = &v.scale(l2) + &inner.scale(mu);
    let r = nu / l1;
    &(&u + &v2.scale(&r)) - &(&second * &second).scale(&r)
}

fn correction_closed_form() -> Outcome {
    let g = grading(3, 1, -1);
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let v2 = Monomial::var_pow(Arity::Plane, 1, 2);
    let samples = 100;
    let (mut stated_coef, mut stated_corr, mut derived_coef, mut derived_corr, mut lifts) =
        (0, 0, 0, 0, 0);
    for _ in 0..samples {
        let (l1, nu, l2, mu) = (
            nonzero_rational(&mut rng),
            nonzero_rational(&mut rng),
            nonzero_rational(&mut rng),
            nonzero_rational(&mut rng),
        );
        let tau =
            WElement::new(l1.clone(), Poly::var(Arity::Plane, 1).pow(2).scale(&nu), &g).unwrap();
        let theta = DElement::new(l2.clone(), mu.clone(), 1, &g).unwrap();
        let conj = compose(
            &compose(&tau.as_first_type().inverse().to_map(), &theta.to_map()).unwrap(),
            &tau.to_map(),
        )
        .unwrap();
        let oracle = conjugate_first_image(&l1, &nu, &l2, &mu);
        assert_eq!(
            *conj.image(0),
            oracle,
            "library composition disagrees with the expansion"
        );

        let coef = oracle.coefficient_of(&v2);
        let one = Rational::one();
        let stated = (&one - &l1 * &l1) * &nu / &l1;
        let derived = (&one - &l2 * &l2) * &nu / &l1;
        stated_coef += (coef == stated) as usize;
        derived_coef += (coef == derived) as usize;

        let s = make_s_element(&tau, &theta, &g).unwrap();
        let corr = s.correction().as_first_type();
        let shift_of = |c: Rational| Poly::monomial(v2, -c);
        let l2sq = &l2 * &l2;
        stated_corr += (corr.lambda().is_one() && *corr.f() == shift_of(&stated / &l2sq)) as usize;
        derived_corr +=
            (corr.lambda().is_one() && *corr.f() == shift_of(&derived / &l2sq)) as usize;
        lifts += liftable(&compose(&corr.to_map(), &conj).unwrap(), &g).unwrap() as usize;
    }
    let detail = format!(
        "stated (1-λ1²)ν/λ1: coefficient {}/{}, correction {}/{}; \
         direct expansion gives (1-λ2²)ν/λ1: coefficient {}/{}, correction {}/{}; corrected maps lift {}/{}",
        stated_coef, samples, stated_corr, samples, derived_coef, samples, derived_corr, samples, lifts, samples
    );
    if stated_coef == samples && stated_corr == samples {
        pass(detail)
    } else {
        fail(detail)
    }
}

fn wild_checker() -> Outcome {
    let mut checked = 0;
    for a in 1..=30i64 {
        for b in 1..=a {
            for c in 1..=30i64 {
                if a.gcd(&b).gcd(&c) != 1 {
                    continue;
                }
                let g = NormalizedGrading::new(a, b, c).unwrap();
                let brute = (1..=a).any(|p| (2..=a).any(|q| c * p + b * q == a));
                let found = admits_wild(&g);
                if found.is_some() != brute {
                    return fail(format!("disagreement at a={} b={} c={}", a, b, c));
                }
                if let Some(cert) = found {
                    if a != c * cert.p + b * cert.q || cert.q < 2 || a <= b {
                        return fail(format!(
                            "bad certificate {} at a={} b={} c={}",
                            cert, a, b, c
                        ));
                    }
                }
                checked += 1;
            }
        }
    }
    pass(format!(
        "{} normalized gradings agree with enumeration",
        checked
    ))
}

fn lift_round_trips() -> Outcome {
    let gs = [grading(3, 1, -1), grading(5, 2, -1), grading(8, 3, -2)];
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    for i in 0..200 {
        let g = &gs[i % 3];
        let len = rng.gen_range(1..=6);
        let phi: EMember = random_e_member(&mut rng, g, len, 36);
        if lift(&restrict(&phi), g).ok().as_ref() != Some(&phi) {
            return fail(format!(
                "lift∘restrict differs on {}",
                format_map(phi.map())
            ));
        }
    }
    for i in 0..200 {
        let g = &gs[i % 3];
        let p = random_liftable_plane_map(&mut rng, g, 3);
        match lift(&p, g) {
            Ok(l) if restrict(&l) == p => {}
            _ => return fail(format!("restrict∘lift differs on {}", format_map(&p))),
        }
    }
    let mut counts = [0usize; 2];
    for i in 0..500 {
        let g = &gs[i % 3];
        let len = rng.gen_range(1..=3);
        let p = random_graded_plane_map(&mut rng, g, len);
        let predicted = liftable(&p, g).unwrap();
        if predicted != rehomogenize(&p, g).is_some() || predicted != lift(&p, g).is_ok() {
            return fail(format!("predicate disagrees on {}", format_map(&p)));
        }
        counts[predicted as usize] += 1;
    }
    if counts.contains(&0) {
        return fail("sample lacks liftable or non-liftable maps");
    }
    pass(format!(
        "200 + 200 round trips; predicate agrees on 500 ({} liftable, {} not)",
        counts[1], counts[0]
    ))
}

fn members_ok(word: &GenWord) -> bool {
    let g = &word.grading;
    word.factors.iter().all(|f| match f {
        Generator::Torus(t) => !t.lambda().is_zero(),
        Generator::U(u) => u.as_first_type().is_u_member(g),
        Generator::S(s) => {
            s.tau().as_first_type().is_w_member(g)
                && s.correction().as_first_type().is_w_member(g)
                && DElement::new(
                    s.theta().lambda().clone(),
                    s.theta().mu().clone(),
                    s.theta().k(),
                    g,
                )
                .is_ok()
                && liftable(s.plane_map(), g).unwrap_or(false)
        }
    })
}

fn master_decomposition() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut s_count = 0;
    for g in [grading(3, 1, -1), grading(5, 2, -1)] {
        for _ in 0..100 {
            let len = rng.gen_range(1..=6);
            let phi = random_graded_automorphism(&mut rng, &g, len, 36);
            let word = match decompose_graded(&phi, &g) {
                Ok(w) => w,
                Err(e) => return fail(format!("{} on {}", e, format_map(&phi))),
            };
            if recompose(&word).ok().as_ref() != Some(&phi) {
                return fail(format!("word does not recompose to {}", format_map(&phi)));
            }
            if !members_ok(&word) {
                return fail(format!("membership check failed for {}", format_map(&phi)));
            }
            s_count += word.s_elements().count();
        }
    }
    let g = grading(3, 1, -1);
    let sigma = parse_map(SIGMA).unwrap();
    let word = decompose_graded(&sigma, &g).unwrap();
    if recompose(&word).unwrap() != sigma || !members_ok(&word) {
        return fail("σ does not decompose cleanly");
    }
    if !word.s_elements().any(|s| !s.tau().f().is_zero()) {
        return fail("σ's word has no S element with nonzero τ shift");
    }
    pass(format!(
        "200 random maps and σ round trip; {} S elements emitted",
        s_count
    ))
}

fn jvdk_suite() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    for _ in 0..200 {
        let word = random_elem_word(&mut rng, 6, 5, 24);
        let map = word.compose();
        match jvdk_decompose(&map) {
            Ok(out) if out.compose() == map => {}
            Ok(_) => return fail(format!("{} does not recompose", format_map(&map))),
            Err(e) => return fail(format!("{} on {}", e, format_map(&map))),
        }
    }
    for text in ["u^2; v", "u; u*v", "u + v; 2*u + 2*v"] {
        if !matches!(jvdk_decompose(&plane(text)), Err(Error::NotAutomorphism(_))) {
            return fail(format!("{} was not rejected", text));
        }
    }
    pass("200 random words recompose; 3 non-automorphisms rejected")
}

fn random_bytes(rng: &mut ChaCha8Rng) -> Vec<u8> {
    let len = rng.gen_range(0..48);
    let alphabet = b"xyzuvw0123456789+-*/^(); \n";
    (0..len)
        .map(|_| {
            if rng.gen_bool(0.5) {
                alphabet[rng.gen_range(0..alphabet.len())]
            } else {
                rng.gen()
            }
        })
        .collect()
}

fn parser() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..500 {
        let arity = if rng.gen_bool(0.5) {
            Arity::Plane
        } else {
            Arity::Space
        };
        let p = random_poly(&mut rng, arity, 6, 8);
        if parse_poly(&format_poly(&p), arity).ok().as_ref() != Some(&p) {
            return fail(format!("round trip of {}", format_poly(&p)));
        }
    }
    for _ in 0..500 {
        let arity = if rng.gen_bool(0.5) {
            Arity::Plane
        } else {
            Arity::Space
        };
        let images = (0..arity.len())
            .map(|_| random_poly(&mut rng, arity, 5, 6))
            .collect();
        let m = PolyMap::new(images).unwrap();
        if parse_map(&format_map(&m)).ok().as_ref() != Some(&m) {
            return fail(format!("round trip of {}", format_map(&m)));
        }
    }
    let hook = panic::take_hook();
    panic::set_hook(Box::new(|_| {}));
    let mut errors = 0;
    let mut crash = None;
    for _ in 0..100_000 {
        let bytes = random_bytes(&mut rng);
        let text = String::from_utf8_lossy(&bytes).into_owned();
        match panic::catch_unwind(AssertUnwindSafe(|| parse_map(&text))) {
            Ok(Ok(_)) => {}
            Ok(Err(e)) => {
                errors += 1;
                if e.span.end > text.len() || e.span.start > e.span.end {
                    crash = Some(format!("bad span {} for {:?}", e.span, text));
                    break;
                }
            }
            Err(_) => {
                crash = Some(format!("panic on {:?}", text));
                break;
            }
        }
    }
    panic::set_hook(hook);
    match crash {
        Some(c) => fail(c),
        None => pass(format!(
            "1000 round trips; 100000 fuzz inputs, {} structured errors",
            errors
        )),
    }
}

type Criterion = (&'static str, Option<Duration>, fn() -> Outcome);

fn main() -> ExitCode {
    let criteria: [Criterion; 7] = [
        ("1 Nagata end-to-end", Some(Duration::from_secs(1)), nagata),
        (
            "2 correction closed form",
            Some(Duration::from_secs(5)),
            correction_closed_form,
        ),
        (
            "3 wildness checker",
            Some(Duration::from_secs(5)),
            wild_checker,
        ),
        (
            "4 lift/restrict round trips",
            Some(Duration::from_secs(30)),
            lift_round_trips,
        ),
        (
            "5 master decomposition",
            Some(Duration::from_secs(60)),
            master_decomposition,
        ),
        ("6 JvdK suite", Some(Duration::from_secs(10)), jvdk_suite),
        ("7 parser", None, parser),
    ];
    let mut failed = 0;
    for (name, budget, run) in criteria {
        let start = Instant::now();
        let outcome = panic::catch_unwind(run).unwrap_or_else(|e| {
            let msg = e
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            fail(format!("panicked: {}", msg))
        });
        let elapsed = start.elapsed();
        let in_time = budget.is_none_or(|b| elapsed <= b);
        let ok = outcome.pass && in_time;
        failed += !ok as usize;
        println!(
            "criterion {}: {} ({:.2?}{}) {}{}",
            name,
            if ok { "PASS" } else { "FAIL" },
            elapsed,
            budget
                .map(|b| format!(", limit {:?}", b))
                .unwrap_or_default(),
            outcome.detail,
            if in_time { "" } else { " [over time limit]" }
        );
    }
    if failed == 0 {
        println!("acceptance: all criteria pass");
        ExitCode::SUCCESS
    } else {
        println!("acceptance: {} criterion(s) failed", failed);
        ExitCode::FAILURE
    }
}

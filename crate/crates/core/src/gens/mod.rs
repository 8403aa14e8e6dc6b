//! Generators of the group of graded automorphisms for gradings that admit
//! graded wild automorphisms.
//!
//! On the plane side there are three families of graded elementary maps:
//!
//! * `D`: `(u, λv + μu^k)` with `k·a ≡ b (mod c)`;
//! * `U`: `(λu + f(v), v)` with every monomial `v^q` of `f` satisfying
//!   `b·q ≥ a` (these lift);
//! * `W`: `(λu + f(v), v)` with every `v^q` satisfying `b·q < a` (these do
//!   not lift unless `f = 0`).
//!
//! For `τ ∈ W` and `θ ∈ D` the conjugate `τ⁻¹∘θ∘τ` need not lift, but a
//! correction `s ∈ W` makes `s∘τ⁻¹∘θ∘τ` liftable. Lifts of `U`, of these
//! corrected conjugates, and the torus `(x, y, λz)` generate everything.

mod decompose;
mod json;

use std::fmt;

use num_traits::{One, Zero};

use crate::endo::{compose, ElemAuto, PolyMap};
use crate::error::{Error, Result};
use crate::grading::NormalizedGrading;
use crate::lift::{lift, lift_obstruction, EMember};
use crate::poly::{Arity, DegreeSpan, Monomial, Poly, Rational};

pub use decompose::{decompose_graded, recompose, GenWord, Generator};
pub use json::{word_from_json, word_to_json};

/// `(u, λv + μu^k)`. With `μ = 0` the map is diagonal and `k` carries no
/// information; it is kept at 1.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DElement {
    lambda: Rational,
    mu: Rational,
    k: u32,
}

impl DElement {
    pub fn new(lambda: Rational, mu: Rational, k: u32, g: &NormalizedGrading) -> Result<Self> {
        let d = DElement { lambda, mu, k };
        d.check(g)?;
        Ok(d)
    }

    fn check(&self, g: &NormalizedGrading) -> Result<()> {
        if self.lambda.is_zero() {
            return Err(Error::usage("D element needs nonzero λ"));
        }
        if self.k == 0 {
            return Err(Error::usage("D element needs k >= 1"));
        }
        if !self.mu.is_zero() && (self.k as i64 * g.a() - g.b()).rem_euclid(g.c()) != 0 {
            return Err(Error::usage(format!(
                "D element needs k·a ≡ b (mod c), got k={} for {}",
                self.k, g
            )));
        }
        Ok(())
    }

    pub fn lambda(&self) -> &Rational {
        &self.lambda
    }
    pub fn mu(&self) -> &Rational {
        &self.mu
    }
    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn to_elem(&self) -> ElemAuto {
        let shift = Poly::monomial(Monomial::var_pow(Arity::Plane, 0, self.k), self.mu.clone());
        ElemAuto::new(1, self.lambda.clone(), shift).expect("valid D element")
    }

    pub fn to_map(&self) -> PolyMap {
        self.to_elem().to_map()
    }
}

/// `(λu + f(v), v)`, the shape shared by `U` and `W` elements.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FirstType {
    lambda: Rational,
    f: Poly,
}

impl FirstType {
    pub fn new(lambda: Rational, f: Poly) -> Result<Self> {
        if lambda.is_zero() {
            return Err(Error::usage("first-type map needs nonzero λ"));
        }
        if f.arity() != Arity::Plane || f.involves(0) {
            return Err(Error::usage("first-type shift must be a polynomial in v"));
        }
        Ok(FirstType { lambda, f })
    }

    pub fn identity() -> Self {
        FirstType {
            lambda: Rational::one(),
            f: Poly::zero(Arity::Plane),
        }
    }

    pub fn lambda(&self) -> &Rational {
        &self.lambda
    }

    pub fn f(&self) -> &Poly {
        &self.f
    }

    pub fn is_identity(&self) -> bool {
        self.lambda.is_one() && self.f.is_zero()
    }

    pub fn to_elem(&self) -> ElemAuto {
        ElemAuto::new(0, self.lambda.clone(), self.f.clone()).expect("valid first-type map")
    }

    pub fn to_map(&self) -> PolyMap {
        self.to_elem().to_map()
    }

    /// `self ∘ inner`.
    pub fn then_after(&self, inner: &FirstType) -> FirstType {
        FirstType {
            lambda: &self.lambda * &inner.lambda,
            f: &inner.f.scale(&self.lambda) + &self.f,
        }
    }

    pub fn inverse(&self) -> FirstType {
        let inv = self.lambda.recip();
        FirstType {
            f: self.f.scale(&-&inv),
            lambda: inv,
        }
    }

    fn is_graded(&self, g: &NormalizedGrading) -> bool {
        self.f
            .terms()
            .all(|(m, _)| (m.exponent(1) as i64 * g.b() - g.a()).rem_euclid(g.c()) == 0)
    }

    fn span(&self) -> DegreeSpan {
        self.f
            .univariate_degree_span()
            .expect("shift is univariate in v")
    }

    /// Graded with every monomial `v^q` of `f` satisfying `b·q ≥ a`.
    pub fn is_u_member(&self, g: &NormalizedGrading) -> bool {
        self.is_graded(g) && self.span().low_at_least(g.a(), g.b())
    }

    /// Graded with every monomial `v^q` of `f` satisfying `b·q < a`.
    pub fn is_w_member(&self, g: &NormalizedGrading) -> bool {
        self.is_graded(g) && self.span().high_below(g.a(), g.b())
    }
}

impl fmt::Display for FirstType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_map())
    }
}

macro_rules! first_type_member {
    ($name:ident, $pred:ident, $label:literal) => {
        #[derive(Clone, Debug, PartialEq, Eq, Hash)]
        pub struct $name(FirstType);

        impl $name {
            pub fn new(lambda: Rational, f: Poly, g: &NormalizedGrading) -> Result<Self> {
                Self::from_first_type(FirstType::new(lambda, f)?, g)
            }

            pub fn from_first_type(ft: FirstType, g: &NormalizedGrading) -> Result<Self> {
                if !ft.$pred(g) {
                    return Err(Error::usage(format!(
                        concat!("{} is not a ", $label, " element under {}"),
                        ft, g
                    )));
                }
                Ok($name(ft))
            }

            pub fn identity() -> Self {
                $name(FirstType::identity())
            }

            pub fn as_first_type(&self) -> &FirstType {
                &self.0
            }

            pub fn lambda(&self) -> &Rational {
                self.0.lambda()
            }

            pub fn f(&self) -> &Poly {
                self.0.f()
            }

            pub fn is_identity(&self) -> bool {
                self.0.is_identity()
            }

            pub fn to_map(&self) -> PolyMap {
                self.0.to_map()
            }
        }
    };
}

first_type_member!(UElement, is_u_member, "U");
first_type_member!(WElement, is_w_member, "W");

/// `s∘τ⁻¹∘θ∘τ` for `τ ∈ W`, `θ ∈ D` and the correction `s ∈ W`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SElement {
    tau: WElement,
    theta: DElement,
    s: WElement,
    tau_theta: WElement,
    plane: PolyMap,
    lifted: EMember,
}

impl SElement {
    /// Assembles an element from an explicit correction, checking that the
    /// composite lifts.
    pub fn from_parts(
        tau: WElement,
        theta: DElement,
        s: WElement,
        g: &NormalizedGrading,
    ) -> Result<Self> {
        theta.check(g)?;
        let tau_theta = WElement::from_first_type(s.0.then_after(&tau.0.inverse()), g)?;
        let plane = compose(
            &tau_theta.to_map(),
            &compose(&theta.to_map(), &tau.to_map())?,
        )?;
        if let Some(obstruction) = lift_obstruction(&plane, g)? {
            return Err(Error::usage(format!(
                "corrected conjugate {} does not lift: {}",
                plane, obstruction
            )));
        }
        let lifted = lift(&plane, g)?;
        Ok(SElement {
            tau,
            theta,
            s,
            tau_theta,
            plane,
            lifted,
        })
    }

    pub fn tau(&self) -> &WElement {
        &self.tau
    }
    pub fn theta(&self) -> &DElement {
        &self.theta
    }
    pub fn correction(&self) -> &WElement {
        &self.s
    }
    /// `s ∘ τ⁻¹`.
    pub fn tau_theta(&self) -> &WElement {
        &self.tau_theta
    }
    /// The plane automorphism `τ_θ∘θ∘τ`.
    pub fn plane_map(&self) -> &PolyMap {
        &self.plane
    }
    pub fn lifted(&self) -> &EMember {
        &self.lifted
    }
}

/// A factor of a graded elementary word, sorted by family.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Classified {
    /// Second-type factor as `D` elements, outermost first.
    D(Vec<DElement>),
    /// First-type factor `(λu + f(v), v)`, still to be split into `W` and `U`.
    FirstType(FirstType),
}

/// Sorts a graded origin-fixing elementary plane map into `D` or first type.
pub fn classify_elementary(xi: &ElemAuto, g: &NormalizedGrading) -> Result<Classified> {
    if xi.arity() != Arity::Plane {
        return Err(Error::usage("classification applies to plane factors"));
    }
    if !xi.fixes_origin() {
        return Err(Error::usage(format!("factor {:?} moves the origin", xi)));
    }
    if !xi.is_graded_cyclic(&g.cyclic())? {
        return Err(Error::usage(format!(
            "factor {:?} is not graded under {}",
            xi,
            g.cyclic()
        )));
    }
    if xi.axis() == 0 {
        return Ok(Classified::FirstType(FirstType::new(
            xi.scale().clone(),
            xi.shift().clone(),
        )?));
    }
    let monomials: Vec<(u32, Rational)> = xi
        .shift()
        .terms()
        .map(|(m, c)| (m.exponent(0), c.clone()))
        .collect();
    if monomials.is_empty() {
        return Ok(Classified::D(vec![DElement::new(
            xi.scale().clone(),
            Rational::zero(),
            1,
            g,
        )?]));
    }
    let last = monomials.len() - 1;
    let ds = monomials
        .into_iter()
        .enumerate()
        .map(|(i, (k, mu))| {
            let lambda = if i == last {
                xi.scale().clone()
            } else {
                Rational::one()
            };
            DElement::new(lambda, mu, k, g)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Classified::D(ds))
}

/// `(λu + f(v), v) = τ ∘ τ₁` with `τ = (u + f_low, v) ∈ W` and
/// `τ₁ = (λu + f_high, v) ∈ U`.
pub fn split_first_type(ft: &FirstType, g: &NormalizedGrading) -> Result<(WElement, UElement)> {
    let low = |m: &Monomial| g.b() * (m.exponent(1) as i64) < g.a();
    let f_low = ft.f.filter_terms(|m, _| low(m));
    let f_high = ft.f.filter_terms(|m, _| !low(m));
    let tau = WElement::new(Rational::one(), f_low, g)?;
    let tau1 = UElement::new(ft.lambda.clone(), f_high, g)?;
    debug_assert_eq!(tau.0.then_after(&tau1.0), *ft);
    Ok((tau, tau1))
}

fn ceil_div(a: i64, b: i64) -> i64 {
    (a + b - 1) / b
}

/// The correction `s_{τ,θ} ∈ W`: repeatedly removes the lowest pure
/// monomial `ν·v^m` with `b·m < a` from the first image of `τ⁻¹∘θ∘τ` by
/// composing with `(u - ν/λ^m · v^m, v)`, `λ` the coefficient of `v` in the
/// second image.
pub fn correction(tau: &WElement, theta: &DElement, g: &NormalizedGrading) -> Result<WElement> {
    theta.check(g)?;
    let mut psi = compose(
        &compose(&tau.0.inverse().to_map(), &theta.to_map())?,
        &tau.to_map(),
    )?;
    let v_mono = Monomial::var_pow(Arity::Plane, 1, 1);
    let bound = ceil_div(g.a(), g.b());
    let mut total = FirstType::identity();
    let mut previous: Option<u32> = None;
    let mut steps = 0;
    loop {
        let offending = psi
            .image(0)
            .terms()
            .filter_map(|(m, c)| m.pure_power_of(1).map(|q| (q, c.clone())))
            .filter(|(q, _)| g.b() * (*q as i64) < g.a())
            .min_by_key(|(q, _)| *q);
        let Some((m1, nu)) = offending else { break };

        if previous.is_some_and(|p| m1 <= p) {
            return Err(Error::internal("offending degree did not increase"));
        }
        steps += 1;
        if steps > bound {
            return Err(Error::internal("correction exceeded its iteration bound"));
        }
        if !psi.image(1).constant_term().is_zero() {
            return Err(Error::internal("conjugate moves the origin"));
        }
        let lambda = psi.image(1).coefficient_of(&v_mono);
        if lambda.is_zero() {
            return Err(Error::internal(
                "coefficient of v in the second image vanishes",
            ));
        }
        let coef = nu / num_traits::pow(lambda, m1 as usize);
        let step = FirstType::new(
            Rational::one(),
            Poly::monomial(Monomial::var_pow(Arity::Plane, 1, m1), -coef),
        )?;
        if !step.is_w_member(g) {
            return Err(Error::internal(format!(
                "correction step {} is not graded",
                step
            )));
        }
        psi = compose(&step.to_map(), &psi)?;
        total = step.then_after(&total);
        previous = Some(m1);
    }
    WElement::from_first_type(total, g)
}

/// Builds the generator `τ_θ∘θ∘τ` with its canonical correction.
pub fn make_s_element(tau: &WElement, theta: &DElement, g: &NormalizedGrading) -> Result<SElement> {
    let s = correction(tau, theta, g)?;
    SElement::from_parts(tau.clone(), theta.clone(), s, g).map_err(|e| match e {
        Error::Usage(msg) => Error::internal(msg),
        other => other,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::{parse_map, parse_poly};
    use crate::poly::{int, rat};

    fn g311() -> NormalizedGrading {
        NormalizedGrading::new(3, 1, 1).unwrap()
    }

    fn vpoly(s: &str) -> Poly {
        parse_poly(s, Arity::Plane).unwrap()
    }

    fn w(lambda: i64, f: &str) -> WElement {
        WElement::new(int(lambda), vpoly(f), &g311()).unwrap()
    }

    fn theta() -> DElement {
        DElement::new(int(1), int(1), 1, &g311()).unwrap()
    }

    #[test]
    fn classify_examples() {
        let g = g311();
        let xi = ElemAuto::new(1, int(1), vpoly("u")).unwrap();
        assert_eq!(
            classify_elementary(&xi, &g).unwrap(),
            Classified::D(vec![theta()])
        );

        let xi = ElemAuto::new(0, int(1), vpoly("v^2")).unwrap();
        assert_eq!(
            classify_elementary(&xi, &g).unwrap(),
            Classified::FirstType(FirstType::new(int(1), vpoly("v^2")).unwrap())
        );

        let xi = ElemAuto::new(1, int(2), vpoly("u + u^2")).unwrap();
        let Classified::D(ds) = classify_elementary(&xi, &g).unwrap() else {
            panic!()
        };
        assert_eq!(
            ds,
            vec![
                DElement::new(int(1), int(1), 1, &g).unwrap(),
                DElement::new(int(2), int(1), 2, &g).unwrap()
            ]
        );
        let maps: Vec<PolyMap> = ds.iter().map(DElement::to_map).collect();
        assert_eq!(
            crate::endo::compose_all(Arity::Plane, &maps).unwrap(),
            xi.to_map()
        );
    }

    #[test]
    fn classify_rejects_origin_moving_or_ungraded() {
        let xi = ElemAuto::new(0, int(1), vpoly("1")).unwrap();
        assert!(classify_elementary(&xi, &g311()).is_err());
        let g = NormalizedGrading::new(8, 3, 2).unwrap();
        let xi = ElemAuto::new(0, int(1), vpoly("v^3")).unwrap();
        assert!(classify_elementary(&xi, &g).is_err());
    }

    #[test]
    fn split_first_type_examples() {
        let g = g311();
        let (tau, tau1) =
            split_first_type(&FirstType::new(int(1), vpoly("v^2")).unwrap(), &g).unwrap();
        assert_eq!(tau, w(1, "v^2"));
        assert!(tau1.is_identity());

        let ft = FirstType::new(int(2), vpoly("v^2 + v^4")).unwrap();
        let (tau, tau1) = split_first_type(&ft, &g).unwrap();
        assert_eq!(tau.to_map(), parse_map("u + v^2; v").unwrap());
        assert_eq!(tau1.to_map(), parse_map("2*u + v^4; v").unwrap());
        assert_eq!(compose(&tau.to_map(), &tau1.to_map()).unwrap(), ft.to_map());

        let (tau, tau1) = split_first_type(
            &FirstType::new(int(3), Poly::zero(Arity::Plane)).unwrap(),
            &g,
        )
        .unwrap();
        assert!(tau.is_identity());
        assert_eq!(tau1.to_map(), parse_map("3*u; v").unwrap());
    }

    #[test]
    fn boundary_degree_belongs_to_u() {
        // a = 4, b = 2: v^2 sits exactly at a/b
        let g = NormalizedGrading::new(4, 2, 1).unwrap();
        let ft = FirstType::new(int(1), vpoly("v^2")).unwrap();
        assert!(ft.is_u_member(&g));
        assert!(!ft.is_w_member(&g));
    }

    #[test]
    fn nagata_needs_no_correction() {
        let s = correction(&w(1, "v^2"), &theta(), &g311()).unwrap();
        assert!(s.is_identity());
    }

    #[test]
    fn scaled_tau_correction_from_direct_expansion() {
        // τ = (2u + v², v), θ = (u, v + u): the first image of τ⁻¹∘θ∘τ is
        // (2u + v² − (2u + v + v²)²)/2, whose pure-v part is −v³ − v⁴/2.
        let tau = w(2, "v^2");
        let psi = compose(
            &compose(&parse_map("1/2*u - 1/2*v^2; v").unwrap(), &theta().to_map()).unwrap(),
            &tau.to_map(),
        )
        .unwrap();
        let pure_v = psi.image(0).filter_terms(|m, _| m.exponent(0) == 0);
        assert_eq!(pure_v, vpoly("-v^3 - 1/2*v^4"));
        assert!(correction(&tau, &theta(), &g311()).unwrap().is_identity());
    }

    #[test]
    fn correction_removes_v_squared() {
        // θ = (u, 2v + u): coefficient of v² in the conjugate is (1 − 4)/1 = −3,
        // removed by s = (u + 3/4·v², v)
        let g = g311();
        let theta = DElement::new(int(2), int(1), 1, &g).unwrap();
        let s = correction(&w(1, "v^2"), &theta, &g).unwrap();
        assert_eq!(s.to_map(), parse_map("u + 3/4*v^2; v").unwrap());
        let el = make_s_element(&w(1, "v^2"), &theta, &g).unwrap();
        assert!(crate::lift::liftable(el.plane_map(), &g).unwrap());
        assert_eq!(*el.correction().lambda(), int(1));
        assert_eq!(
            el.tau_theta()
                .f()
                .coefficient_of(&Monomial::var_pow(Arity::Plane, 1, 2)),
            rat(-1, 4)
        );
    }

    #[test]
    fn identity_tau_gives_theta() {
        let g = g311();
        let el = make_s_element(&WElement::identity(), &theta(), &g).unwrap();
        assert!(el.correction().is_identity());
        assert_eq!(*el.plane_map(), theta().to_map());
    }

    #[test]
    fn nagata_s_element_lifts_to_sigma() {
        let el = make_s_element(&w(1, "v^2"), &theta(), &g311()).unwrap();
        let sigma =
            parse_map("x - x^2*z^3 - y^4*z - 2*x*y*z - 2*y^3 - 2*x*y^2*z^2; y + x*z^2 + y^2*z; z")
                .unwrap();
        assert_eq!(*el.lifted().map(), sigma);
    }

    #[test]
    fn d_element_congruence() {
        let g = NormalizedGrading::new(5, 3, 2).unwrap();
        // k·5 ≡ 3 (mod 2) needs k odd
        assert!(DElement::new(int(1), int(1), 1, &g).is_ok());
        assert!(DElement::new(int(1), int(1), 2, &g).is_err());
        assert!(DElement::new(int(1), int(0), 2, &g).is_ok());
        assert!(DElement::new(int(0), int(1), 1, &g).is_err());
    }
}

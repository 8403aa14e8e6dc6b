//! Passing between graded automorphisms of space fixing `z` and graded
//! automorphisms of the plane `z = 1`.
//!
//! Restriction substitutes `z = 1`. Its inverse puts back the unique power
//! of `z` that makes each monomial homogeneous of the right degree: in the
//! first image `u^p v^q` becomes `x^p y^q z^((pa + qb - a)/c)`, in the
//! second `x^p y^q z^((pa + qb - b)/c)`. A plane map lifts exactly when all
//! these exponents are nonnegative.

use std::fmt;

use num_traits::{One, Zero};

use crate::endo::{compose, PolyMap};
use crate::error::{Error, Result};
use crate::grading::NormalizedGrading;
use crate::poly::{Arity, Monomial, Poly, Rational};

/// The torus element `(x, y, λz)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TorusFactor {
    lambda: Rational,
}

impl TorusFactor {
    pub fn new(lambda: Rational) -> Result<Self> {
        if lambda.is_zero() {
            return Err(Error::usage("torus scale must be nonzero"));
        }
        Ok(TorusFactor { lambda })
    }

    pub fn lambda(&self) -> &Rational {
        &self.lambda
    }

    pub fn to_map(&self) -> PolyMap {
        PolyMap::diagonal(&[Rational::one(), Rational::one(), self.lambda.clone()])
            .expect("three scales")
    }
}

/// A graded automorphism of space with third image `z`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EMember {
    map: PolyMap,
    grading: NormalizedGrading,
}

impl EMember {
    pub fn new(map: PolyMap, grading: NormalizedGrading) -> Result<Self> {
        if map.arity() != Arity::Space {
            return Err(Error::usage("E members are maps of x, y, z"));
        }
        if *map.image(2) != Poly::var(Arity::Space, 2) {
            return Err(Error::usage(format!("third image of {} is not z", map)));
        }
        if !map.is_graded(&grading.weights())? {
            return Err(Error::NotGraded(format!(
                "{} is not graded under {}",
                map, grading
            )));
        }
        Ok(EMember { map, grading })
    }

    pub fn map(&self) -> &PolyMap {
        &self.map
    }

    pub fn into_map(self) -> PolyMap {
        self.map
    }

    pub fn grading(&self) -> &NormalizedGrading {
        &self.grading
    }
}

/// Splits `φ = φ_E ∘ (x, y, λz)` with `φ_E` fixing `z`.
pub fn split_torus(phi: &PolyMap, g: &NormalizedGrading) -> Result<(EMember, TorusFactor)> {
    if phi.arity() != Arity::Space {
        return Err(Error::usage("torus split applies to maps of x, y, z"));
    }
    if !phi.is_graded(&g.weights())? {
        return Err(Error::NotGraded(format!(
            "{} is not graded under {}",
            phi, g
        )));
    }
    let z = Monomial::var_pow(Arity::Space, 2, 1);
    let third = phi.image(2);
    let lambda = third.coefficient_of(&z);
    if lambda.is_zero() || *third != Poly::monomial(z, lambda.clone()) {
        return Err(Error::NotSplittable(format!(
            "third image {} is not a nonzero multiple of z",
            third
        )));
    }
    let torus = TorusFactor::new(lambda)?;
    let inverse = TorusFactor::new(torus.lambda.recip())?;
    let e_part = compose(phi, &inverse.to_map())?;
    if compose(&e_part, &torus.to_map())? != *phi {
        return Err(Error::internal("torus split does not recompose"));
    }
    Ok((EMember::new(e_part, *g)?, torus))
}

/// Restriction to the plane `z = 1`: `(f, g, z) ↦ (f(u, v, 1), g(u, v, 1))`.
pub fn restrict(phi: &EMember) -> PolyMap {
    restrict_map(phi.map()).expect("E member has three components")
}

pub(crate) fn restrict_map(map: &PolyMap) -> Result<PolyMap> {
    let plane = [
        Poly::var(Arity::Plane, 0),
        Poly::var(Arity::Plane, 1),
        Poly::one(Arity::Plane),
    ];
    let images = map.images()[..2]
        .iter()
        .map(|p| p.substitute(&plane))
        .collect::<Result<Vec<_>>>()?;
    PolyMap::new(images)
}

/// Why a plane map has no graded preimage.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LiftObstruction {
    /// The first image contains `v^q` with `b·q < a`.
    LowPureMonomial { q: u32, b: i64, a: i64 },
    /// The second image has a nonzero constant term.
    Intercept(Rational),
}

impl fmt::Display for LiftObstruction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LiftObstruction::LowPureMonomial { q, b, a } => write!(
                f,
                "monomial {} with b*q={} < a={}",
                crate::expr::format_monomial(&Monomial::var_pow(Arity::Plane, 1, *q)),
                b * *q as i64,
                a
            ),
            LiftObstruction::Intercept(c) => {
                write!(
                    f,
                    "second image has nonzero intercept {}",
                    crate::expr::format_rational(c)
                )
            }
        }
    }
}

fn check_plane_graded(phi: &PolyMap, g: &NormalizedGrading) -> Result<()> {
    if phi.arity() != Arity::Plane {
        return Err(Error::usage("lifting applies to plane maps"));
    }
    if !phi.is_graded_cyclic(&g.cyclic())? {
        return Err(Error::usage(format!(
            "{} is not graded under {}",
            phi,
            g.cyclic()
        )));
    }
    Ok(())
}

/// The obstruction with smallest `q` (intercepts reported last), if any.
pub fn lift_obstruction(phi: &PolyMap, g: &NormalizedGrading) -> Result<Option<LiftObstruction>> {
    check_plane_graded(phi, g)?;
    let low = phi
        .image(0)
        .terms()
        .filter_map(|(m, _)| m.pure_power_of(1))
        .find(|&q| g.b() * (q as i64) < g.a());
    if let Some(q) = low {
        return Ok(Some(LiftObstruction::LowPureMonomial {
            q,
            b: g.b(),
            a: g.a(),
        }));
    }
    let intercept = phi.image(1).constant_term();
    Ok((!intercept.is_zero()).then_some(LiftObstruction::Intercept(intercept)))
}

/// Whether a graded plane map is the restriction of a graded space map.
pub fn liftable(phi: &PolyMap, g: &NormalizedGrading) -> Result<bool> {
    Ok(lift_obstruction(phi, g)?.is_none())
}

/// Homogenizes each image with powers of `z`, failing if any exponent is
/// negative or fractional. Does not consult [`liftable`].
pub fn rehomogenize(phi: &PolyMap, g: &NormalizedGrading) -> Option<PolyMap> {
    if phi.arity() != Arity::Plane {
        return None;
    }
    let targets = [g.a(), g.b()];
    let mut images = Vec::with_capacity(3);
    for (img, &target) in phi.images().iter().zip(&targets) {
        let mut terms = Vec::with_capacity(img.num_terms());
        for (m, coef) in img.terms() {
            let (p, q) = (m.exponent(0), m.exponent(1));
            let excess = p as i64 * g.a() + q as i64 * g.b() - target;
            if excess < 0 || excess % g.c() != 0 {
                return None;
            }
            let r = u32::try_from(excess / g.c()).ok()?;
            let mono = Monomial::new(Arity::Space, &[p, q, r]).expect("space monomial");
            terms.push((mono, coef.clone()));
        }
        images.push(Poly::from_terms(Arity::Space, terms).expect("space terms"));
    }
    images.push(Poly::var(Arity::Space, 2));
    PolyMap::new(images).ok()
}

/// The unique graded preimage under restriction.
pub fn lift(phi: &PolyMap, g: &NormalizedGrading) -> Result<EMember> {
    if let Some(obstruction) = lift_obstruction(phi, g)? {
        return Err(Error::NotLiftable(obstruction.to_string()));
    }
    let map = rehomogenize(phi, g).ok_or_else(|| {
        Error::internal(format!(
            "{} passes the lift test but does not rehomogenize",
            phi
        ))
    })?;
    let member = EMember::new(map, *g)
        .map_err(|e| Error::internal(format!("lift is not an E member: {}", e)))?;
    if restrict(&member) != *phi {
        return Err(Error::internal("lift does not restrict back"));
    }
    Ok(member)
}

//! Degree reduction of plane automorphisms into elementary factors.
//!
//! While the map is nonlinear, the component of larger degree must have a
//! leading form that is a scalar multiple of a power of the other leading
//! form; subtracting that power lowers the degree. The remaining affine map
//! is split by Gaussian elimination.

use num_traits::{One, Zero};

use super::{ElemAuto, ElemSeq, PolyMap};
use crate::error::{Error, JvdkStage, Result};
use crate::grading::CyclicGrading;
use crate::poly::{Arity, Poly, Rational};

/// Writes a plane automorphism as a word of elementary maps.
pub fn jvdk_decompose(map: &PolyMap) -> Result<ElemSeq> {
    decompose(map, None)
}

/// As [`jvdk_decompose`], additionally asserting that every emitted factor
/// is graded when the input is.
pub fn jvdk_decompose_graded(map: &PolyMap, grading: &CyclicGrading) -> Result<ElemSeq> {
    if !map.is_graded_cyclic(grading)? {
        return Err(Error::NotGraded(format!(
            "{} is not graded under {}",
            map, grading
        )));
    }
    decompose(map, Some(grading))
}

fn degree(p: &Poly) -> Result<u64> {
    p.total_degree()
        .ok_or(Error::NotAutomorphism(JvdkStage::ConstantComponent))
}

fn decompose(map: &PolyMap, grading: Option<&CyclicGrading>) -> Result<ElemSeq> {
    if map.arity() != Arity::Plane {
        return Err(Error::usage("degree reduction applies to plane maps"));
    }
    let origin_fixing = map.fixes_origin();
    let mut images = map.images().to_vec();
    let mut factors = Vec::new();

    loop {
        let d = [degree(&images[0])?, degree(&images[1])?];
        if d[0] <= 1 && d[1] <= 1 {
            break;
        }
        let (hi, lo) = if d[0] >= d[1] { (0, 1) } else { (1, 0) };
        if d[lo] == 0 {
            return Err(Error::NotAutomorphism(JvdkStage::ConstantComponent));
        }
        if d[hi] % d[lo] != 0 {
            return Err(Error::NotAutomorphism(JvdkStage::NonDivisibleDegrees));
        }
        let k = u32::try_from(d[hi] / d[lo]).map_err(|_| Error::usage("degree too large"))?;

        let target = images[hi].leading_form();
        let power = images[lo].leading_form().pow(k);
        let (lead_m, lead_c) = power.leading_term().expect("nonzero power");
        let ratio = target.coefficient_of(lead_m) / lead_c;
        if ratio.is_zero() || target != power.scale(&ratio) {
            return Err(Error::NotAutomorphism(
                JvdkStage::LeadingFormsNotProportional,
            ));
        }

        let reduced = &images[hi] - &images[lo].pow(k).scale(&ratio);
        let before = d[0] + d[1];
        let after = d[lo] + reduced.total_degree().unwrap_or(0);
        if reduced.is_zero() || after >= before {
            return Err(Error::NotAutomorphism(if reduced.is_zero() {
                JvdkStage::ConstantComponent
            } else {
                JvdkStage::DegreeNotDecreasing
            }));
        }

        // images = ξ ∘ (reduced images) with ξ moving `hi` by ratio·x_lo^k
        let shift = Poly::var(Arity::Plane, lo).pow(k).scale(&ratio);
        factors.push(ElemAuto::new(hi, Rational::one(), shift)?);
        images[hi] = reduced;
    }

    let affine = affine_factors(&images[0], &images[1])?;
    if origin_fixing && affine.iter().any(|f| !f.fixes_origin()) {
        return Err(Error::internal(
            "translation emitted for an origin-fixing map",
        ));
    }
    factors.extend(affine);

    if let Some(g) = grading {
        for f in &factors {
            if !f.is_graded_cyclic(g)? {
                return Err(Error::internal(format!(
                    "degree reduction emitted non-graded factor {:?} under {}",
                    f, g
                )));
            }
        }
    }
    ElemSeq::new(Arity::Plane, factors)
}

fn lin_coeffs(p: &Poly) -> [Rational; 3] {
    let m = |e: [u32; 2]| crate::poly::Monomial::new(Arity::Plane, &e).expect("plane monomial");
    [
        p.coefficient_of(&m([1, 0])),
        p.coefficient_of(&m([0, 1])),
        p.constant_term(),
    ]
}

fn elem(axis: usize, scale: Rational, shift: Poly) -> Result<ElemAuto> {
    ElemAuto::new(axis, scale, shift)
}

/// Elementary factors of the map `(αu + βv + e0, γu + δv + e1)`.
fn affine_factors(f: &Poly, g: &Poly) -> Result<Vec<ElemAuto>> {
    let [alpha, beta, e0] = lin_coeffs(f);
    let [gamma, delta, e1] = lin_coeffs(g);
    let mut out = Vec::new();
    // translations act last
    out.push(elem(0, Rational::one(), Poly::constant(Arity::Plane, e0))?);
    out.push(elem(1, Rational::one(), Poly::constant(Arity::Plane, e1))?);
    out.extend(linear_factors([[alpha, beta], [gamma, delta]])?);
    Ok(out.into_iter().filter(|e| !e.is_identity()).collect())
}

/// Factors of the linear map whose `i`-th image is `m[i][0]·u + m[i][1]·v`.
pub(crate) fn linear_factors(m: [[Rational; 2]; 2]) -> Result<Vec<ElemAuto>> {
    let [[alpha, beta], [gamma, delta]] = m;
    let det = &alpha * &delta - &beta * &gamma;
    if det.is_zero() {
        return Err(Error::NotAutomorphism(JvdkStage::SingularLinearPart));
    }
    let u = Poly::var(Arity::Plane, 0);
    let v = Poly::var(Arity::Plane, 1);
    if !alpha.is_zero() {
        // (αu+βv, γu+δv) = (u, (det/α)v + (γ/α)u) ∘ (αu + βv, v)
        let outer = elem(1, &det / &alpha, u.scale(&(&gamma / &alpha)))?;
        let inner = elem(0, alpha, v.scale(&beta))?;
        return Ok(vec![outer, inner]);
    }
    // α = 0: pivot on v; (βv, γu+δv) = (βu, δu+γv) ∘ swap
    let mut out = linear_factors([[beta, Rational::zero()], [delta, gamma]])?;
    out.extend(swap_factors());
    Ok(out)
}

/// `(v, u)` as three shears and a sign change.
pub(crate) fn swap_factors() -> Vec<ElemAuto> {
    let u = Poly::var(Arity::Plane, 0);
    let v = Poly::var(Arity::Plane, 1);
    let one = Rational::one;
    vec![
        ElemAuto {
            axis: 1,
            scale: -one(),
            shift: Poly::zero(Arity::Plane),
        },
        ElemAuto {
            axis: 0,
            scale: one(),
            shift: v.clone(),
        },
        ElemAuto {
            axis: 1,
            scale: one(),
            shift: -&u,
        },
        ElemAuto {
            axis: 0,
            scale: one(),
            shift: v,
        },
    ]
}

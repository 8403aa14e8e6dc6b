//! Rewriting a graded, origin-fixing word so that no first-type factor has
//! a `v` term in its linear part.
//!
//! The word is scanned from the outermost factor inwards while a pending
//! linear map `P` is carried along. Each factor `ξ` is split as `N ∘ L` with
//! `L` its linear part and `N` a shear with no linear terms. The product
//! `P ∘ N` is rewritten as `ζ₂ ∘ N' ∘ ζ₀` where `ζ₂` fixes the line `v = 0`
//! direction of `u` (its `u`-image is `λu`), `N'` is a conjugate shear and
//! `ζ₀` is linear; `ζ₂` and `N'` are emitted and `ζ₀ ∘ L` becomes the new
//! pending map. Shears of the first type are conjugated by upper triangular
//! maps, shears of the second type by lower triangular ones, with a swap of
//! coordinates when the pending map has the wrong shape.

use num_traits::{One, Zero};

use super::{compose, ElemAuto, ElemSeq, PolyMap};
use crate::error::{Error, Result};
use crate::grading::CyclicGrading;
use crate::poly::{Arity, Monomial, Poly, Rational};

type Mat = [[Rational; 2]; 2];

fn identity() -> Mat {
    [
        [Rational::one(), Rational::zero()],
        [Rational::zero(), Rational::one()],
    ]
}

fn swap() -> Mat {
    [
        [Rational::zero(), Rational::one()],
        [Rational::one(), Rational::zero()],
    ]
}

fn mat_mul(a: &Mat, b: &Mat) -> Mat {
    let e = |i: usize, j: usize| &a[i][0] * &b[0][j] + &a[i][1] * &b[1][j];
    [[e(0, 0), e(0, 1)], [e(1, 0), e(1, 1)]]
}

fn mat_inv(a: &Mat) -> Mat {
    let det = &a[0][0] * &a[1][1] - &a[0][1] * &a[1][0];
    let inv = det.recip();
    [
        [&a[1][1] * &inv, -&a[0][1] * &inv],
        [-&a[1][0] * &inv, &a[0][0] * &inv],
    ]
}

fn mat_map(m: &Mat) -> PolyMap {
    let u = Poly::var(Arity::Plane, 0);
    let v = Poly::var(Arity::Plane, 1);
    let row = |r: &[Rational; 2]| &u.scale(&r[0]) + &v.scale(&r[1]);
    PolyMap::new(vec![row(&m[0]), row(&m[1])]).expect("plane map")
}

/// `P = X·Y` with `X` lower and `Y` unit upper triangular; needs `P[0][0] ≠ 0`.
fn lu(p: &Mat) -> (Mat, Mat) {
    let y01 = &p[0][1] / &p[0][0];
    let x11 = &p[1][1] - &p[1][0] * &y01;
    let x = [[p[0][0].clone(), Rational::zero()], [p[1][0].clone(), x11]];
    let y = [[Rational::one(), y01], [Rational::zero(), Rational::one()]];
    (x, y)
}

/// Elementary factors of a lower triangular map `(x00·u, x10·u + x11·v)`.
fn lower_factors(m: &Mat) -> Result<Vec<ElemAuto>> {
    if !m[0][1].is_zero() {
        return Err(Error::internal("expected a lower triangular linear map"));
    }
    let u = Poly::var(Arity::Plane, 0);
    let outer = ElemAuto::new(1, m[1][1].clone(), u.scale(&(&m[1][0] / &m[0][0])))?;
    let inner = ElemAuto::new(0, m[0][0].clone(), Poly::zero(Arity::Plane))?;
    Ok([outer, inner]
        .into_iter()
        .filter(|e| !e.is_identity())
        .collect())
}

fn v_mono() -> Monomial {
    Monomial::var_pow(Arity::Plane, 1, 1)
}

fn u_mono() -> Monomial {
    Monomial::var_pow(Arity::Plane, 0, 1)
}

/// `ξ = N ∘ L` with `L` the linear part of `ξ` and `N` a shear without
/// linear terms.
fn split_linear(xi: &ElemAuto) -> Result<(ElemAuto, Mat)> {
    let lam = xi.scale().clone();
    let shift = xi.shift();
    match xi.axis() {
        0 => {
            let beta = shift.coefficient_of(&v_mono());
            let rest = shift.filter_terms(|m, _| m.degree() >= 2);
            let n = ElemAuto::new(0, Rational::one(), rest)?;
            Ok((n, [[lam, beta], [Rational::zero(), Rational::one()]]))
        }
        _ => {
            let gamma = shift.coefficient_of(&u_mono());
            let rest = shift.filter_terms(|m, _| m.degree() >= 2);
            let n = ElemAuto::new(1, Rational::one(), rest)?;
            Ok((n, [[Rational::one(), Rational::zero()], [gamma, lam]]))
        }
    }
}

/// `M ∘ N ∘ M⁻¹`, which must again be a shear.
fn conjugate(m: &Mat, n: &ElemAuto) -> Result<ElemAuto> {
    let map = compose(&mat_map(m), &compose(&n.to_map(), &mat_map(&mat_inv(m)))?)?;
    ElemAuto::from_map(&map, n.axis())
        .filter(|e| e.scale().is_one())
        .ok_or_else(|| Error::internal(format!("conjugate of {:?} is not a shear", n)))
}

/// Whether every first-type factor has linear part `λ·u`.
pub fn has_normalized_linear_parts(seq: &ElemSeq) -> bool {
    seq.factors()
        .iter()
        .filter(|f| f.axis() == 0)
        .all(|f| f.shift().coefficient_of(&v_mono()).is_zero())
}

fn check_input(seq: &ElemSeq, grading: &CyclicGrading) -> Result<()> {
    if seq.arity() != Arity::Plane {
        return Err(Error::usage(
            "linear-part normalization applies to plane words",
        ));
    }
    for f in seq.factors() {
        if !f.fixes_origin() {
            return Err(Error::usage(format!("factor {:?} moves the origin", f)));
        }
        if !f.is_graded_cyclic(grading)? {
            return Err(Error::usage(format!(
                "factor {:?} is not graded under {}",
                f, grading
            )));
        }
    }
    let jacobian = seq
        .factors()
        .iter()
        .map(|f| split_linear(f).map(|(_, l)| l))
        .try_fold(identity(), |acc, l| l.map(|l| mat_mul(&acc, &l)))?;
    if !jacobian[0][1].is_zero() {
        return Err(Error::usage(
            "the composed map's first component has a v term in its linear part",
        ));
    }
    Ok(())
}

/// Rewrites a graded origin-fixing word without changing its composition so
/// that every first-type factor has linear part `λ_j·u`.
pub fn normalize_linear_parts(seq: &ElemSeq, grading: &CyclicGrading) -> Result<ElemSeq> {
    check_input(seq, grading)?;

    let mut pending = identity();
    let mut out: Vec<ElemAuto> = Vec::new();
    for xi in seq.factors() {
        let (shear, lin) = split_linear(xi)?;
        if shear.is_identity() {
            pending = mat_mul(&pending, &lin);
            continue;
        }
        let carried = if shear.axis() == 0 {
            if !pending[0][0].is_zero() {
                let (lower, upper) = lu(&pending);
                out.extend(lower_factors(&lower)?);
                out.push(conjugate(&upper, &shear)?);
                upper
            } else {
                // P∘N = (P·S) ∘ (S N S) ∘ S, with P·S lower triangular
                out.extend(lower_factors(&mat_mul(&pending, &swap()))?);
                out.push(conjugate(&swap(), &shear)?);
                swap()
            }
        } else if pending[0][1].is_zero() {
            out.extend(lower_factors(&pending)?);
            out.push(shear);
            identity()
        } else {
            // P·S = X·Y, so P∘N = X ∘ (YS N SY⁻¹) ∘ YS
            let (lower, upper) = lu(&mat_mul(&pending, &swap()));
            let ys = mat_mul(&upper, &swap());
            out.extend(lower_factors(&lower)?);
            out.push(conjugate(&ys, &shear)?);
            ys
        };
        pending = mat_mul(&carried, &lin);
    }
    if !pending[0][1].is_zero() {
        return Err(Error::internal(
            "residual linear map is not lower triangular",
        ));
    }
    out.extend(lower_factors(&pending)?);

    let result = ElemSeq::new(Arity::Plane, out)?.simplified();
    for f in result.factors() {
        if !f.fixes_origin() || !f.is_graded_cyclic(grading)? {
            return Err(Error::internal(format!(
                "normalization produced bad factor {:?}",
                f
            )));
        }
    }
    if !has_normalized_linear_parts(&result) {
        return Err(Error::internal(
            "normalization left a v term in a first-type factor",
        ));
    }
    if result.compose() != seq.compose() {
        return Err(Error::internal("normalization changed the composed map"));
    }
    Ok(result)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::parse_poly;
    use crate::grading::NormalizedGrading;
    use crate::poly::int;

    fn elem(axis: usize, scale: i64, shift: &str) -> ElemAuto {
        ElemAuto::new(axis, int(scale), parse_poly(shift, Arity::Plane).unwrap()).unwrap()
    }

    fn modulus_one() -> CyclicGrading {
        NormalizedGrading::new(3, 1, 1).unwrap().cyclic()
    }

    #[test]
    fn already_normalized_word_is_kept_equivalent() {
        let seq = ElemSeq::new(Arity::Plane, vec![elem(0, 2, "v^3"), elem(1, 1, "u")]).unwrap();
        assert!(has_normalized_linear_parts(&seq));
        let out = normalize_linear_parts(&seq, &modulus_one()).unwrap();
        assert_eq!(out.compose(), seq.compose());
        assert!(has_normalized_linear_parts(&out));
    }

    #[test]
    fn transfers_linear_v_term() {
        // (u, v+u) ∘ (u+2v, v) has first image u + 2v: not admissible
        let seq = ElemSeq::new(Arity::Plane, vec![elem(1, 1, "u"), elem(0, 1, "2*v")]).unwrap();
        assert!(normalize_linear_parts(&seq, &modulus_one()).is_err());

        // with an outer factor cancelling the v term the word is admissible
        let seq = ElemSeq::new(
            Arity::Plane,
            vec![
                elem(0, 1, "-2/3*v + v^3"),
                elem(1, 1, "u"),
                elem(0, 1, "2*v + v^2"),
            ],
        )
        .unwrap();
        let out = normalize_linear_parts(&seq, &modulus_one()).unwrap();
        assert_eq!(out.compose(), seq.compose());
        assert!(has_normalized_linear_parts(&out));
    }

    #[test]
    fn handles_swaps() {
        // first factor with zero u-coefficient forces the swap branches
        let seq = ElemSeq::new(
            Arity::Plane,
            vec![
                elem(1, -1, "u"),
                elem(0, 1, "v"),
                elem(1, 1, "-u + u^2"),
                elem(0, 1, "v^2"),
                elem(1, 1, "u^3"),
                elem(0, 1, "v"),
            ],
        )
        .unwrap();
        // make the total linear part admissible by appending its correction
        let lin = seq
            .factors()
            .iter()
            .map(|f| split_linear(f).unwrap().1)
            .fold(identity(), |a, l| mat_mul(&a, &l));
        let fix = crate::endo::jvdk::linear_factors(mat_inv(&lin)).unwrap();
        let mut factors = seq.factors().to_vec();
        factors.extend(fix);
        let seq = ElemSeq::new(Arity::Plane, factors).unwrap();
        let out = normalize_linear_parts(&seq, &modulus_one()).unwrap();
        assert_eq!(out.compose(), seq.compose());
        assert!(has_normalized_linear_parts(&out));
    }

    #[test]
    fn rejects_origin_moving_factor() {
        let seq = ElemSeq::new(Arity::Plane, vec![elem(0, 1, "1")]).unwrap();
        assert!(matches!(
            normalize_linear_parts(&seq, &modulus_one()),
            Err(Error::Usage(_))
        ));
    }
}

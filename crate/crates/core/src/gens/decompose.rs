use crate::endo::{compose, jvdk_decompose_graded, normalize_linear_parts, PolyMap};
use crate::error::{Error, Result};
use crate::grading::NormalizedGrading;
use crate::lift::{lift, restrict, split_torus, TorusFactor};
use crate::poly::Arity;

use super::{
    classify_elementary, make_s_element, split_first_type, Classified, FirstType, SElement,
    UElement,
};

#[derive(Clone, Debug, PartialEq, Eq)]
#[allow(clippy::large_enum_variant)]
pub enum Generator {
    Torus(TorusFactor),
    U(UElement),
    S(SElement),
}

impl Generator {
    /// The generator as a map of space.
    pub fn space_map(&self, g: &NormalizedGrading) -> Result<PolyMap> {
        match self {
            Generator::Torus(t) => Ok(t.to_map()),
            Generator::U(u) => {
                if !u.as_first_type().is_u_member(g) {
                    return Err(Error::usage(format!(
                        "{} is not a U element",
                        u.as_first_type()
                    )));
                }
                Ok(lift(&u.to_map(), g)?.into_map())
            }
            Generator::S(s) => Ok(s.lifted().map().clone()),
        }
    }
}

/// A word in the generators, leftmost applied last.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GenWord {
    pub factors: Vec<Generator>,
    pub grading: NormalizedGrading,
}

impl GenWord {
    pub fn s_elements(&self) -> impl Iterator<Item = &SElement> {
        self.factors.iter().filter_map(|f| match f {
            Generator::S(s) => Some(s),
            _ => None,
        })
    }
}

/// Composes the lifted generators of a word.
pub fn recompose(word: &GenWord) -> Result<PolyMap> {
    word.factors
        .iter()
        .try_fold(PolyMap::identity(Arity::Space), |acc, f| {
            compose(&acc, &f.space_map(&word.grading)?)
        })
}

/// Writes a graded automorphism of space as a word in lifted `U`
/// elements, lifted corrected conjugates `τ_θ∘θ∘τ`, and a torus factor.
///
/// The restriction to `z = 1` is reduced to elementary factors whose
/// first-type members have no linear `v` term. Scanning from the innermost
/// factor, the first-type factors seen so far are kept as one product
/// `τ∘τ₁` with `τ ∈ W`, `τ₁ ∈ U`. At a `D` factor `θ` the product is
/// rewritten as `θ∘τ∘τ₁ = (τ∘s⁻¹)∘(s∘τ⁻¹∘θ∘τ)∘τ₁`: `τ₁` and the corrected
/// conjugate are emitted and `τ∘s⁻¹` carries on.
pub fn decompose_graded(phi: &PolyMap, g: &NormalizedGrading) -> Result<GenWord> {
    if g.a() <= g.b() {
        return Err(Error::UnsupportedGrading(format!(
            "decomposition needs a > b, got {}",
            g
        )));
    }
    let (member, torus) = split_torus(phi, g)?;
    let plane = restrict(&member);
    let cyclic = g.cyclic();
    let word = jvdk_decompose_graded(&plane, &cyclic)?;
    let word = normalize_linear_parts(&word, &cyclic)?;

    let mut prefix = FirstType::identity();
    let mut inner_first: Vec<Generator> = Vec::new();
    for xi in word.factors().iter().rev() {
        match classify_elementary(xi, g)? {
            Classified::FirstType(ft) => prefix = ft.then_after(&prefix),
            Classified::D(thetas) => {
                for theta in thetas.iter().rev() {
                    let (tau, tau1) = split_first_type(&prefix, g)?;
                    if !tau1.is_identity() {
                        inner_first.push(Generator::U(tau1));
                    }
                    let s_el = make_s_element(&tau, theta, g)?;
                    prefix = tau
                        .as_first_type()
                        .then_after(&s_el.correction().as_first_type().inverse());
                    inner_first.push(Generator::S(s_el));
                }
            }
        }
    }
    let (tau, tau1) = split_first_type(&prefix, g)?;
    if !tau.is_identity() {
        return Err(Error::internal(format!(
            "remaining first-type prefix {} does not lift",
            prefix
        )));
    }
    if !tau1.is_identity() {
        inner_first.push(Generator::U(tau1));
    }

    let mut factors: Vec<Generator> = inner_first.into_iter().rev().collect();
    if !num_traits::One::is_one(torus.lambda()) {
        factors.push(Generator::Torus(torus));
    }
    let out = GenWord {
        factors,
        grading: *g,
    };
    if recompose(&out)? != *phi {
        return Err(Error::internal(
            "generator word does not recompose to the input",
        ));
    }
    Ok(out)
}

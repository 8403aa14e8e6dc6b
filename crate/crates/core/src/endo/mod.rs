//! Polynomial maps of the plane and of three-space.
//!
//! Maps are composed as maps of affine space: `compose(outer, inner)` has
//! components `outer_i(inner_1, ..., inner_n)`, so `inner` acts first.

mod jvdk;
mod normalize;

use std::fmt;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::grading::CyclicGrading;
use crate::poly::{Arity, Poly, Rational, WeightVector};

pub use jvdk::{jvdk_decompose, jvdk_decompose_graded};
pub use normalize::{has_normalized_linear_parts, normalize_linear_parts};

/// A polynomial endomorphism, one image per variable.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PolyMap {
    arity: Arity,
    images: Vec<Poly>,
}

impl PolyMap {
    pub fn new(images: Vec<Poly>) -> Result<Self> {
        let arity = Arity::from_len(images.len()).ok_or_else(|| {
            Error::usage(format!(
                "a map needs 2 or 3 components, got {}",
                images.len()
            ))
        })?;
        if images.iter().any(|p| p.arity() != arity) {
            return Err(Error::usage(
                "map components must be polynomials in the map's own variables",
            ));
        }
        Ok(PolyMap { arity, images })
    }

    pub fn identity(arity: Arity) -> Self {
        PolyMap {
            arity,
            images: (0..arity.len()).map(|i| Poly::var(arity, i)).collect(),
        }
    }

    /// The diagonal map scaling each variable.
    pub fn diagonal(scales: &[Rational]) -> Result<Self> {
        let arity = Arity::from_len(scales.len())
            .ok_or_else(|| Error::usage("diagonal map needs 2 or 3 scales"))?;
        Ok(PolyMap {
            arity,
            images: scales
                .iter()
                .enumerate()
                .map(|(i, s)| Poly::var(arity, i).scale(s))
                .collect(),
        })
    }

    pub fn arity(&self) -> Arity {
        self.arity
    }

    pub fn images(&self) -> &[Poly] {
        &self.images
    }

    pub fn image(&self, i: usize) -> &Poly {
        &self.images[i]
    }

    pub fn into_images(self) -> Vec<Poly> {
        self.images
    }

    pub fn is_identity(&self) -> bool {
        *self == PolyMap::identity(self.arity)
    }

    pub fn fixes_origin(&self) -> bool {
        self.images.iter().all(|p| p.constant_term().is_zero())
    }

    /// Applies the map to a rational point.
    pub fn eval(&self, point: &[Rational]) -> Result<Vec<Rational>> {
        self.images.iter().map(|p| p.eval(point)).collect()
    }

    /// Z-gradedness: image `i` is homogeneous of weight `w_i`.
    pub fn is_graded(&self, w: &WeightVector) -> Result<bool> {
        if w.arity() != self.arity {
            return Err(Error::usage("weight vector arity does not match map"));
        }
        for (img, &wi) in self.images.iter().zip(w.weights()) {
            match img.gamma_degree(w)? {
                Some(d) if d.admits(wi) => {}
                _ => return Ok(false),
            }
        }
        Ok(true)
    }

    /// `Z_c`-gradedness of a plane map: images of degree `(ā, b̄)`.
    pub fn is_graded_cyclic(&self, g: &CyclicGrading) -> Result<bool> {
        if self.arity != Arity::Plane {
            return Err(Error::usage("cyclic gradedness is defined for plane maps"));
        }
        for (i, img) in self.images.iter().enumerate() {
            if !g.is_homogeneous_of(img, g.var_degree(i))? {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

impl fmt::Display for PolyMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&crate::expr::format_map(self))
    }
}

impl fmt::Debug for PolyMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PolyMap({})", self)
    }
}

/// `outer ∘ inner`: component `i` is `outer_i` evaluated at `inner`.
pub fn compose(outer: &PolyMap, inner: &PolyMap) -> Result<PolyMap> {
    if outer.arity != inner.arity {
        return Err(Error::usage("cannot compose maps of different arity"));
    }
    let images = outer
        .images
        .iter()
        .map(|p| p.substitute(&inner.images))
        .collect::<Result<Vec<_>>>()?;
    Ok(PolyMap {
        arity: outer.arity,
        images,
    })
}

/// Composes a list of maps, leftmost outermost.
pub fn compose_all<'a, I>(arity: Arity, maps: I) -> Result<PolyMap>
where
    I: IntoIterator<Item = &'a PolyMap>,
    I::IntoIter: DoubleEndedIterator,
{
    maps.into_iter()
        .try_fold(PolyMap::identity(arity), |acc, m| compose(&acc, m))
}

/// An elementary map: variable `axis` goes to `scale·x_axis + shift`, all
/// other variables are fixed, and `shift` does not involve `x_axis`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ElemAuto {
    axis: usize,
    scale: Rational,
    shift: Poly,
}

impl ElemAuto {
    pub fn new(axis: usize, scale: Rational, shift: Poly) -> Result<Self> {
        if axis >= shift.arity().len() {
            return Err(Error::usage("elementary axis out of range"));
        }
        if scale.is_zero() {
            return Err(Error::usage("elementary scale must be nonzero"));
        }
        if shift.involves(axis) {
            return Err(Error::usage(
                "elementary shift must not involve its own variable",
            ));
        }
        Ok(ElemAuto { axis, scale, shift })
    }

    pub fn identity(arity: Arity, axis: usize) -> Self {
        ElemAuto {
            axis,
            scale: Rational::one(),
            shift: Poly::zero(arity),
        }
    }

    pub fn arity(&self) -> Arity {
        self.shift.arity()
    }
    pub fn axis(&self) -> usize {
        self.axis
    }
    pub fn scale(&self) -> &Rational {
        &self.scale
    }
    pub fn shift(&self) -> &Poly {
        &self.shift
    }

    pub fn is_identity(&self) -> bool {
        self.scale.is_one() && self.shift.is_zero()
    }

    pub fn is_linear(&self) -> bool {
        self.shift.total_degree().is_none_or(|d| d <= 1)
    }

    pub fn fixes_origin(&self) -> bool {
        self.shift.constant_term().is_zero()
    }

    /// The image of the moved variable.
    pub fn moved_image(&self) -> Poly {
        let arity = self.arity();
        &Poly::var(arity, self.axis).scale(&self.scale) + &self.shift
    }

    pub fn to_map(&self) -> PolyMap {
        let arity = self.arity();
        let images = (0..arity.len())
            .map(|i| {
                if i == self.axis {
                    self.moved_image()
                } else {
                    Poly::var(arity, i)
                }
            })
            .collect();
        PolyMap { arity, images }
    }

    /// Recognizes a map of elementary shape. The identity is reported on
    /// `preferred_axis`.
    pub fn from_map(map: &PolyMap, preferred_axis: usize) -> Option<ElemAuto> {
        let n = map.arity.len();
        let moved: Vec<usize> = (0..n)
            .filter(|&i| map.images[i] != Poly::var(map.arity, i))
            .collect();
        let axis = match moved.as_slice() {
            [] => return Some(ElemAuto::identity(map.arity, preferred_axis)),
            [i] => *i,
            _ => return None,
        };
        let img = &map.images[axis];
        let var = Poly::var(map.arity, axis);
        let scale = img.coefficient_of(&crate::poly::Monomial::var_pow(map.arity, axis, 1));
        let shift = img - &var.scale(&scale);
        ElemAuto::new(axis, scale, shift).ok()
    }

    /// The inverse elementary map: scale `1/λ`, shift `-F/λ`.
    pub fn inverse(&self) -> ElemAuto {
        let inv = self.scale.recip();
        ElemAuto {
            axis: self.axis,
            shift: self.shift.scale(&-&inv),
            scale: inv,
        }
    }

    /// Both factors moving the same axis: `self ∘ inner` as one elementary map.
    pub fn merge(&self, inner: &ElemAuto) -> Option<ElemAuto> {
        (self.axis == inner.axis && self.arity() == inner.arity()).then(|| ElemAuto {
            axis: self.axis,
            scale: &self.scale * &inner.scale,
            shift: &inner.shift.scale(&self.scale) + &self.shift,
        })
    }

    pub fn is_graded_cyclic(&self, g: &CyclicGrading) -> Result<bool> {
        self.to_map().is_graded_cyclic(g)
    }
}

impl fmt::Debug for ElemAuto {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Elem({})", self.to_map())
    }
}

/// Word of elementary maps, leftmost applied last: `[ξ_n, ..., ξ_1]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ElemSeq {
    arity: Arity,
    factors: Vec<ElemAuto>,
}

impl ElemSeq {
    pub fn new(arity: Arity, factors: Vec<ElemAuto>) -> Result<Self> {
        if factors.iter().any(|f| f.arity() != arity) {
            return Err(Error::usage("elementary factors must share one arity"));
        }
        Ok(ElemSeq { arity, factors })
    }

    pub fn arity(&self) -> Arity {
        self.arity
    }

    pub fn factors(&self) -> &[ElemAuto] {
        &self.factors
    }

    pub fn len(&self) -> usize {
        self.factors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn compose(&self) -> PolyMap {
        // substituting the small factor into the accumulated map is cheaper
        // than the other way round
        self.factors
            .iter()
            .fold(PolyMap::identity(self.arity), |acc, f| {
                compose(&acc, &f.to_map()).expect("factors share arity")
            })
    }

    /// Merges neighbouring factors on the same axis and drops identities.
    pub fn simplified(&self) -> ElemSeq {
        let mut out: Vec<ElemAuto> = Vec::with_capacity(self.factors.len());
        for f in &self.factors {
            if f.is_identity() {
                continue;
            }
            match out.last().and_then(|last| last.merge(f)) {
                Some(m) => {
                    out.pop();
                    if !m.is_identity() {
                        out.push(m);
                    }
                }
                None => out.push(f.clone()),
            }
        }
        ElemSeq {
            arity: self.arity,
            factors: out,
        }
    }
}

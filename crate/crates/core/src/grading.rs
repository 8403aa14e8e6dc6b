//! Integer gradings of `K[x, y, z]` with homogeneous variables.
//!
//! A raw grading assigns an integer degree to each variable. Gradings whose
//! degrees are mixed in sign are brought into the form `(a, b, -c)` with
//! `a, b, c > 0`, `gcd(a, b, c) = 1` and `a >= b`; restricting to the plane
//! `z = 1` leaves a `Z_c`-grading of `K[u, v]`.

use std::fmt;
use std::str::FromStr;

use num_integer::Integer;

use crate::endo::PolyMap;
use crate::error::{Error, Result};
use crate::poly::{Arity, GradedDegree, Poly, WeightVector};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct RawGrading {
    pub degrees: [i64; 3],
}

impl RawGrading {
    pub fn new(dx: i64, dy: i64, dz: i64) -> Self {
        RawGrading {
            degrees: [dx, dy, dz],
        }
    }

    pub fn weights(&self) -> WeightVector {
        WeightVector::new(&self.degrees).expect("three weights")
    }
}

impl FromStr for RawGrading {
    type Err = Error;

    /// Three whitespace-separated integers, e.g. `"3 1 -1"`.
    fn from_str(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.split_whitespace().collect();
        if parts.len() != 3 {
            return Err(Error::usage(format!(
                "grading needs three integers, got {:?}",
                s
            )));
        }
        let mut d = [0i64; 3];
        for (slot, p) in d.iter_mut().zip(&parts) {
            *slot = p
                .parse()
                .map_err(|_| Error::usage(format!("invalid grading degree {:?}", p)))?;
        }
        Ok(RawGrading { degrees: d })
    }
}

impl fmt::Display for RawGrading {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c] = self.degrees;
        write!(f, "{} {} {}", a, b, c)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum GradingClass {
    /// All degrees zero.
    Trivial,
    /// Some, but not all, degrees zero.
    HasZero,
    /// All degrees strictly positive or all strictly negative.
    SameSign,
    /// Nonzero degrees of both signs.
    Mixed,
}

impl fmt::Display for GradingClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            GradingClass::Trivial => "trivial",
            GradingClass::HasZero => "has-zero",
            GradingClass::SameSign => "same-sign",
            GradingClass::Mixed => "mixed",
        };
        f.write_str(s)
    }
}

pub fn classify(raw: &RawGrading) -> GradingClass {
    let d = raw.degrees;
    let zeros = d.iter().filter(|&&x| x == 0).count();
    match zeros {
        3 => GradingClass::Trivial,
        1 | 2 => GradingClass::HasZero,
        _ if d.iter().all(|&x| x > 0) || d.iter().all(|&x| x < 0) => GradingClass::SameSign,
        _ => GradingClass::Mixed,
    }
}

/// A mixed grading in the form `(a, b, -c)`, together with the bookkeeping
/// that maps it back to the raw input:
/// `raw[permutation[i]] == sign * scale * [a, b, -c][i]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct NormalizedGrading {
    a: i64,
    b: i64,
    c: i64,
    sign: i64,
    scale: i64,
    permutation: [usize; 3],
}

impl NormalizedGrading {
    /// Builds `(a, b, -c)` directly, with identity bookkeeping.
    pub fn new(a: i64, b: i64, c: i64) -> Result<Self> {
        if a <= 0 || b <= 0 || c <= 0 {
            return Err(Error::usage("a, b, c must be positive"));
        }
        if a < b {
            return Err(Error::usage("normalized grading needs a >= b"));
        }
        if a.gcd(&b).gcd(&c) != 1 {
            return Err(Error::usage("gcd(a, b, c) must be 1"));
        }
        Ok(NormalizedGrading {
            a,
            b,
            c,
            sign: 1,
            scale: 1,
            permutation: [0, 1, 2],
        })
    }

    pub fn a(&self) -> i64 {
        self.a
    }
    pub fn b(&self) -> i64 {
        self.b
    }
    pub fn c(&self) -> i64 {
        self.c
    }
    pub fn sign(&self) -> i64 {
        self.sign
    }
    /// The gcd the raw degrees were divided by.
    pub fn scale(&self) -> i64 {
        self.scale
    }
    /// `permutation[i]` is the raw variable index sitting at normalized slot `i`.
    pub fn permutation(&self) -> [usize; 3] {
        self.permutation
    }

    pub fn is_identity_bookkeeping(&self) -> bool {
        self.sign == 1 && self.scale == 1 && self.permutation == [0, 1, 2]
    }

    /// `(a, b, -c)` as a weight vector on `x, y, z`.
    pub fn weights(&self) -> WeightVector {
        WeightVector::new(&[self.a, self.b, -self.c]).expect("three weights")
    }

    /// The raw grading this was normalized from.
    pub fn to_raw(&self) -> RawGrading {
        let norm = [self.a, self.b, -self.c];
        let mut d = [0; 3];
        for (i, &slot) in self.permutation.iter().enumerate() {
            d[slot] = self.sign * self.scale * norm[i];
        }
        RawGrading { degrees: d }
    }

    pub fn cyclic(&self) -> CyclicGrading {
        induced_cyclic(self)
    }

    fn inverse_permutation(&self) -> [usize; 3] {
        let mut inv = [0; 3];
        for (i, &p) in self.permutation.iter().enumerate() {
            inv[p] = i;
        }
        inv
    }

    /// Rewrites a map given in raw variable order into normalized order.
    pub fn map_to_normalized(&self, raw: &PolyMap) -> Result<PolyMap> {
        self.relabel(raw, &self.permutation, &self.inverse_permutation())
    }

    /// Rewrites a map given in normalized variable order into raw order.
    pub fn map_from_normalized(&self, norm: &PolyMap) -> Result<PolyMap> {
        self.relabel(norm, &self.inverse_permutation(), &self.permutation)
    }

    // result_i = map_{src[i]} with variable j renamed to dst[j]
    fn relabel(&self, map: &PolyMap, src: &[usize; 3], dst: &[usize; 3]) -> Result<PolyMap> {
        if map.arity() != Arity::Space {
            return Err(Error::usage("variable relabeling needs a map of x, y, z"));
        }
        let rename: Vec<Poly> = dst.iter().map(|&j| Poly::var(Arity::Space, j)).collect();
        let images = src
            .iter()
            .map(|&s| map.image(s).substitute(&rename))
            .collect::<Result<Vec<_>>>()?;
        PolyMap::new(images)
    }
}

impl fmt::Display for NormalizedGrading {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "a={} b={} c={}", self.a, self.b, self.c)
    }
}

/// Divides out the gcd, fixes the global sign so exactly one degree is
/// negative, and moves that degree to `z` with `a >= b`.
pub fn normalize(raw: &RawGrading) -> Result<NormalizedGrading> {
    let class = classify(raw);
    if class != GradingClass::Mixed {
        return Err(Error::usage(format!(
            "only mixed gradings can be normalized, {} is {}",
            raw, class
        )));
    }
    let d = raw.degrees;
    let scale = d.iter().fold(0i64, |g, &x| g.gcd(&x));
    let mut reduced = d.map(|x| x / scale);
    let negatives = reduced.iter().filter(|&&x| x < 0).count();
    let sign = if negatives == 2 { -1 } else { 1 };
    reduced = reduced.map(|x| x * sign);

    let neg = reduced
        .iter()
        .position(|&x| x < 0)
        .expect("one negative degree");
    let pos: Vec<usize> = (0..3).filter(|&i| i != neg).collect();
    let (xi, yi) = if reduced[pos[0]] >= reduced[pos[1]] {
        (pos[0], pos[1])
    } else {
        (pos[1], pos[0])
    };
    Ok(NormalizedGrading {
        a: reduced[xi],
        b: reduced[yi],
        c: -reduced[neg],
        sign,
        scale,
        permutation: [xi, yi, neg],
    })
}

/// Witness `a = c·P + b·Q` with `P >= 1`, `Q >= 2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct WildCertificate {
    pub p: i64,
    pub q: i64,
}

impl fmt::Display for WildCertificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "P={} Q={}", self.p, self.q)
    }
}

/// Smallest `P` allowed in a certificate. Natural numbers are read as
/// starting at one; flip to zero to admit `b | a` gradings.
pub const MIN_CERTIFICATE_P: i64 = 1;

pub fn certificate_p_admissible(p: i64) -> bool {
    p >= MIN_CERTIFICATE_P
}

/// Searches `Q = 2, 3, ...` for the first `Q` with an admissible integer
/// `P = (a - bQ)/c`.
pub fn admits_wild(g: &NormalizedGrading) -> Option<WildCertificate> {
    let (a, b, c) = (g.a, g.b, g.c);
    let q_max = Integer::div_floor(&(a - c * MIN_CERTIFICATE_P), &b);
    (2..=q_max).find_map(|q| {
        let rest = a - b * q;
        (rest % c == 0 && certificate_p_admissible(rest / c)).then(|| {
            let cert = WildCertificate { p: rest / c, q };
            assert!(a > b, "wild certificate for a grading with a <= b");
            cert
        })
    })
}

/// `Z_c`-grading of `K[u, v]` with `deg u = a mod c`, `deg v = b mod c`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct CyclicGrading {
    modulus: i64,
    a_bar: i64,
    b_bar: i64,
}

impl CyclicGrading {
    pub fn new(modulus: i64, a: i64, b: i64) -> Result<Self> {
        if modulus <= 0 {
            return Err(Error::usage("cyclic grading modulus must be positive"));
        }
        Ok(CyclicGrading {
            modulus,
            a_bar: a.rem_euclid(modulus),
            b_bar: b.rem_euclid(modulus),
        })
    }

    pub fn modulus(&self) -> i64 {
        self.modulus
    }
    pub fn a_bar(&self) -> i64 {
        self.a_bar
    }
    pub fn b_bar(&self) -> i64 {
        self.b_bar
    }

    /// Degree of variable `var` (0 = u, 1 = v).
    pub fn var_degree(&self, var: usize) -> i64 {
        [self.a_bar, self.b_bar][var]
    }

    pub fn reduce(&self, d: i64) -> i64 {
        d.rem_euclid(self.modulus)
    }

    /// Residue degree of a plane polynomial if it is homogeneous.
    pub fn degree_of(&self, p: &Poly) -> Result<Option<GradedDegree>> {
        if p.arity() != Arity::Plane {
            return Err(Error::usage("cyclic grading applies to plane polynomials"));
        }
        let w = [self.a_bar, self.b_bar];
        let mut degrees = p.terms().map(|(m, _)| self.reduce(m.weighted_degree(&w)));
        let Some(first) = degrees.next() else {
            return Ok(Some(GradedDegree::Any));
        };
        Ok(degrees
            .all(|d| d == first)
            .then_some(GradedDegree::Exactly(first)))
    }

    /// Whether `p` is homogeneous of residue degree `d`.
    pub fn is_homogeneous_of(&self, p: &Poly, d: i64) -> Result<bool> {
        Ok(self
            .degree_of(p)?
            .is_some_and(|deg| deg.admits(self.reduce(d))))
    }
}

impl fmt::Display for CyclicGrading {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "Z_{} with deg u={} deg v={}",
            self.modulus, self.a_bar, self.b_bar
        )
    }
}

pub fn induced_cyclic(g: &NormalizedGrading) -> CyclicGrading {
    CyclicGrading::new(g.c, g.a, g.b).expect("c > 0")
}

//! Sparse multivariate polynomials with exact rational coefficients.
//!
//! Polynomials live either in the plane ring `Q[u, v]` or in the space ring
//! `Q[x, y, z]`. Terms are kept in a map keyed by exponent vector; zero
//! coefficients are never stored, so structural equality is mathematical
//! equality.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Rational = BigRational;

/// Shorthand for the rational `num / den`. Panics when `den == 0`.
pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Number of variables of a ring.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Arity {
    /// `u, v`
    Plane,
    /// `x, y, z`
    Space,
}

impl Arity {
    #[allow(clippy::len_without_is_empty)]
    pub fn len(self) -> usize {
        match self {
            Arity::Plane => 2,
            Arity::Space => 3,
        }
    }

    pub fn from_len(n: usize) -> Option<Arity> {
        match n {
            2 => Some(Arity::Plane),
            3 => Some(Arity::Space),
            _ => None,
        }
    }

    pub fn var_names(self) -> &'static [char] {
        match self {
            Arity::Plane => &['u', 'v'],
            Arity::Space => &['x', 'y', 'z'],
        }
    }
}

/// Exponent vector of a monomial. Unused trailing slots are always zero.
///
/// Monomials are ordered graded-lexicographically: total degree first, then
/// exponents compared variable by variable with `x > y > z` (`u > v`).
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Monomial {
    exps: [u32; 3],
    arity: Arity,
}

impl Monomial {
    pub fn new(arity: Arity, exps: &[u32]) -> Result<Self> {
        if exps.len() != arity.len() {
            return Err(Error::usage(format!(
                "monomial needs {} exponents, got {}",
                arity.len(),
                exps.len()
            )));
        }
        let mut e = [0; 3];
        e[..exps.len()].copy_from_slice(exps);
        Ok(Monomial { exps: e, arity })
    }

    pub fn one(arity: Arity) -> Self {
        Monomial {
            exps: [0; 3],
            arity,
        }
    }

    /// The monomial `var^exp`.
    pub fn var_pow(arity: Arity, var: usize, exp: u32) -> Self {
        assert!(var < arity.len(), "variable index out of range");
        let mut m = Self::one(arity);
        m.exps[var] = exp;
        m
    }

    pub fn arity(&self) -> Arity {
        self.arity
    }

    pub fn exponents(&self) -> &[u32] {
        &self.exps[..self.arity.len()]
    }

    pub fn exponent(&self, var: usize) -> u32 {
        self.exps[var]
    }

    pub fn degree(&self) -> u64 {
        self.exps.iter().map(|&e| e as u64).sum()
    }

    pub fn is_one(&self) -> bool {
        self.exps == [0; 3]
    }

    /// Weighted degree `Σ exponent_i · weight_i`.
    pub fn weighted_degree(&self, weights: &[i64]) -> i64 {
        self.exponents()
            .iter()
            .zip(weights)
            .map(|(&e, &w)| e as i64 * w)
            .sum()
    }

    /// If this monomial is a pure power of `var` (or 1), its exponent.
    pub fn pure_power_of(&self, var: usize) -> Option<u32> {
        let others_zero = self
            .exponents()
            .iter()
            .enumerate()
            .all(|(i, &e)| i == var || e == 0);
        others_zero.then_some(self.exps[var])
    }
}

impl Mul for Monomial {
    type Output = Monomial;

    fn mul(self, rhs: Monomial) -> Monomial {
        debug_assert_eq!(self.arity, rhs.arity);
        let mut exps = self.exps;
        for (e, r) in exps.iter_mut().zip(rhs.exps) {
            *e += r;
        }
        Monomial {
            exps,
            arity: self.arity,
        }
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.exps.cmp(&other.exps))
            .then_with(|| self.arity.cmp(&other.arity))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", crate::expr::format_monomial(self))
    }
}

/// Integer weight per variable, defining a Z-grading.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct WeightVector {
    weights: Vec<i64>,
}

impl WeightVector {
    pub fn new(weights: &[i64]) -> Result<Self> {
        if Arity::from_len(weights.len()).is_none() {
            return Err(Error::usage(format!(
                "weight vector must have 2 or 3 entries, got {}",
                weights.len()
            )));
        }
        Ok(WeightVector {
            weights: weights.to_vec(),
        })
    }

    pub fn arity(&self) -> Arity {
        Arity::from_len(self.weights.len()).expect("checked at construction")
    }

    pub fn weights(&self) -> &[i64] {
        &self.weights
    }
}

/// Degree of a homogeneous polynomial. The zero polynomial lies in every
/// homogeneous component.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GradedDegree {
    Any,
    Exactly(i64),
}

impl GradedDegree {
    /// Whether a polynomial of this degree lies in the component `d`.
    pub fn admits(self, d: i64) -> bool {
        match self {
            GradedDegree::Any => true,
            GradedDegree::Exactly(e) => e == d,
        }
    }
}

/// Lowest and highest exponent of a univariate polynomial.
///
/// The zero polynomial is `Empty`, which behaves like the pair `(+∞, −∞)`:
/// every lower bound on the low end and every upper bound on the high end
/// holds.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DegreeSpan {
    Empty,
    Range { low: u32, high: u32 },
}

impl DegreeSpan {
    /// `low ≥ num/den`, with `den > 0`.
    pub fn low_at_least(self, num: i64, den: i64) -> bool {
        match self {
            DegreeSpan::Empty => true,
            DegreeSpan::Range { low, .. } => low as i64 * den >= num,
        }
    }

    /// `high < num/den`, with `den > 0`.
    pub fn high_below(self, num: i64, den: i64) -> bool {
        match self {
            DegreeSpan::Empty => true,
            DegreeSpan::Range { high, .. } => (high as i64) * den < num,
        }
    }
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Poly {
    arity: Arity,
    terms: BTreeMap<Monomial, Rational>,
}

impl Poly {
    pub fn zero(arity: Arity) -> Self {
        Poly {
            arity,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(arity: Arity) -> Self {
        Self::constant(arity, Rational::one())
    }

    pub fn constant(arity: Arity, c: Rational) -> Self {
        Self::monomial(Monomial::one(arity), c)
    }

    pub fn var(arity: Arity, var: usize) -> Self {
        Self::monomial(Monomial::var_pow(arity, var, 1), Rational::one())
    }

    pub fn monomial(m: Monomial, c: Rational) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Poly {
            arity: m.arity,
            terms,
        }
    }

    /// Builds a polynomial from (possibly repeated) terms, merging like terms.
    pub fn from_terms<I>(arity: Arity, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Monomial, Rational)>,
    {
        let mut p = Poly::zero(arity);
        for (m, c) in terms {
            if m.arity != arity {
                return Err(Error::usage("monomial arity does not match polynomial"));
            }
            p.add_term(m, c);
        }
        Ok(p)
    }

    fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn arity(&self) -> Arity {
        self.arity
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(Monomial::is_one)
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in ascending monomial order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    /// Total degree, or `None` for the zero polynomial.
    pub fn total_degree(&self) -> Option<u64> {
        self.terms.keys().next_back().map(Monomial::degree)
    }

    pub fn coefficient_of(&self, m: &Monomial) -> Rational {
        debug_assert_eq!(m.arity, self.arity);
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn constant_term(&self) -> Rational {
        self.coefficient_of(&Monomial::one(self.arity))
    }

    /// Largest monomial with its coefficient.
    pub fn leading_term(&self) -> Option<(&Monomial, &Rational)> {
        self.terms.iter().next_back()
    }

    /// The homogeneous part of top total degree.
    pub fn leading_form(&self) -> Poly {
        match self.total_degree() {
            None => self.clone(),
            Some(d) => self.filter_terms(|m, _| m.degree() == d),
        }
    }

    /// Terms of total degree at most `d`.
    pub fn truncate_degree(&self, d: u64) -> Poly {
        self.filter_terms(|m, _| m.degree() <= d)
    }

    pub fn filter_terms<F>(&self, mut keep: F) -> Poly
    where
        F: FnMut(&Monomial, &Rational) -> bool,
    {
        Poly {
            arity: self.arity,
            terms: self
                .terms
                .iter()
                .filter(|(m, c)| keep(m, c))
                .map(|(m, c)| (*m, c.clone()))
                .collect(),
        }
    }

    /// Whether `var` occurs in any term.
    pub fn involves(&self, var: usize) -> bool {
        self.terms.keys().any(|m| m.exps[var] > 0)
    }

    pub fn scale(&self, c: &Rational) -> Poly {
        if c.is_zero() {
            return Poly::zero(self.arity);
        }
        Poly {
            arity: self.arity,
            terms: self.terms.iter().map(|(m, k)| (*m, k * c)).collect(),
        }
    }

    fn check_arity(&self, other: &Poly) -> Result<()> {
        if self.arity != other.arity {
            return Err(Error::usage(format!(
                "arity mismatch: {} vs {} variables",
                self.arity.len(),
                other.arity.len()
            )));
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &Poly) -> Result<Poly> {
        self.check_arity(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(*m, c.clone());
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &Poly) -> Result<Poly> {
        self.check_arity(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(*m, -c);
        }
        Ok(out)
    }

    pub fn checked_mul(&self, other: &Poly) -> Result<Poly> {
        self.check_arity(other)?;
        let mut acc: BTreeMap<Monomial, Rational> = BTreeMap::new();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                *acc.entry(*m1 * *m2).or_insert_with(Rational::zero) += c1 * c2;
            }
        }
        acc.retain(|_, c| !c.is_zero());
        Ok(Poly {
            arity: self.arity,
            terms: acc,
        })
    }

    pub fn pow(&self, mut exp: u32) -> Poly {
        let mut result = Poly::one(self.arity);
        let mut base = self.clone();
        while exp > 0 {
            if exp & 1 == 1 {
                result = &result * &base;
            }
            exp >>= 1;
            if exp > 0 {
                base = &base * &base;
            }
        }
        result
    }

    /// Replaces every variable by its image and expands. All images must
    /// share one arity, which becomes the arity of the result.
    pub fn substitute(&self, images: &[Poly]) -> Result<Poly> {
        if images.len() != self.arity.len() {
            return Err(Error::usage(format!(
                "substitution needs {} images, got {}",
                self.arity.len(),
                images.len()
            )));
        }
        let target = images[0].arity;
        if images.iter().any(|p| p.arity != target) {
            return Err(Error::usage("substitution images have mixed arity"));
        }

        // powers[i][e] = images[i]^e, filled on demand
        let mut powers: Vec<Vec<Poly>> = vec![vec![Poly::one(target)]; images.len()];
        let mut out = Poly::zero(target);
        for (m, c) in &self.terms {
            let mut term = Poly::constant(target, c.clone());
            for (i, &e) in m.exponents().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                while powers[i].len() <= e as usize {
                    let next = powers[i].last().unwrap() * &images[i];
                    powers[i].push(next);
                }
                term = &term * &powers[i][e as usize];
            }
            for (tm, tc) in term.terms {
                out.add_term(tm, tc);
            }
        }
        Ok(out)
    }

    /// Evaluates at a rational point.
    pub fn eval(&self, point: &[Rational]) -> Result<Rational> {
        if point.len() != self.arity.len() {
            return Err(Error::usage("evaluation point has wrong dimension"));
        }
        let mut acc = Rational::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (x, &e) in point.iter().zip(m.exponents()) {
                t *= num_traits::pow(x.clone(), e as usize);
            }
            acc += t;
        }
        Ok(acc)
    }

    /// The weighted degree if every term has the same one.
    pub fn gamma_degree(&self, w: &WeightVector) -> Result<Option<GradedDegree>> {
        if w.arity() != self.arity {
            return Err(Error::usage(
                "weight vector arity does not match polynomial",
            ));
        }
        let mut degrees = self.terms.keys().map(|m| m.weighted_degree(w.weights()));
        let Some(first) = degrees.next() else {
            return Ok(Some(GradedDegree::Any));
        };
        Ok(degrees
            .all(|d| d == first)
            .then_some(GradedDegree::Exactly(first)))
    }

    /// If the polynomial involves at most one variable, the span of its
    /// exponents in that variable.
    pub fn univariate_degree_span(&self) -> Result<DegreeSpan> {
        let used: Vec<usize> = (0..self.arity.len())
            .filter(|&i| self.involves(i))
            .collect();
        if used.len() > 1 {
            return Err(Error::usage("polynomial involves more than one variable"));
        }
        let var = used.first().copied().unwrap_or(0);
        let mut exps = self.terms.keys().map(|m| m.exps[var]);
        let Some(first) = exps.next() else {
            return Ok(DegreeSpan::Empty);
        };
        let (low, high) = exps.fold((first, first), |(lo, hi), e| (lo.min(e), hi.max(e)));
        Ok(DegreeSpan::Range { low, high })
    }

    /// Reinterprets a polynomial as one of another arity. Fails if a
    /// variable that does not exist in the target occurs.
    pub fn with_arity(&self, arity: Arity) -> Result<Poly> {
        let n = arity.len();
        let mut out = Poly::zero(arity);
        for (m, c) in &self.terms {
            if m.exps[n..].iter().any(|&e| e > 0) {
                return Err(Error::usage(
                    "polynomial uses a variable outside the target ring",
                ));
            }
            out.terms.insert(
                Monomial {
                    exps: m.exps,
                    arity,
                },
                c.clone(),
            );
        }
        Ok(out)
    }

    /// Checks that no zero coefficient is stored.
    pub fn is_canonical(&self) -> bool {
        self.terms.values().all(|c| !c.is_zero())
            && self.terms.keys().all(|m| m.arity == self.arity)
    }

    /// Largest absolute numerator or denominator, for test diagnostics.
    pub fn height(&self) -> BigInt {
        self.terms
            .values()
            .flat_map(|c| [c.numer().abs(), c.denom().clone()])
            .max()
            .unwrap_or_else(BigInt::zero)
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&crate::expr::format_poly(self))
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly({})", self)
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        self.checked_add(rhs)
            .expect("polynomial arity mismatch in +")
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        self.checked_sub(rhs)
            .expect("polynomial arity mismatch in -")
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        self.checked_mul(rhs)
            .expect("polynomial arity mismatch in *")
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly {
            arity: self.arity,
            terms: self.terms.iter().map(|(m, c)| (*m, -c)).collect(),
        }
    }
}

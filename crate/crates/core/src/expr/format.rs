use std::fmt::Write;

use num_traits::{One, Signed};

use crate::endo::PolyMap;
use crate::poly::{Monomial, Poly, Rational};

/// `p` or `p/q`, lowest terms.
pub fn format_rational(c: &Rational) -> String {
    c.to_string()
}

/// Always `p/q`, including `q = 1`.
pub fn format_rational_pq(c: &Rational) -> String {
    format!("{}/{}", c.numer(), c.denom())
}

/// `x^2*y*z^3`; the unit monomial prints as `1`.
pub fn format_monomial(m: &Monomial) -> String {
    let names = m.arity().var_names();
    let parts: Vec<String> = m
        .exponents()
        .iter()
        .zip(names)
        .filter(|(&e, _)| e > 0)
        .map(|(&e, name)| {
            if e == 1 {
                name.to_string()
            } else {
                format!("{}^{}", name, e)
            }
        })
        .collect();
    if parts.is_empty() {
        "1".to_string()
    } else {
        parts.join("*")
    }
}

pub fn format_poly(p: &Poly) -> String {
    if p.is_zero() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (i, (m, c)) in p.terms().rev().enumerate() {
        let negative = c.is_negative();
        match (i, negative) {
            (0, true) => out.push('-'),
            (0, false) => {}
            (_, true) => out.push_str(" - "),
            (_, false) => out.push_str(" + "),
        }
        let abs = c.abs();
        if m.is_one() {
            out.push_str(&format_rational(&abs));
        } else if abs.is_one() {
            out.push_str(&format_monomial(m));
        } else {
            let _ = write!(out, "{}*{}", format_rational(&abs), format_monomial(m));
        }
    }
    out
}

/// Components joined by `"; "`.
pub fn format_map(m: &PolyMap) -> String {
    m.images()
        .iter()
        .map(format_poly)
        .collect::<Vec<_>>()
        .join("; ")
}

//! JSON form of generator words: an array of objects tagged by `"type"`.
//!
//! ```json
//! [{"type": "S", "tau": {"lambda": "1/1", "f": "v^2"},
//!   "theta": {"lambda": "1/1", "mu": "1/1", "k": 1},
//!   "s": {"lambda": "1/1", "f": "0"}},
//!  {"type": "T", "lambda": "2/1"}]
//! ```

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::expr::{format_poly, format_rational_pq, parse_poly, parse_rational};
use crate::grading::NormalizedGrading;
use crate::lift::TorusFactor;
use crate::poly::{Arity, Rational};

use super::{DElement, FirstType, GenWord, Generator, SElement, UElement, WElement};

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct FirstTypeJson {
    lambda: String,
    f: String,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct DJson {
    lambda: String,
    mu: String,
    k: u32,
}

#[derive(Serialize, Deserialize)]
#[serde(tag = "type", deny_unknown_fields)]
enum GenJson {
    #[serde(rename = "T")]
    Torus { lambda: String },
    #[serde(rename = "U")]
    U { lambda: String, f: String },
    #[serde(rename = "S")]
    S {
        tau: FirstTypeJson,
        theta: DJson,
        s: FirstTypeJson,
    },
}

fn first_json(ft: &FirstType) -> FirstTypeJson {
    FirstTypeJson {
        lambda: format_rational_pq(ft.lambda()),
        f: format_poly(ft.f()),
    }
}

fn to_json(g: &Generator) -> GenJson {
    match g {
        Generator::Torus(t) => GenJson::Torus {
            lambda: format_rational_pq(t.lambda()),
        },
        Generator::U(u) => {
            let FirstTypeJson { lambda, f } = first_json(u.as_first_type());
            GenJson::U { lambda, f }
        }
        Generator::S(s) => GenJson::S {
            tau: first_json(s.tau().as_first_type()),
            theta: DJson {
                lambda: format_rational_pq(s.theta().lambda()),
                mu: format_rational_pq(s.theta().mu()),
                k: s.theta().k(),
            },
            s: first_json(s.correction().as_first_type()),
        },
    }
}

pub fn word_to_json(word: &GenWord) -> serde_json::Value {
    let items: Vec<GenJson> = word.factors.iter().map(to_json).collect();
    serde_json::to_value(items).expect("generator JSON is serializable")
}

fn rational(s: &str) -> Result<Rational> {
    Ok(parse_rational(s)?)
}

fn first_type(j: &FirstTypeJson) -> Result<FirstType> {
    FirstType::new(rational(&j.lambda)?, parse_poly(&j.f, Arity::Plane)?)
}

fn from_json(j: GenJson, g: &NormalizedGrading) -> Result<Generator> {
    Ok(match j {
        GenJson::Torus { lambda } => Generator::Torus(TorusFactor::new(rational(&lambda)?)?),
        GenJson::U { lambda, f } => Generator::U(UElement::from_first_type(
            first_type(&FirstTypeJson { lambda, f })?,
            g,
        )?),
        GenJson::S { tau, theta, s } => {
            let tau = WElement::from_first_type(first_type(&tau)?, g)?;
            let s = WElement::from_first_type(first_type(&s)?, g)?;
            let theta = DElement::new(rational(&theta.lambda)?, rational(&theta.mu)?, theta.k, g)?;
            Generator::S(SElement::from_parts(tau, theta, s, g)?)
        }
    })
}

/// Parses and validates a word; every generator is checked for membership.
pub fn word_from_json(text: &str, g: &NormalizedGrading) -> Result<GenWord> {
    let items: Vec<GenJson> = serde_json::from_str(text)
        .map_err(|e| Error::usage(format!("invalid generator word JSON: {}", e)))?;
    let factors = items
        .into_iter()
        .map(|j| from_json(j, g))
        .collect::<Result<Vec<_>>>()?;
    Ok(GenWord {
        factors,
        grading: *g,
    })
}

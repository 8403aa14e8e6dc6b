//! Graded polynomial automorphisms of three-space over the rationals.
//!
//! The crate covers sparse polynomials and maps ([`poly`], [`endo`]), Z
//! gradings on `K[x,y,z]` ([`grading`]), passage between the plane and
//! space at `z = 1` ([`lift`]), the generator families and the graded
//! decomposition built from them ([`gens`]), and a text format ([`expr`]).

pub mod endo;
pub mod error;
pub mod expr;
pub mod gens;
pub mod grading;
pub mod lift;
pub mod poly;
pub mod sample;

pub use endo::{compose, ElemAuto, ElemSeq, PolyMap};
pub use error::{Error, JvdkStage, Result};
pub use expr::{format_map, format_poly, parse_map, parse_poly, ParseError};
pub use gens::{decompose_graded, recompose, GenWord, Generator};
pub use grading::{admits_wild, normalize, NormalizedGrading, RawGrading};
pub use poly::{Arity, Monomial, Poly, Rational};

//! Text form of polynomials and maps.
//!
//! Input accepts rational coefficients, `^` powers, explicit or implicit
//! multiplication, division by constants and parentheses. Output is
//! canonical: terms in descending graded-lex order, explicit `*`, no unit
//! coefficients and no `+ -`. See `docs/grammar.ebnf` for the grammar.

mod format;
mod parse;

use std::fmt;

use thiserror::Error;

pub use format::{format_map, format_monomial, format_poly, format_rational, format_rational_pq};
pub use parse::{parse_map, parse_poly, parse_rational, MAX_DEGREE, MAX_NESTING};

/// Byte range `start..end` into the parsed text.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct SourceSpan {
    pub start: usize,
    pub end: usize,
}

impl SourceSpan {
    pub fn new(start: usize, end: usize) -> Self {
        debug_assert!(start <= end);
        SourceSpan { start, end }
    }

    pub fn shifted(self, offset: usize) -> Self {
        SourceSpan {
            start: self.start + offset,
            end: self.end + offset,
        }
    }
}

impl fmt::Display for SourceSpan {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}..{}", self.start, self.end)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ParseErrorKind {
    UnexpectedChar(char),
    UnexpectedToken {
        found: String,
        expected: &'static str,
    },
    UnexpectedEnd {
        expected: &'static str,
    },
    UnknownVariable(char),
    ZeroDenominator,
    NonConstantDivisor,
    ExponentTooLarge,
    DegreeTooLarge,
    TooDeep,
    ComponentCount(usize),
    InvalidRational,
}

impl fmt::Display for ParseErrorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ParseErrorKind::UnexpectedChar(c) => write!(f, "unexpected character {:?}", c),
            ParseErrorKind::UnexpectedToken { found, expected } => {
                write!(f, "expected {}, found {}", expected, found)
            }
            ParseErrorKind::UnexpectedEnd { expected } => {
                write!(f, "expected {}, found end of input", expected)
            }
            ParseErrorKind::UnknownVariable(c) => write!(f, "unknown variable {:?}", c),
            ParseErrorKind::ZeroDenominator => f.write_str("division by zero"),
            ParseErrorKind::NonConstantDivisor => f.write_str("division by a non-constant"),
            ParseErrorKind::ExponentTooLarge => f.write_str("exponent too large"),
            ParseErrorKind::DegreeTooLarge => {
                write!(f, "polynomial degree exceeds {}", MAX_DEGREE)
            }
            ParseErrorKind::TooDeep => write!(f, "parentheses nested deeper than {}", MAX_NESTING),
            ParseErrorKind::ComponentCount(n) => {
                write!(f, "a map needs 2 or 3 components, got {}", n)
            }
            ParseErrorKind::InvalidRational => f.write_str("invalid rational number"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("parse error at {span}: {kind}")]
pub struct ParseError {
    pub kind: ParseErrorKind,
    pub span: SourceSpan,
}

impl ParseError {
    pub(crate) fn new(kind: ParseErrorKind, span: SourceSpan) -> Self {
        ParseError { kind, span }
    }
}

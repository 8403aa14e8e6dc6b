use num_bigint::BigInt;
use num_traits::Zero;

use super::{ParseError, ParseErrorKind, SourceSpan};
use crate::endo::PolyMap;
use crate::poly::{Arity, Poly, Rational};

/// Largest total degree a parsed polynomial may reach.
pub const MAX_DEGREE: u64 = 128;
/// Deepest allowed nesting of parentheses and signs.
pub const MAX_NESTING: usize = 200;

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Num(BigInt),
    Var(char),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Num(n) => format!("number {}", n),
            Tok::Var(c) => format!("variable {}", c),
            Tok::Plus => "'+'".into(),
            Tok::Minus => "'-'".into(),
            Tok::Star => "'*'".into(),
            Tok::Slash => "'/'".into(),
            Tok::Caret => "'^'".into(),
            Tok::LParen => "'('".into(),
            Tok::RParen => "')'".into(),
        }
    }
}

fn tokenize(text: &str) -> Result<Vec<(Tok, SourceSpan)>, ParseError> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let b = bytes[i];
        let single = |t: Tok| (t, SourceSpan::new(i, i + 1));
        match b {
            b' ' | b'\t' | b'\r' | b'\n' => {
                i += 1;
                continue;
            }
            b'0'..=b'9' => {
                let start = i;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                let n: BigInt = text[start..i].parse().expect("ascii digits");
                out.push((Tok::Num(n), SourceSpan::new(start, i)));
                continue;
            }
            b'a'..=b'z' | b'A'..=b'Z' => out.push(single(Tok::Var(b as char))),
            b'+' => out.push(single(Tok::Plus)),
            b'-' => out.push(single(Tok::Minus)),
            b'*' => out.push(single(Tok::Star)),
            b'/' => out.push(single(Tok::Slash)),
            b'^' => out.push(single(Tok::Caret)),
            b'(' => out.push(single(Tok::LParen)),
            b')' => out.push(single(Tok::RParen)),
            _ => {
                let ch = text[i..].chars().next().expect("in bounds");
                return Err(ParseError::new(
                    ParseErrorKind::UnexpectedChar(ch),
                    SourceSpan::new(i, i + ch.len_utf8()),
                ));
            }
        }
        i += 1;
    }
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<(Tok, SourceSpan)>,
    pos: usize,
    arity: Arity,
    text_len: usize,
    depth: usize,
    _text: &'a str,
}

type PResult<T> = Result<T, ParseError>;

impl<'a> Parser<'a> {
    fn new(text: &'a str, arity: Arity) -> PResult<Self> {
        Ok(Parser {
            toks: tokenize(text)?,
            pos: 0,
            arity,
            text_len: text.len(),
            depth: 0,
            _text: text,
        })
    }

    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(t, _)| t)
    }

    fn span(&self) -> SourceSpan {
        self.toks
            .get(self.pos)
            .map(|(_, s)| *s)
            .unwrap_or(SourceSpan::new(self.text_len, self.text_len))
    }

    fn bump(&mut self) -> Option<(Tok, SourceSpan)> {
        let t = self.toks.get(self.pos).cloned();
        self.pos += 1;
        t
    }

    fn unexpected(&self, expected: &'static str) -> ParseError {
        match self.toks.get(self.pos) {
            Some((t, s)) => ParseError::new(
                ParseErrorKind::UnexpectedToken {
                    found: t.describe(),
                    expected,
                },
                *s,
            ),
            None => ParseError::new(ParseErrorKind::UnexpectedEnd { expected }, self.span()),
        }
    }

    fn check_degree(p: &Poly, span: SourceSpan) -> PResult<()> {
        if p.total_degree().unwrap_or(0) > MAX_DEGREE {
            return Err(ParseError::new(ParseErrorKind::DegreeTooLarge, span));
        }
        Ok(())
    }

    fn mul_checked(a: &Poly, b: &Poly, span: SourceSpan) -> PResult<Poly> {
        let da = a.total_degree().unwrap_or(0);
        let db = b.total_degree().unwrap_or(0);
        if da + db > MAX_DEGREE {
            return Err(ParseError::new(ParseErrorKind::DegreeTooLarge, span));
        }
        Ok(a * b)
    }

    fn enter(&mut self) -> PResult<()> {
        self.depth += 1;
        if self.depth > MAX_NESTING {
            return Err(ParseError::new(ParseErrorKind::TooDeep, self.span()));
        }
        Ok(())
    }

    // expr := term (('+' | '-') term)*
    fn expr(&mut self) -> PResult<Poly> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.bump();
                    acc = &acc + &self.term()?;
                }
                Some(Tok::Minus) => {
                    self.bump();
                    acc = &acc - &self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    // term := unary (('*' | '/' | juxtaposition) unary)*
    fn term(&mut self) -> PResult<Poly> {
        let start = self.span().start;
        let mut acc = self.unary()?;
        loop {
            match self.peek() {
                Some(Tok::Star) => {
                    self.bump();
                    let rhs = self.unary()?;
                    acc = Self::mul_checked(&acc, &rhs, self.span_from(start))?;
                }
                Some(Tok::Slash) => {
                    let slash_at = self.span();
                    self.bump();
                    let rhs = self.unary()?;
                    let span = SourceSpan::new(slash_at.start, self.prev_end());
                    if !rhs.is_constant() {
                        return Err(ParseError::new(ParseErrorKind::NonConstantDivisor, span));
                    }
                    let c = rhs.constant_term();
                    if c.is_zero() {
                        return Err(ParseError::new(ParseErrorKind::ZeroDenominator, span));
                    }
                    acc = acc.scale(&c.recip());
                }
                Some(Tok::Num(_)) | Some(Tok::Var(_)) | Some(Tok::LParen) => {
                    let rhs = self.unary()?;
                    acc = Self::mul_checked(&acc, &rhs, self.span_from(start))?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn prev_end(&self) -> usize {
        self.pos
            .checked_sub(1)
            .and_then(|p| self.toks.get(p))
            .map(|(_, s)| s.end)
            .unwrap_or(0)
    }

    fn span_from(&self, start: usize) -> SourceSpan {
        SourceSpan::new(start, self.prev_end().max(start))
    }

    // unary := ('+' | '-') unary | power
    fn unary(&mut self) -> PResult<Poly> {
        match self.peek() {
            Some(Tok::Minus) => {
                self.bump();
                self.enter()?;
                let p = self.unary()?;
                self.depth -= 1;
                Ok(-&p)
            }
            Some(Tok::Plus) => {
                self.bump();
                self.enter()?;
                let p = self.unary()?;
                self.depth -= 1;
                Ok(p)
            }
            _ => self.power(),
        }
    }

    // power := atom ('^' integer)?
    fn power(&mut self) -> PResult<Poly> {
        let start = self.span().start;
        let base = self.atom()?;
        if self.peek() != Some(&Tok::Caret) {
            return Ok(base);
        }
        self.bump();
        let (exp, exp_span) = match self.bump() {
            Some((Tok::Num(n), s)) => (n, s),
            _ => {
                self.pos -= 1;
                return Err(self.unexpected("an integer exponent"));
            }
        };
        let exp: u32 = u32::try_from(&exp)
            .ok()
            .filter(|&e| u64::from(e) <= MAX_DEGREE)
            .ok_or_else(|| ParseError::new(ParseErrorKind::ExponentTooLarge, exp_span))?;
        let span = SourceSpan::new(start, exp_span.end);
        let base_deg = base.total_degree().unwrap_or(0);
        if base_deg * u64::from(exp) > MAX_DEGREE {
            return Err(ParseError::new(ParseErrorKind::DegreeTooLarge, span));
        }
        let p = base.pow(exp);
        Self::check_degree(&p, span)?;
        Ok(p)
    }

    // atom := integer | variable | '(' expr ')'
    fn atom(&mut self) -> PResult<Poly> {
        let span = self.span();
        match self.bump() {
            Some((Tok::Num(n), _)) => Ok(Poly::constant(self.arity, Rational::from_integer(n))),
            Some((Tok::Var(c), s)) => {
                let idx = self
                    .arity
                    .var_names()
                    .iter()
                    .position(|&v| v == c)
                    .ok_or_else(|| ParseError::new(ParseErrorKind::UnknownVariable(c), s))?;
                Ok(Poly::var(self.arity, idx))
            }
            Some((Tok::LParen, _)) => {
                self.enter()?;
                let inner = self.expr()?;
                self.depth -= 1;
                match self.bump() {
                    Some((Tok::RParen, _)) => Ok(inner),
                    _ => {
                        self.pos -= 1;
                        Err(self.unexpected("')'"))
                    }
                }
            }
            Some(_) => {
                self.pos -= 1;
                Err(self.unexpected("a number, variable or '('"))
            }
            None => Err(ParseError::new(
                ParseErrorKind::UnexpectedEnd {
                    expected: "a number, variable or '('",
                },
                span,
            )),
        }
    }

    fn finish(&mut self) -> PResult<()> {
        if self.pos < self.toks.len() {
            return Err(self.unexpected("an operator or end of input"));
        }
        Ok(())
    }
}

/// Parses a polynomial in the variables of `arity` (`x, y, z` or `u, v`).
pub fn parse_poly(text: &str, arity: Arity) -> Result<Poly, ParseError> {
    let mut p = Parser::new(text, arity)?;
    let poly = p.expr()?;
    p.finish()?;
    Ok(poly)
}

/// Parses `"f; g"` (variables `u, v`) or `"f; g; h"` (variables `x, y, z`).
/// Components are separated by semicolons or newlines; blank components
/// are skipped.
pub fn parse_map(text: &str) -> Result<PolyMap, ParseError> {
    let mut parts: Vec<(usize, &str)> = Vec::new();
    let mut start = 0;
    for (i, ch) in text.char_indices() {
        if ch == ';' || ch == '\n' {
            parts.push((start, &text[start..i]));
            start = i + 1;
        }
    }
    parts.push((start, &text[start..]));
    parts.retain(|(_, s)| !s.trim().is_empty());

    let arity = Arity::from_len(parts.len()).ok_or_else(|| {
        ParseError::new(
            ParseErrorKind::ComponentCount(parts.len()),
            SourceSpan::new(0, text.len()),
        )
    })?;
    let images = parts
        .iter()
        .map(|(offset, s)| {
            parse_poly(s, arity).map_err(|e| ParseError {
                span: e.span.shifted(*offset),
                ..e
            })
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(PolyMap::new(images).expect("components share arity"))
}

/// `"p"` or `"p/q"` with optional leading minus.
pub fn parse_rational(text: &str) -> Result<Rational, ParseError> {
    let whole = SourceSpan::new(0, text.len());
    let bad = || ParseError::new(ParseErrorKind::InvalidRational, whole);
    let t = text.trim();
    let (num, den) = match t.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (t, "1"),
    };
    let digits = |s: &str| {
        let body = s.strip_prefix('-').unwrap_or(s);
        !body.is_empty() && body.bytes().all(|b| b.is_ascii_digit())
    };
    if !digits(num) || !den.bytes().all(|b| b.is_ascii_digit()) || den.is_empty() {
        return Err(bad());
    }
    let n: BigInt = num.parse().map_err(|_| bad())?;
    let d: BigInt = den.parse().map_err(|_| bad())?;
    if d.is_zero() {
        return Err(ParseError::new(ParseErrorKind::ZeroDenominator, whole));
    }
    Ok(Rational::new(n, d))
}

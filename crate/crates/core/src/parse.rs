//! Text format for equations.
//!
//! ```text
//! equation := poly ['=' poly]
//! poly     := ['+'|'-'] term (('+'|'-') term)*
//! term     := [int ['*']] factor ('*' factor)* | int
//! factor   := var ['^' uint]          (exponent >= 1)
//! var      := 'x' uint                (index >= 1)
//! ```
//!
//! Whitespace is ignored. `L = R` becomes `L - R = 0` and a missing `=` means
//! `= 0`. Integer literals are unbounded in the grammar but must fit the
//! 128-bit coefficient backend.

use std::fmt;

use num_bigint::BigInt;
use num_traits::ToPrimitive;

use crate::error::Result;
use crate::poly::Polynomial;

/// Largest accepted variable index.
pub const MAX_VARIABLES: u64 = 256;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    /// Byte offset into the source, at most `src.len()`.
    pub position: usize,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "parse error at byte {}: {}", self.position, self.message)
    }
}

impl std::error::Error for ParseError {}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Int(BigInt),
    Var(u64),
    Plus,
    Minus,
    Star,
    Caret,
    Eq,
}

fn err(position: usize, message: impl Into<String>) -> ParseError {
    ParseError { position, message: message.into() }
}

fn tokenize(src: &str) -> std::result::Result<Vec<(usize, Tok)>, ParseError> {
    let bytes = src.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let b = bytes[i];
        match b {
            b' ' | b'\t' | b'\n' | b'\r' => i += 1,
            b'+' => {
                out.push((i, Tok::Plus));
                i += 1;
            }
            b'-' => {
                out.push((i, Tok::Minus));
                i += 1;
            }
            b'*' => {
                out.push((i, Tok::Star));
                i += 1;
            }
            b'^' => {
                out.push((i, Tok::Caret));
                i += 1;
            }
            b'=' => {
                out.push((i, Tok::Eq));
                i += 1;
            }
            b'0'..=b'9' => {
                let start = i;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                let n: BigInt = src[start..i].parse().expect("ascii digits");
                out.push((start, Tok::Int(n)));
            }
            b'x' | b'X' => {
                let start = i;
                i += 1;
                let ds = i;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                if ds == i {
                    return Err(err(start, "variable name needs an index, e.g. x1"));
                }
                let idx: u64 = src[ds..i]
                    .parse()
                    .map_err(|_| err(ds, "variable index too large"))?;
                if idx == 0 {
                    return Err(err(ds, "variable index must be at least 1"));
                }
                if idx > MAX_VARIABLES {
                    return Err(err(ds, format!("variable index exceeds {MAX_VARIABLES}")));
                }
                out.push((start, Tok::Var(idx)));
            }
            _ => {
                let ch = src[i..].chars().next().unwrap_or('?');
                return Err(err(i, format!("unexpected character '{ch}'")));
            }
        }
    }
    Ok(out)
}

/// A parsed monomial: coefficient and sparse `(var index, exponent)` factors.
type RawTerm = (i128, Vec<(usize, u32)>);

struct Parser<'a> {
    toks: &'a [(usize, Tok)],
    pos: usize,
    end: usize,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<&'a Tok> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    fn offset(&self) -> usize {
        self.toks.get(self.pos).map(|(o, _)| *o).unwrap_or(self.end)
    }

    fn bump(&mut self) -> Option<&'a Tok> {
        let t = self.toks.get(self.pos).map(|(_, t)| t);
        self.pos += 1;
        t
    }

    fn int_value(&self, n: &BigInt, at: usize) -> std::result::Result<i128, ParseError> {
        n.to_i128().ok_or_else(|| err(at, "integer literal exceeds the 128-bit coefficient range"))
    }

    fn poly(&mut self) -> std::result::Result<Vec<RawTerm>, ParseError> {
        let mut terms = Vec::new();
        let mut sign = 1i128;
        match self.peek() {
            Some(Tok::Minus) => {
                sign = -1;
                self.pos += 1;
            }
            Some(Tok::Plus) => self.pos += 1,
            _ => {}
        }
        loop {
            let (c, f) = self.term()?;
            let c = if sign < 0 {
                c.checked_neg().ok_or_else(|| err(self.offset(), "coefficient overflow"))?
            } else {
                c
            };
            terms.push((c, f));
            match self.peek() {
                Some(Tok::Plus) => {
                    sign = 1;
                    self.pos += 1;
                }
                Some(Tok::Minus) => {
                    sign = -1;
                    self.pos += 1;
                }
                _ => return Ok(terms),
            }
        }
    }

    fn term(&mut self) -> std::result::Result<RawTerm, ParseError> {
        let at = self.offset();
        let mut coeff: i128 = 1;
        let mut factors = Vec::new();
        match self.peek() {
            Some(Tok::Int(n)) => {
                coeff = self.int_value(n, at)?;
                self.pos += 1;
                match self.peek() {
                    Some(Tok::Star) => {
                        self.pos += 1;
                        factors.push(self.factor()?);
                    }
                    Some(Tok::Var(_)) => factors.push(self.factor()?),
                    _ => return Ok((coeff, factors)),
                }
            }
            Some(Tok::Var(_)) => factors.push(self.factor()?),
            Some(_) => return Err(err(at, "expected a term")),
            None => return Err(err(at, "dangling operator: expected a term")),
        }
        while let Some(Tok::Star) = self.peek() {
            self.pos += 1;
            factors.push(self.factor()?);
        }
        Ok((coeff, factors))
    }

    fn factor(&mut self) -> std::result::Result<(usize, u32), ParseError> {
        let at = self.offset();
        let idx = match self.bump() {
            Some(Tok::Var(i)) => *i,
            Some(_) => return Err(err(at, "expected a variable")),
            None => return Err(err(at, "dangling operator: expected a variable")),
        };
        let idx = usize::try_from(idx - 1).map_err(|_| err(at, "variable index too large"))?;
        let mut exp = 1u32;
        if let Some(Tok::Caret) = self.peek() {
            self.pos += 1;
            let eat = self.offset();
            match self.bump() {
                Some(Tok::Int(n)) => {
                    let e = n.to_u32().ok_or_else(|| err(eat, "exponent too large"))?;
                    if e == 0 {
                        return Err(err(eat, "exponent must be at least 1"));
                    }
                    exp = e;
                }
                _ => return Err(err(eat, "expected an exponent after '^'")),
            }
        }
        Ok((idx, exp))
    }
}

fn build(var_count: usize, lhs: Vec<RawTerm>, rhs: Vec<RawTerm>, at: usize) -> Result<Polynomial> {
    let mut p = Polynomial::zero(var_count);
    let overflow = || err(at, "coefficient overflow while collecting terms");
    for (sign, side) in [(1i128, lhs), (-1i128, rhs)] {
        for (c, factors) in side {
            let mut exps = vec![0u32; var_count];
            for (i, e) in factors {
                exps[i] = exps[i].checked_add(e).ok_or_else(overflow)?;
            }
            let c = c.checked_mul(sign).ok_or_else(overflow)?;
            p.add_term(c, exps).map_err(|_| overflow())?;
        }
    }
    Ok(p)
}

fn parse_sides(src: &str) -> std::result::Result<(Vec<RawTerm>, Vec<RawTerm>, usize), ParseError> {
    if src.trim().is_empty() {
        return Err(err(0, "empty equation"));
    }
    let toks = tokenize(src)?;
    let mut parser = Parser { toks: &toks, pos: 0, end: src.len() };
    let lhs = parser.poly()?;
    let mut rhs = Vec::new();
    if let Some(Tok::Eq) = parser.peek() {
        parser.pos += 1;
        rhs = parser.poly()?;
    }
    if parser.pos < toks.len() {
        return Err(err(parser.offset(), "unexpected token"));
    }
    let max_var = lhs
        .iter()
        .chain(rhs.iter())
        .flat_map(|(_, f)| f.iter().map(|(i, _)| i + 1))
        .max()
        .unwrap_or(1);
    Ok((lhs, rhs, max_var))
}

/// Parses `src` with the variable count set to the largest index used (at least 1).
pub fn parse_equation(src: &str) -> Result<Polynomial> {
    let (lhs, rhs, max_var) = parse_sides(src)?;
    build(max_var, lhs, rhs, src.len())
}

/// Parses `src` into a polynomial in exactly `var_count` variables.
pub fn parse_equation_with_vars(src: &str, var_count: usize) -> Result<Polynomial> {
    let (lhs, rhs, max_var) = parse_sides(src)?;
    if max_var > var_count {
        return Err(err(0, format!("equation uses x{max_var} but only {var_count} variables were declared"))
            .into());
    }
    build(var_count, lhs, rhs, src.len())
}

/// Canonical text `... = 0`, terms in descending graded order.
pub fn render(p: &Polynomial) -> String {
    format!("{} = 0", render_expression(p))
}

/// Left-hand side of [`render`] without the trailing `= 0`.
pub fn render_expression(p: &Polynomial) -> String {
    let mut terms: Vec<_> = p.raw_terms().iter().collect();
    terms.sort_by(|a, b| {
        let da: u32 = a.0.iter().sum();
        let db: u32 = b.0.iter().sum();
        db.cmp(&da).then_with(|| b.0.cmp(a.0))
    });
    let mut out = String::new();
    for (n, (exps, &coeff)) in terms.iter().enumerate() {
        let neg = coeff < 0;
        if n == 0 {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        let mag = coeff.unsigned_abs();
        let factors: Vec<String> = exps
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(i, &e)| if e == 1 { format!("x{}", i + 1) } else { format!("x{}^{}", i + 1, e) })
            .collect();
        if factors.is_empty() {
            out.push_str(&mag.to_string());
        } else {
            if mag != 1 {
                out.push_str(&mag.to_string());
                out.push('*');
            }
            out.push_str(&factors.join("*"));
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

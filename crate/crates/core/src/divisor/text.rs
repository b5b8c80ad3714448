//! Text form of divisors: `2*(x^2 + 1, 4) - 3*inf- + inf+`.
//!
//! Affine places print as `(u, v)`, inert places as `(u, none)`.

use std::fmt;

use thiserror::Error;

use super::{CurveField, Divisor, Place};
use crate::arith::{Field, Rational};
use crate::curve::{CurveModel, Sign};
use crate::poly::{factor_q, parse_poly, ParsePolyError};

impl<F: Field> fmt::Display for Place<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Place::Affine { u, v } => write!(f, "({u}, {v})"),
            Place::Inert { u } => write!(f, "({u}, none)"),
            Place::Infinity(s) => write!(f, "inf{s}"),
        }
    }
}

impl<F: Field> fmt::Display for Divisor<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (p, k)) in self.iter().enumerate() {
            let sign = if k < 0 { "-" } else { "+" };
            if i == 0 {
                if k < 0 {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            match k.unsigned_abs() {
                1 => write!(f, "{p}")?,
                n => write!(f, "{n}*{p}")?,
            }
        }
        Ok(())
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ParseDivisorError {
    #[error("malformed term {0:?}")]
    BadTerm(String),
    #[error("bad polynomial in {0:?}: {1}")]
    BadPoly(String, ParsePolyError),
    #[error("unbalanced parentheses")]
    Unbalanced,
    #[error("u must be monic irreducible in {0:?}")]
    BadU(String),
    #[error("v must satisfy v^2 = f mod u with deg v < deg u in {0:?}")]
    BadV(String),
}

/// Splits at top-level `+`/`-`, keeping each sign with its term.
fn split_terms(s: &str) -> Result<Vec<(i64, String)>, ParseDivisorError> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut sign = 1i64;
    let mut cur = String::new();
    for ch in s.chars() {
        match ch {
            '(' => {
                depth += 1;
                cur.push(ch);
            }
            ')' => {
                depth -= 1;
                if depth < 0 {
                    return Err(ParseDivisorError::Unbalanced);
                }
                cur.push(ch);
            }
            '+' | '-' if depth == 0 && !cur.trim().ends_with("inf") => {
                if !cur.trim().is_empty() {
                    out.push((sign, cur.trim().to_string()));
                }
                cur.clear();
                sign = if ch == '-' { -1 } else { 1 };
            }
            _ => cur.push(ch),
        }
    }
    if depth != 0 {
        return Err(ParseDivisorError::Unbalanced);
    }
    if !cur.trim().is_empty() {
        out.push((sign, cur.trim().to_string()));
    }
    Ok(out)
}

fn parse_place(s: &str, c: &CurveModel<Rational>) -> Result<Place<Rational>, ParseDivisorError> {
    match s {
        "inf+" => return Ok(Place::Infinity(Sign::Plus)),
        "inf-" => return Ok(Place::Infinity(Sign::Minus)),
        _ => {}
    }
    let inner = s
        .strip_prefix('(')
        .and_then(|t| t.strip_suffix(')'))
        .ok_or_else(|| ParseDivisorError::BadTerm(s.to_string()))?;
    // the comma separating u and v is the only one at depth zero
    let mut depth = 0;
    let mut at = None;
    for (i, ch) in inner.char_indices() {
        match ch {
            '(' => depth += 1,
            ')' => depth -= 1,
            ',' if depth == 0 => at = Some(i),
            _ => {}
        }
    }
    let at = at.ok_or_else(|| ParseDivisorError::BadTerm(s.to_string()))?;
    let (us, vs) = (inner[..at].trim(), inner[at + 1..].trim());
    let u = parse_poly(us).map_err(|e| ParseDivisorError::BadPoly(s.to_string(), e))?;
    if u.deg() < 1 || !u.is_monic() || !factor_q(&u).is_irreducible() {
        return Err(ParseDivisorError::BadU(s.to_string()));
    }
    if vs == "none" {
        if c.f().rem(&u).is_zero() || <Rational as CurveField>::residue_sqrt(c.f(), &u).is_some() {
            return Err(ParseDivisorError::BadV(s.to_string()));
        }
        return Ok(Place::Inert { u });
    }
    let v = parse_poly(vs).map_err(|e| ParseDivisorError::BadPoly(s.to_string(), e))?;
    if v.deg() >= u.deg() || !v.mul(&v).sub(c.f()).rem(&u).is_zero() {
        return Err(ParseDivisorError::BadV(s.to_string()));
    }
    Ok(Place::Affine { u, v })
}

/// Parses the `Display` form of a divisor over Q, validating every place on `c`.
pub fn parse_divisor(s: &str, c: &CurveModel<Rational>) -> Result<Divisor<Rational>, ParseDivisorError> {
    let s = s.trim();
    if s == "0" {
        return Ok(Divisor::zero());
    }
    let mut d = Divisor::zero();
    for (sign, term) in split_terms(s)? {
        let (k, place) = match term.split_once('*') {
            Some((n, rest)) if n.trim().chars().all(|ch| ch.is_ascii_digit()) && !n.trim().is_empty() => {
                let k: i64 = n
                    .trim()
                    .parse()
                    .map_err(|_| ParseDivisorError::BadTerm(term.clone()))?;
                (k, rest.trim())
            }
            _ => (1, term.as_str()),
        };
        d.add_place(parse_place(place, c)?, sign * k);
    }
    Ok(d)
}

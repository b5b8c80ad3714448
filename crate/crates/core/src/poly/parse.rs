//! Parser for rational polynomials in `x`, accepting the `Display` output of `Poly<Rational>`.

use num_bigint::BigInt;
use num_traits::Zero;
use thiserror::Error;

use super::Poly;
use crate::arith::Rational;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ParsePolyError {
    #[error("empty input")]
    Empty,
    #[error("unexpected character {0:?} at offset {1}")]
    Unexpected(char, usize),
    #[error("malformed number at offset {0}")]
    BadNumber(usize),
    #[error("zero denominator at offset {0}")]
    ZeroDenominator(usize),
}

struct Cursor<'a> {
    s: &'a [u8],
    i: usize,
}

impl Cursor<'_> {
    fn skip_ws(&mut self) {
        while self.i < self.s.len() && self.s[self.i].is_ascii_whitespace() {
            self.i += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.s.get(self.i).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.i += 1;
            true
        } else {
            false
        }
    }

    fn digits(&mut self) -> Result<BigInt, ParsePolyError> {
        self.skip_ws();
        let start = self.i;
        while self.i < self.s.len() && self.s[self.i].is_ascii_digit() {
            self.i += 1;
        }
        std::str::from_utf8(&self.s[start..self.i])
            .ok()
            .and_then(|t| t.parse().ok())
            .ok_or(ParsePolyError::BadNumber(start))
    }

    fn number(&mut self) -> Result<Rational, ParsePolyError> {
        let at = self.i;
        let paren = self.eat(b'(');
        let neg = paren && self.eat(b'-');
        let n = self.digits()?;
        let d = if self.eat(b'/') {
            self.digits()?
        } else {
            BigInt::from(1)
        };
        if d.is_zero() {
            return Err(ParsePolyError::ZeroDenominator(at));
        }
        if paren && !self.eat(b')') {
            return Err(self.unexpected());
        }
        let r = Rational::new(n, d);
        Ok(if neg { -r } else { r })
    }

    fn unexpected(&mut self) -> ParsePolyError {
        match self.peek() {
            Some(c) => ParsePolyError::Unexpected(c as char, self.i),
            None => ParsePolyError::Empty,
        }
    }
}

/// Parses sums of terms `c`, `c*x`, `c*x^n`, `x^n` with rational `c` (written `n` or `n/d`).
pub fn parse_poly(s: &str) -> Result<Poly<Rational>, ParsePolyError> {
    let mut cur = Cursor {
        s: s.as_bytes(),
        i: 0,
    };
    if cur.peek().is_none() {
        return Err(ParsePolyError::Empty);
    }
    let mut coeffs: Vec<Rational> = Vec::new();
    let mut first = true;
    while cur.peek().is_some() {
        let neg = if cur.eat(b'-') {
            true
        } else if cur.eat(b'+') || first {
            false
        } else {
            return Err(cur.unexpected());
        };
        first = false;
        let mut c = Rational::from_integer(1.into());
        let mut has_coeff = false;
        if matches!(cur.peek(), Some(b'0'..=b'9' | b'(')) {
            c = cur.number()?;
            has_coeff = true;
        }
        let mut e = 0usize;
        if has_coeff {
            if cur.eat(b'*') {
                if !cur.eat(b'x') {
                    return Err(cur.unexpected());
                }
                e = 1;
            } else if cur.eat(b'x') {
                e = 1;
            }
        } else if cur.eat(b'x') {
            e = 1;
        } else {
            return Err(cur.unexpected());
        }
        if e == 1 && cur.eat(b'^') {
            let at = cur.i;
            e = cur
                .digits()?
                .try_into()
                .map_err(|_| ParsePolyError::BadNumber(at))?;
        }
        if coeffs.len() <= e {
            coeffs.resize(e + 1, Rational::zero());
        }
        coeffs[e] = if neg { &coeffs[e] - c } else { &coeffs[e] + c };
    }
    Ok(Poly::new(&(), coeffs))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn parses_display_forms() {
        let p = parse_poly("x^3 - 2*x^2 + 2*x + 1").unwrap();
        assert_eq!(p, Poly::from_i64s(&(), &[1, 2, -2, 1]));
        assert_eq!(parse_poly("-4").unwrap(), Poly::from_i64s(&(), &[-4]));
        assert_eq!(parse_poly("0").unwrap(), Poly::zero(&()));
        assert_eq!(parse_poly("x").unwrap(), Poly::from_i64s(&(), &[0, 1]));
        let half = parse_poly("1/2*x - 3/4").unwrap();
        assert_eq!(half.coeff(1), Rational::new(1.into(), 2.into()));
        assert_eq!(half.coeff(0), Rational::new((-3).into(), 4.into()));
    }

    #[test]
    fn rejects_garbage() {
        assert!(parse_poly("").is_err());
        assert!(parse_poly("x +").is_err());
        assert!(parse_poly("2*y").is_err());
        assert!(parse_poly("1/0").is_err());
        assert!(parse_poly("x x").is_err());
    }

    proptest! {
        #[test]
        fn display_round_trip(c in proptest::collection::vec((-50i64..50, 1i64..9), 0..7)) {
            let coeffs: Vec<Rational> = c.iter().map(|&(n, d)| Rational::new(n.into(), d.into())).collect();
            let p = Poly::new(&(), coeffs);
            prop_assert_eq!(parse_poly(&p.to_string()).unwrap(), p);
        }
    }
}

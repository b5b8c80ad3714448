use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;

use super::{ff_sqrt, Field, FiniteField, Rational};

/// Element of F_p for a word-sized prime p.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Fp {
    p: u64,
    v: u64,
}

impl Fp {
    pub fn new(p: u64, v: i64) -> Self {
        let r = v.rem_euclid(p as i64) as u64;
        Fp { p, v: r }
    }

    pub fn from_u64(p: u64, v: u64) -> Self {
        Fp { p, v: v % p }
    }

    pub fn value(&self) -> u64 {
        self.v
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    /// Symmetric representative in (-p/2, p/2].
    pub fn centered(&self) -> i64 {
        if self.v > self.p / 2 {
            self.v as i64 - self.p as i64
        } else {
            self.v as i64
        }
    }
}

impl fmt::Display for Fp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.v)
    }
}

fn mulmod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

impl Field for Fp {
    type Ctx = u64;

    fn context(&self) -> u64 {
        self.p
    }
    fn zero(p: &u64) -> Self {
        Fp { p: *p, v: 0 }
    }
    fn one(p: &u64) -> Self {
        Fp { p: *p, v: 1 % *p }
    }
    fn from_i64(p: &u64, n: i64) -> Self {
        Fp::new(*p, n)
    }
    fn characteristic(p: &u64) -> u64 {
        *p
    }
    fn is_zero(&self) -> bool {
        self.v == 0
    }
    fn add(&self, rhs: &Self) -> Self {
        let s = self.v + rhs.v;
        Fp {
            p: self.p,
            v: if s >= self.p { s - self.p } else { s },
        }
    }
    fn sub(&self, rhs: &Self) -> Self {
        Fp {
            p: self.p,
            v: if self.v >= rhs.v {
                self.v - rhs.v
            } else {
                self.v + self.p - rhs.v
            },
        }
    }
    fn mul(&self, rhs: &Self) -> Self {
        Fp {
            p: self.p,
            v: mulmod(self.v, rhs.v, self.p),
        }
    }
    fn neg(&self) -> Self {
        Fp {
            p: self.p,
            v: if self.v == 0 { 0 } else { self.p - self.v },
        }
    }
    fn inv(&self) -> Option<Self> {
        if self.v == 0 {
            return None;
        }
        let (mut r0, mut r1) = (self.p as i128, self.v as i128);
        let (mut t0, mut t1) = (0i128, 1i128);
        while r1 != 0 {
            let q = r0 / r1;
            (r0, r1) = (r1, r0 - q * r1);
            (t0, t1) = (t1, t0 - q * t1);
        }
        Some(Fp {
            p: self.p,
            v: t0.rem_euclid(self.p as i128) as u64,
        })
    }
    fn sqrt(&self) -> Option<Self> {
        ff_sqrt(self).ok().flatten()
    }
    fn from_rational(p: &u64, r: &Rational) -> Option<Self> {
        let pb = BigInt::from(*p);
        let n = r.numer().mod_floor(&pb).to_u64()?;
        let d = r.denom().mod_floor(&pb).to_u64()?;
        Fp::from_u64(*p, d).inv().map(|di| Fp::from_u64(*p, n).mul(&di))
    }
}

impl FiniteField for Fp {
    fn prime(p: &u64) -> u64 {
        *p
    }
    fn ext_degree(_: &u64) -> usize {
        1
    }
    fn coords(&self) -> Vec<u64> {
        vec![self.v]
    }
    fn element(p: &u64, index: u64) -> Self {
        Fp::from_u64(*p, index)
    }
    fn index(&self) -> u64 {
        self.v
    }
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Smallest prime strictly greater than `n`.
pub fn next_prime(n: u64) -> u64 {
    let mut c = n + 1;
    while !is_prime(c) {
        c += 1;
    }
    c
}

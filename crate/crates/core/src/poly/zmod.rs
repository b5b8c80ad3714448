//! Integer polynomial helpers modulo `M` (used for p-adic lifting).
//!
//! Polynomials are coefficient vectors, constant term first, reduced into `[0, M)`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::arith::Rational;

pub(crate) type ZPoly = Vec<BigInt>;

pub(crate) fn trim(mut a: ZPoly) -> ZPoly {
    while a.last().is_some_and(Zero::is_zero) {
        a.pop();
    }
    a
}

pub(crate) fn reduce(a: &[BigInt], m: &BigInt) -> ZPoly {
    trim(a.iter().map(|c| c.mod_floor(m)).collect())
}

pub(crate) fn inverse(a: &BigInt, m: &BigInt) -> Option<BigInt> {
    let e = a.mod_floor(m).extended_gcd(m);
    e.gcd.is_one().then(|| e.x.mod_floor(m))
}

pub(crate) fn from_rational_poly(c: &[Rational], m: &BigInt) -> Option<ZPoly> {
    c.iter()
        .map(|a| inverse(a.denom(), m).map(|d| (a.numer() * d).mod_floor(m)))
        .collect::<Option<Vec<_>>>()
        .map(trim)
}

pub(crate) fn eval(a: &[BigInt], x: &BigInt, m: &BigInt) -> BigInt {
    a.iter()
        .rev()
        .fold(BigInt::zero(), |acc, c| (acc * x + c).mod_floor(m))
}

pub(crate) fn derivative(a: &[BigInt], m: &BigInt) -> ZPoly {
    trim(
        a.iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| (c * BigInt::from(i)).mod_floor(m))
            .collect(),
    )
}

pub(crate) fn add(a: &[BigInt], b: &[BigInt], m: &BigInt) -> ZPoly {
    let n = a.len().max(b.len());
    let z = BigInt::zero();
    trim(
        (0..n)
            .map(|i| (a.get(i).unwrap_or(&z) + b.get(i).unwrap_or(&z)).mod_floor(m))
            .collect(),
    )
}

pub(crate) fn sub(a: &[BigInt], b: &[BigInt], m: &BigInt) -> ZPoly {
    let n = a.len().max(b.len());
    let z = BigInt::zero();
    trim(
        (0..n)
            .map(|i| (a.get(i).unwrap_or(&z) - b.get(i).unwrap_or(&z)).mod_floor(m))
            .collect(),
    )
}

pub(crate) fn mul(a: &[BigInt], b: &[BigInt], m: &BigInt) -> ZPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut r = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            r[i + j] += x * y;
        }
    }
    reduce(&r, m)
}

pub(crate) fn scale(a: &[BigInt], s: &BigInt, m: &BigInt) -> ZPoly {
    trim(a.iter().map(|c| (c * s).mod_floor(m)).collect())
}

/// Division by a polynomial with invertible leading coefficient.
pub(crate) fn divrem(a: &[BigInt], d: &[BigInt], m: &BigInt) -> (ZPoly, ZPoly) {
    let d = trim(d.to_vec());
    let a = reduce(a, m);
    if a.len() < d.len() {
        return (Vec::new(), a);
    }
    let inv = inverse(d.last().expect("nonzero divisor"), m).expect("unit leading coefficient");
    let dn = d.len() - 1;
    let mut r = a.clone();
    let mut q = vec![BigInt::zero(); a.len() - dn];
    for i in (0..q.len()).rev() {
        let coef = (&r[i + dn] * &inv).mod_floor(m);
        if !coef.is_zero() {
            for (j, dc) in d.iter().enumerate() {
                r[i + j] = (&r[i + j] - &coef * dc).mod_floor(m);
            }
        }
        q[i] = coef;
    }
    r.truncate(dn);
    (trim(q), trim(r))
}

/// Symmetric representative in `(-M/2, M/2]`.
pub(crate) fn symmetric(a: &[BigInt], m: &BigInt) -> ZPoly {
    let half = m / 2;
    trim(
        a.iter()
            .map(|c| {
                let c = c.mod_floor(m);
                if c > half {
                    c - m
                } else {
                    c
                }
            })
            .collect(),
    )
}

/// Lagrange basis polynomials for distinct nodes whose differences are units.
pub(crate) fn lagrange_basis(nodes: &[BigInt], m: &BigInt) -> Option<Vec<Vec<BigInt>>> {
    let d = nodes.len();
    let mut out = Vec::with_capacity(d);
    for i in 0..d {
        let mut num: ZPoly = vec![BigInt::one()];
        let mut den = BigInt::one();
        for (j, nj) in nodes.iter().enumerate() {
            if i == j {
                continue;
            }
            num = mul(&num, &[(-nj).mod_floor(m), BigInt::one()], m);
            den = (den * (&nodes[i] - nj)).mod_floor(m);
        }
        let inv = inverse(&den, m)?;
        let mut b = scale(&num, &inv, m);
        b.resize(d, BigInt::zero());
        out.push(b);
    }
    Some(out)
}

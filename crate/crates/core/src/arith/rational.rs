use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::Field;

/// Arbitrary-precision rational, always kept in lowest terms with a positive denominator.
pub type Rational = BigRational;

impl Field for BigRational {
    type Ctx = ();

    fn context(&self) -> Self::Ctx {}
    fn zero(_: &()) -> Self {
        <BigRational as Zero>::zero()
    }
    fn one(_: &()) -> Self {
        <BigRational as One>::one()
    }
    fn from_i64(_: &(), n: i64) -> Self {
        BigRational::from_integer(BigInt::from(n))
    }
    fn characteristic(_: &()) -> u64 {
        0
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn sub(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn mul(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn neg(&self) -> Self {
        -self
    }
    fn inv(&self) -> Option<Self> {
        if Zero::is_zero(self) {
            None
        } else {
            Some(self.recip())
        }
    }
    fn sqrt(&self) -> Option<Self> {
        rational_sqrt(self)
    }
    fn from_rational(_: &(), r: &Rational) -> Option<Self> {
        Some(r.clone())
    }
    fn is_one(&self) -> bool {
        One::is_one(self)
    }
}

/// Recovers `n/d` from `residue = n * d^-1 mod modulus` with `|n|, d <= bound`.
///
/// The answer is unique whenever `2 * bound^2 < modulus`.
pub fn rational_reconstruction(residue: &BigInt, modulus: &BigInt, bound: &BigInt) -> Option<Rational> {
    let residue = residue.mod_floor(modulus);
    if residue.is_zero() {
        return Some(<Rational as Zero>::zero());
    }
    let (mut r0, mut r1) = (modulus.clone(), residue);
    let (mut t0, mut t1) = (BigInt::zero(), BigInt::one());
    while &r1 > bound {
        let q = &r0 / &r1;
        let r2 = &r0 - &q * &r1;
        let t2 = &t0 - &q * &t1;
        r0 = std::mem::replace(&mut r1, r2);
        t0 = std::mem::replace(&mut t1, t2);
    }
    if t1.is_zero() || t1.abs() > *bound || r1.abs() > *bound {
        return None;
    }
    if !t1.gcd(modulus).is_one() {
        return None;
    }
    Some(Rational::new(r1, t1))
}

/// Exact square root of a non-negative integer, if it is a perfect square.
pub(crate) fn int_sqrt_exact(n: &BigInt) -> Option<BigInt> {
    if n.is_negative() {
        return None;
    }
    let r = n.sqrt();
    (&r * &r == *n).then_some(r)
}

pub fn is_rational_square(x: &Rational) -> bool {
    rational_sqrt(x).is_some()
}

/// Non-negative square root of a rational square.
pub fn rational_sqrt(x: &Rational) -> Option<Rational> {
    let n = int_sqrt_exact(x.numer())?;
    let d = int_sqrt_exact(x.denom())?;
    Some(Rational::new(n, d))
}

/// The squarefree integer `s` with `x = s * r^2` for some rational `r`.
pub fn squarefree_part(x: &Rational) -> BigInt {
    if Zero::is_zero(x) {
        return BigInt::zero();
    }
    let n = x.numer() * x.denom();
    let sign = n.sign();
    let mut m = n.abs();
    let mut out = BigInt::one();
    let mut p = BigInt::from(2u32);
    while &p * &p <= m {
        let mut e = 0u32;
        while (&m % &p).is_zero() {
            m /= &p;
            e += 1;
        }
        if e % 2 == 1 {
            out *= &p;
        }
        p += 1u32;
    }
    out *= m;
    if sign == Sign::Minus {
        -out
    } else {
        out
    }
}

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

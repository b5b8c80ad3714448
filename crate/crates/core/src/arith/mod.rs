//! Exact coefficient domains.
//!
//! Every algorithm in the crate is written against [`Field`]. Elements carry
//! whatever context they need (a modulus, a defining polynomial) so that
//! polynomials and matrices can be built without a separate ring object.

mod ext_field;
mod number_field;
mod prime_field;
mod rational;
mod sqrt;

use std::fmt::{Debug, Display};
use std::hash::Hash;

use num_bigint::BigUint;
use num_traits::One;

pub use ext_field::{conway_polynomial, Fq, FqCtx};
pub use number_field::{
    nf_is_square, nf_sqrt, nf_sqrt_bounded, NfCtx, NonResidueCertificate, NumberFieldElement, SquareVerdict,
};
pub use prime_field::{is_prime, next_prime, Fp};
pub use rational::{is_rational_square, rational_reconstruction, rational_sqrt, squarefree_part, Rational};
pub use rational::{rat, ratio};
pub use sqrt::ff_sqrt;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ArithError {
    #[error("characteristic 2 is not supported")]
    CharacteristicTwo,
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("defining polynomial is not irreducible: {0}")]
    Reducible(String),
    #[error("square root lifting ran out of precision after {0} rounds; retry with a larger budget")]
    PrecisionExhausted(usize),
    #[error("defining polynomial must be monic of degree >= 1")]
    BadModulus,
}

/// A commutative field with exact arithmetic.
pub trait Field: Clone + PartialEq + Eq + Hash + Ord + Debug + Display + Send + Sync + 'static {
    /// Whatever is needed to build constants of the same field.
    type Ctx: Clone + PartialEq + Eq + Debug + Send + Sync;

    fn context(&self) -> Self::Ctx;
    fn zero(ctx: &Self::Ctx) -> Self;
    fn one(ctx: &Self::Ctx) -> Self;
    fn from_i64(ctx: &Self::Ctx, n: i64) -> Self;
    /// Characteristic of the field, 0 for fields containing Q.
    fn characteristic(ctx: &Self::Ctx) -> u64;

    fn is_zero(&self) -> bool;
    fn add(&self, rhs: &Self) -> Self;
    fn sub(&self, rhs: &Self) -> Self;
    fn mul(&self, rhs: &Self) -> Self;
    fn neg(&self) -> Self;
    fn inv(&self) -> Option<Self>;
    /// A square root, when one exists in the field. The choice of sign is canonical per field.
    fn sqrt(&self) -> Option<Self>;
    /// Image of a rational number, when its denominator is invertible.
    fn from_rational(ctx: &Self::Ctx, r: &Rational) -> Option<Self>;

    fn is_one(&self) -> bool {
        *self == Self::one(&self.context())
    }

    fn square(&self) -> Self {
        self.mul(self)
    }

    fn div(&self, rhs: &Self) -> Option<Self> {
        rhs.inv().map(|r| self.mul(&r))
    }

    fn pow_u64(&self, mut e: u64) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(&self.context());
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.square();
            e >>= 1;
        }
        acc
    }

    fn pow_big(&self, e: &BigUint) -> Self {
        let mut acc = Self::one(&self.context());
        for i in (0..e.bits()).rev() {
            acc = acc.square();
            if e.bit(i) {
                acc = acc.mul(self);
            }
        }
        acc
    }
}

/// A finite field F_q of odd or even characteristic.
pub trait FiniteField: Field {
    fn prime(ctx: &Self::Ctx) -> u64;
    /// Degree over the prime field.
    fn ext_degree(ctx: &Self::Ctx) -> usize;
    /// Coordinates over the prime field, constant coordinate first.
    fn coords(&self) -> Vec<u64>;
    /// The `i`-th element in base-p digit order, `0 <= i < q`.
    fn element(ctx: &Self::Ctx, index: u64) -> Self;

    fn order(ctx: &Self::Ctx) -> u64 {
        Self::prime(ctx).pow(Self::ext_degree(ctx) as u32)
    }

    fn index(&self) -> u64 {
        let p = Self::prime(&self.context());
        self.coords().iter().rev().fold(0, |acc, &c| acc * p + c)
    }

    fn elements(ctx: &Self::Ctx) -> Vec<Self> {
        (0..Self::order(ctx)).map(|i| Self::element(ctx, i)).collect()
    }

    /// Euler's criterion; zero counts as a square.
    fn is_square(&self) -> bool {
        if self.is_zero() || Self::prime(&self.context()) == 2 {
            return true;
        }
        let q = Self::order(&self.context());
        self.pow_u64((q - 1) / 2).is_one()
    }
}

/// A finite extension of a base field, presented by coordinates in a power basis.
pub trait FiniteExtension: Field {
    type Base: Field;
    fn base_ctx(ctx: &Self::Ctx) -> <Self::Base as Field>::Ctx;
    fn degree(ctx: &Self::Ctx) -> usize;
    fn to_coords(&self) -> Vec<Self::Base>;
    fn from_coords(ctx: &Self::Ctx, coords: &[Self::Base]) -> Self;
    fn embed(ctx: &Self::Ctx, b: &Self::Base) -> Self {
        let bctx = Self::base_ctx(ctx);
        let mut c = vec![<Self::Base as Field>::zero(&bctx); Self::degree(ctx)];
        c[0] = b.clone();
        Self::from_coords(ctx, &c)
    }
}

pub(crate) fn big_pow(base: u64, e: usize) -> BigUint {
    let mut acc = BigUint::one();
    for _ in 0..e {
        acc *= base;
    }
    acc
}

//! The Jacobian as divisor classes modulo principal divisors.
//!
//! A class `[A]` is stored as the unique effective `E` in `|A + k inf-|` for the
//! least `k` with `l(A + k inf-) > 0`. At that `k` the system has dimension one
//! (dimensions grow by at most one per step), `k = deg E <= g`, and `E` avoids
//! `inf-`. Two classes are equal exactly when these divisors are equal, so
//! classes can be hashed and compared directly. [`equivalent`] gives the slower
//! certificate through an explicit principal function.

mod group;
mod reduction;
mod snf;
mod two_torsion;

use thiserror::Error;

use crate::curve::{CurveModel, Sign};
use crate::divisor::{divisor_of_function_with_hints, CurveField, Divisor, DivisorError, Place};
use crate::poly::Poly;
use crate::rr::{is_principal, lspace};

pub use group::{enumerate_jacobian, span, two_rank, GroupStructure, DEFAULT_SPAN_BUDGET};
pub use reduction::{reduce_divisor, reduction_map};
pub use snf::invariant_factors;
pub use two_torsion::{
    octic_two_rank_over_q, two_rank_from_root_action, two_torsion_classify, TwoTorsionRecord,
    TwoTorsionWitness,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum JacobianError {
    #[error("divisor has degree {0}, expected 0")]
    NonzeroDegree(i64),
    #[error("order exceeds the bound {0}")]
    OrderBoundExceeded(u64),
    #[error("subgroup exceeds the budget of {0} elements")]
    BudgetExceeded(usize),
    #[error("class has order {0}, expected 2")]
    NotTwoTorsion(u64),
    #[error("no representative with {0}-integral places")]
    NotReducible(u64),
    #[error("p = {0} is a prime of bad reduction")]
    BadPrime(u64),
    #[error("reached {got} classes, expected {expected}")]
    Incomplete { expected: u64, got: u64 },
    #[error("two-torsion witness failed: {0}")]
    WitnessFailed(String),
    #[error(transparent)]
    Divisor(#[from] DivisorError),
}

/// The class of `E - deg(E) inf-`, with `E` as described in the module notes.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct DivisorClass<F: crate::arith::Field> {
    effective: Divisor<F>,
}

impl<F: CurveField> DivisorClass<F> {
    pub fn identity() -> Self {
        DivisorClass {
            effective: Divisor::zero(),
        }
    }

    /// The class of a degree-0 divisor.
    pub fn of(d: &Divisor<F>, c: &CurveModel<F>) -> Result<Self, JacobianError> {
        if d.degree() != 0 {
            return Err(JacobianError::NonzeroDegree(d.degree()));
        }
        let g = c.genus() as i64;
        for k in 0..=g {
            let shifted = d.add(&Divisor::from_place(Place::Infinity(Sign::Minus), k));
            let l = lspace(&shifted, c);
            if l.dim() == 0 {
                continue;
            }
            debug_assert_eq!(l.dim(), 1);
            let div = divisor_of_function_with_hints(c, &l.basis[0], &shifted.affine_us())?;
            return Ok(DivisorClass {
                effective: shifted.add(&div),
            });
        }
        unreachable!("l(D + g inf-) >= 1 for deg D = 0")
    }

    /// `E` with the class equal to `E - deg(E) inf-`.
    pub fn effective(&self) -> &Divisor<F> {
        &self.effective
    }

    /// A degree-0 representative.
    pub fn representative(&self) -> Divisor<F> {
        let k = self.effective.degree();
        self.effective
            .add(&Divisor::from_place(Place::Infinity(Sign::Minus), -k))
    }

    pub fn is_identity(&self) -> bool {
        self.effective.is_zero()
    }

    pub fn add(&self, o: &Self, c: &CurveModel<F>) -> Self {
        if self.is_identity() {
            return o.clone();
        }
        if o.is_identity() {
            return self.clone();
        }
        Self::of(&self.representative().add(&o.representative()), c).expect("degree 0")
    }

    pub fn neg(&self, c: &CurveModel<F>) -> Self {
        Self::of(&self.representative().neg(), c).expect("degree 0")
    }

    pub fn sub(&self, o: &Self, c: &CurveModel<F>) -> Self {
        self.add(&o.neg(c), c)
    }

    pub fn smul(&self, n: i64, c: &CurveModel<F>) -> Self {
        let base = if n < 0 { self.neg(c) } else { self.clone() };
        let mut n = n.unsigned_abs();
        let mut acc = Self::identity();
        let mut pow = base;
        while n > 0 {
            if n & 1 == 1 {
                acc = acc.add(&pow, c);
            }
            n >>= 1;
            if n > 0 {
                pow = pow.add(&pow, c);
            }
        }
        acc
    }

    /// The exact order, or an error once it would exceed `bound`.
    pub fn order(&self, bound: u64, c: &CurveModel<F>) -> Result<u64, JacobianError> {
        let mut cur = self.clone();
        let mut n = 1;
        while !cur.is_identity() {
            n += 1;
            if n > bound {
                return Err(JacobianError::OrderBoundExceeded(bound));
            }
            cur = cur.add(self, c);
        }
        Ok(n)
    }
}

/// Linear equivalence of degree-0 divisors, certified by a principal function.
pub fn equivalent<F: CurveField>(a: &Divisor<F>, b: &Divisor<F>, c: &CurveModel<F>) -> bool {
    is_principal(&a.sub(b), c).is_some()
}

/// `Q1 = inf+ - inf-`, `Q2 = (0, -1) - inf-`, `Q3 = (-1, -4) - inf-` over any field.
pub fn generator_divisors<F: CurveField>(ctx: &F::Ctx) -> [Divisor<F>; 3] {
    let inf_m = Place::Infinity(Sign::Minus);
    let point = |x: i64, y: i64| Place::Affine {
        u: Poly::from_i64s(ctx, &[-x, 1]),
        v: Poly::from_i64s(ctx, &[y]),
    };
    [
        Divisor::from_terms([(Place::Infinity(Sign::Plus), 1), (inf_m.clone(), -1)]),
        Divisor::from_terms([(point(0, -1), 1), (inf_m.clone(), -1)]),
        Divisor::from_terms([(point(-1, -4), 1), (inf_m, -1)]),
    ]
}

#[cfg(test)]
mod tests;

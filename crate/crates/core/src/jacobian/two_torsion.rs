//! Witnesses for classes of order 2.
//!
//! Write `D = D0 - ((g-1)/2) inf+ - ((g+1)/2) inf-` with `D0` effective of degree `g`.
//! Then `2D = div(k)` with `k` in `L((g-1) inf+ + (g+1) inf-)`, spanned by
//! `1, x, .., x^(g-1)` and `y - x^(g+1) - (a_(2g+1)/2) x^g`. Either `k` is a
//! polynomial `h` dividing `f`, or `k` is proportional to `y - h1` and
//! `h1^2 - f = a h2^2`.

use num_bigint::BigInt;
use num_traits::Zero;

use super::{DivisorClass, JacobianError};
use crate::arith::{rat, squarefree_part, Field, Rational};
use crate::curve::{CurveModel, Sign};
use crate::divisor::{divisor_of_function_with_hints, CurveFunction, Divisor, Place};
use crate::poly::Poly;
use crate::rr::{is_principal, lspace};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TwoTorsionWitness {
    /// `2D = div(h)` with `h | f` of even degree.
    Polynomial { h: Poly<Rational> },
    /// `2D = div(y - h1)` with `f = h1^2 - a h2^2`, `a` a squarefree integer.
    Norm {
        h1: Poly<Rational>,
        a: BigInt,
        h2: Poly<Rational>,
    },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwoTorsionRecord {
    /// The effective part `D0`.
    pub d0: Divisor<Rational>,
    /// `D0 - ((g-1)/2) inf+ - ((g+1)/2) inf-`.
    pub representative: Divisor<Rational>,
    pub witness: TwoTorsionWitness,
}

fn fail(msg: impl Into<String>) -> JacobianError {
    JacobianError::WitnessFailed(msg.into())
}

pub fn two_torsion_classify(
    a: &DivisorClass<Rational>,
    c: &CurveModel<Rational>,
) -> Result<TwoTorsionRecord, JacobianError> {
    if a.is_identity() {
        return Err(JacobianError::NotTwoTorsion(1));
    }
    if !a.add(a, c).is_identity() {
        return Err(JacobianError::NotTwoTorsion(a.order(1 << 16, c).unwrap_or(0)));
    }
    let g = c.genus() as i64;
    if g % 2 == 0 {
        return Err(fail("the reduction needs odd genus"));
    }
    let shift = Divisor::from_terms([
        (Place::Infinity(Sign::Plus), (g - 1) / 2),
        (Place::Infinity(Sign::Minus), (g + 1) / 2),
    ]);
    let moved = a.representative().add(&shift);
    let l = lspace(&moved, c);
    let first = l.basis.first().ok_or_else(|| fail("empty linear system"))?;
    let d0 = moved.add(&divisor_of_function_with_hints(c, first, &moved.affine_us())?);
    let representative = d0.sub(&shift);
    let twice = representative.scale(2);
    let k = is_principal(&twice, c).ok_or_else(|| fail("2D is not principal"))?;
    if !k.c().is_one() || k.b().deg() > 0 {
        return Err(fail(format!("witness {k} is outside the expected space")));
    }
    let f = c.f();
    let delta = k.b().coeff(0);
    let witness = if Field::is_zero(&delta) {
        let h = k.a().monic();
        if h.deg() % 2 != 0 || h.deg() as i64 > g - 1 || !f.rem(&h).is_zero() {
            return Err(fail(format!("h = {h} does not divide f with even degree")));
        }
        TwoTorsionWitness::Polynomial { h }
    } else {
        let inv = delta.inv().expect("nonzero");
        let h1 = k.a().scale(&inv).neg();
        // h1 = x^(g+1) + (a_(2g+1)/2) x^g + lower terms
        let gu = g as usize;
        let half = f.coeff(2 * gu + 1).mul(&crate::arith::ratio(1, 2));
        let lead = Poly::monomial(rat(1), gu + 1).add(&Poly::monomial(half, gu));
        if h1.sub(&lead).deg() as i64 > g - 1 {
            return Err(fail(format!("h1 = {h1} has the wrong leading terms")));
        }
        let n = h1.mul(&h1).sub(f);
        let sq = squarefree_part(&n.lc());
        if sq.is_zero() {
            return Err(fail("h1^2 = f"));
        }
        let a_q = Rational::from_integer(sq.clone());
        let h2 = n
            .scale(&a_q.inv().expect("nonzero"))
            .sqrt()
            .ok_or_else(|| fail(format!("(h1^2 - f)/{sq} is not a square")))?;
        if h1.mul(&h1).sub(&h2.mul(&h2).scale(&a_q)) != *f {
            return Err(fail("f != h1^2 - a h2^2"));
        }
        TwoTorsionWitness::Norm { h1, a: sq, h2 }
    };
    // expand the witness back into a divisor
    let fun = match &witness {
        TwoTorsionWitness::Polynomial { h } => CurveFunction::from_poly(h.clone()),
        TwoTorsionWitness::Norm { h1, .. } => CurveFunction::new(h1.neg(), Poly::one(&()), Poly::one(&())),
    };
    let div = divisor_of_function_with_hints(c, &fun, &d0.affine_us())?;
    if div != twice {
        return Err(fail(format!("div(witness) = {div}, expected {twice}")));
    }
    Ok(TwoTorsionRecord {
        d0,
        representative,
        witness,
    })
}

/// Rank of the 2-torsion fixed by a group of permutations of the `n` roots of an
/// even-degree `f` with split infinity: classes are even subsets modulo complement.
pub fn two_rank_from_root_action(perms: &[Vec<usize>], n: usize) -> u32 {
    assert!(n < 32 && n.is_multiple_of(2));
    let full: u32 = (1 << n) - 1;
    let image = |perm: &Vec<usize>, s: u32| {
        (0..n)
            .filter(|&i| s >> i & 1 == 1)
            .fold(0u32, |acc, i| acc | 1 << perm[i])
    };
    let fixed = (0..=full)
        .filter(|s| s.count_ones() % 2 == 0 && *s <= full ^ s)
        .filter(|&s| {
            perms.iter().all(|p| {
                let t = image(p, s);
                t == s || t == full ^ s
            })
        })
        .count();
    debug_assert!(fixed.is_power_of_two());
    fixed.trailing_zeros()
}

/// Rank of `J(Q)[2]` for `y^2 = x^8 + 14x^4 + 1` from the Galois action on the roots of `f`.
///
/// The roots are `z^(3j) (sqrt6 +- sqrt2)/2` for odd `j`, where `z` is a primitive 24th
/// root of unity, `sqrt2 = z^3 + z^-3` and `sqrt3 = z^2 + z^-2`; the Galois group of
/// `Q(z)` acts by `z -> z^k` for `k` prime to 24. Every root is checked exactly.
pub fn octic_two_rank_over_q() -> u32 {
    use crate::arith::{NfCtx, NumberFieldElement};
    use crate::curve::octic_curve;
    let q = |c: &[i64]| Poly::from_i64s(&(), c);
    let k = NfCtx::new(q(&[1, 0, 0, 0, -1, 0, 0, 0, 1]), "z").expect("cyclotomic");
    let z = k.generator();
    let zi = z.inv().expect("unit");
    let sqrt2 = z.pow_u64(3).add(&zi.pow_u64(3));
    let sqrt3 = z.pow_u64(2).add(&zi.pow_u64(2));
    let sqrt6 = sqrt2.mul(&sqrt3);
    let half = NumberFieldElement::from_rational(&k, crate::arith::ratio(1, 2));
    let mut roots = Vec::new();
    for j in [1u64, 3, 5, 7] {
        for r in [sqrt6.add(&sqrt2), sqrt6.sub(&sqrt2)] {
            roots.push(z.pow_u64(3 * j).mul(&r).mul(&half));
        }
    }
    let f = octic_curve().f().clone();
    let embed = |a: &Rational| NumberFieldElement::from_rational(&k, a.clone());
    for r in &roots {
        assert!(Field::is_zero(&f.eval_with(r, embed)), "not a root of f");
    }
    let perms: Vec<Vec<usize>> = [1u64, 5, 7, 11, 13, 17, 19, 23]
        .iter()
        .map(|&e| {
            let ze = z.pow_u64(e);
            roots
                .iter()
                .map(|r| {
                    let img = r.to_poly().eval_with(&ze, embed);
                    roots.iter().position(|s| *s == img).expect("roots are permuted")
                })
                .collect()
        })
        .collect();
    two_rank_from_root_action(&perms, roots.len())
}

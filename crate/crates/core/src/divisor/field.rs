//! What the divisor and Riemann-Roch code needs from a coefficient field beyond
//! arithmetic: factoring polynomials and taking square roots in residue fields.

use num_bigint::BigUint;

use crate::arith::{
    big_pow, nf_sqrt, rational_sqrt, Field, FiniteField, Fp, Fq, NfCtx, NumberFieldElement, Rational,
};
use crate::poly::{factor_ff, factor_q, Poly};

pub trait CurveField: Field {
    /// Monic irreducible factors with multiplicities, in a deterministic order.
    fn factor_monic(p: &Poly<Self>) -> Vec<(Poly<Self>, usize)>;

    /// A square root of `a` in `F[x]/(u)` for monic irreducible `u`, reduced mod `u`.
    fn residue_sqrt(a: &Poly<Self>, u: &Poly<Self>) -> Option<Poly<Self>>;
}

impl CurveField for Rational {
    fn factor_monic(p: &Poly<Self>) -> Vec<(Poly<Self>, usize)> {
        if p.deg() < 1 {
            return Vec::new();
        }
        factor_q(p).factors
    }

    fn residue_sqrt(a: &Poly<Self>, u: &Poly<Self>) -> Option<Poly<Self>> {
        let a = a.rem(u);
        if u.deg() == 1 {
            let r = u.coeff(0).neg();
            return rational_sqrt(&a.eval(&r)).map(|s| Poly::constant(&(), s));
        }
        let ctx = NfCtx::new_unchecked(u.clone(), "w");
        nf_sqrt(&NumberFieldElement::from_poly(&ctx, &a)).map(|s| s.to_poly())
    }
}

impl CurveField for Fp {
    fn factor_monic(p: &Poly<Self>) -> Vec<(Poly<Self>, usize)> {
        if p.deg() < 1 {
            return Vec::new();
        }
        factor_ff(p).factors
    }

    fn residue_sqrt(a: &Poly<Self>, u: &Poly<Self>) -> Option<Poly<Self>> {
        residue_sqrt_ff(a, u)
    }
}

impl CurveField for Fq {
    fn factor_monic(p: &Poly<Self>) -> Vec<(Poly<Self>, usize)> {
        if p.deg() < 1 {
            return Vec::new();
        }
        factor_ff(p).factors
    }

    fn residue_sqrt(a: &Poly<Self>, u: &Poly<Self>) -> Option<Poly<Self>> {
        residue_sqrt_ff(a, u)
    }
}

/// Tonelli-Shanks in the finite field `F[x]/(u)`.
fn residue_sqrt_ff<F: FiniteField>(a: &Poly<F>, u: &Poly<F>) -> Option<Poly<F>> {
    let ctx = u.ctx().clone();
    let a = a.rem(u);
    if a.is_zero() {
        return Some(a);
    }
    let d = u.deg_usize();
    if d == 1 {
        let r = u.coeff(0).neg();
        return a.eval(&r).sqrt().map(|s| Poly::constant(&ctx, s));
    }
    let q = F::order(&ctx);
    let order: BigUint = big_pow(q, d) - 1u32;
    let half = &order >> 1;
    let one = Poly::one(&ctx);
    if a.powmod(&half, u) != one {
        return None;
    }
    let s = order.trailing_zeros().expect("order is even") as usize;
    let t: BigUint = &order >> s;
    // deterministic non-residue: first polynomial in base-q counting order
    let z = (1u64..)
        .map(|idx| {
            let mut c = Vec::with_capacity(d);
            let mut i = idx;
            for _ in 0..d {
                c.push(F::element(&ctx, i % q));
                i /= q;
            }
            Poly::new(&ctx, c)
        })
        .find(|z| !z.is_zero() && z.powmod(&half, u) != one)
        .expect("non-residues exist");
    let mut m = s;
    let mut c = z.powmod(&t, u);
    let mut tt = a.powmod(&t, u);
    let mut r = a.powmod(&((&t + 1u32) >> 1), u);
    while tt != one {
        let mut i = 0;
        let mut probe = tt.clone();
        while probe != one {
            probe = probe.mulmod(&probe, u);
            i += 1;
        }
        let mut b = c.clone();
        for _ in 0..(m - i - 1) {
            b = b.mulmod(&b, u);
        }
        m = i;
        c = b.mulmod(&b, u);
        tt = tt.mulmod(&c, u);
        r = r.mulmod(&b, u);
    }
    Some(r)
}

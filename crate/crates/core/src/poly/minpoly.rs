//! Minimal polynomials over the base field via the first linear dependency among powers.

use std::sync::Arc;

use super::Poly;
use crate::arith::{Field, FiniteExtension, NfCtx, NumberFieldElement, Rational};
use crate::linalg::kernel;

/// Monic minimal polynomial of `x` over the base field of its extension.
pub fn minpoly_ext<E: FiniteExtension>(x: &E) -> Poly<E::Base> {
    let ctx = x.context();
    let bctx = E::base_ctx(&ctx);
    let d = E::degree(&ctx);
    let mut powers = vec![E::one(&ctx).to_coords()];
    let mut cur = E::one(&ctx);
    for k in 1..=d {
        cur = cur.mul(x);
        powers.push(cur.to_coords());
        // rows are coordinates, columns are powers 0..=k
        let rows: Vec<Vec<E::Base>> = (0..d)
            .map(|i| powers.iter().map(|p| p[i].clone()).collect())
            .collect();
        let ker = kernel(&bctx, &rows, k + 1);
        if let Some(v) = ker.into_iter().find(|v| !v[k].is_zero()) {
            return Poly::new(&bctx, v).monic();
        }
    }
    unreachable!("x^d is a combination of lower powers")
}

pub fn minpoly_nf(x: &NumberFieldElement) -> Poly<Rational> {
    minpoly_ext(x)
}

/// Convenience: the field `Q[t]/(m)` together with its generator.
pub fn nf_with_generator(m: Poly<Rational>, name: &str) -> (Arc<NfCtx>, NumberFieldElement) {
    let ctx = NfCtx::new_unchecked(m, name);
    let g = ctx.generator();
    (ctx, g)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{Field, Fq, FqCtx};

    fn theta_field() -> (Arc<NfCtx>, NumberFieldElement) {
        nf_with_generator(Poly::from_i64s(&(), &[1, 2, -2, 1]), "theta")
    }

    #[test]
    fn rational_and_generator() {
        let (ctx, th) = theta_field();
        let three = NumberFieldElement::from_i64(&ctx, 3);
        assert_eq!(minpoly_nf(&three), Poly::from_i64s(&(), &[-3, 1]));
        assert_eq!(minpoly_nf(&th), Poly::from_i64s(&(), &[1, 2, -2, 1]));
    }

    #[test]
    fn theta_squared() {
        // Oracle: split m(z) = z(z^2 + 2) + (1 - 2z^2); then m(z)m(-z) with t = z^2 is
        // (1 - 2t)^2 - t(t + 2)^2 = -(t^3 + 8t - 1), whose roots are the squares of the roots of m.
        let (_, th) = theta_field();
        let mp = minpoly_nf(&th.square());
        assert_eq!(mp, Poly::from_i64s(&(), &[-1, 8, 0, 1]));
        let v = mp.eval_with(&th.square(), |c| {
            NumberFieldElement::from_rational(th.field(), c.clone())
        });
        assert!(v.is_zero());
    }

    #[test]
    fn finite_field_generator() {
        let ctx = FqCtx::conway(5, 3).unwrap();
        let z = ctx.generator();
        assert_eq!(minpoly_ext(&z), ctx.modulus_poly());
        let one = Fq::one(&ctx);
        assert_eq!(minpoly_ext(&one).deg(), 1);
    }
}

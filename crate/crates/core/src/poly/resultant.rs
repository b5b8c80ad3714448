//! Resultants by the Euclidean remainder sequence, and norm polynomials by interpolation.

use super::Poly;
use crate::arith::{Field, Rational};

/// `res(a, b) = lc(a)^deg(b) * prod b(alpha)` over the roots `alpha` of `a`.
///
/// Zero when either input is zero.
pub fn resultant<F: Field>(a: &Poly<F>, b: &Poly<F>) -> F {
    let ctx = a.ctx().clone();
    if a.is_zero() || b.is_zero() {
        return F::zero(&ctx);
    }
    let (m, n) = (a.deg_usize(), b.deg_usize());
    if n == 0 {
        return b.lc().pow_u64(m as u64);
    }
    if m == 0 {
        return a.lc().pow_u64(n as u64);
    }
    let r = a.rem(b);
    if r.is_zero() {
        return F::zero(&ctx);
    }
    let k = m - r.deg_usize();
    let mut out = b.lc().pow_u64(k as u64).mul(&resultant(b, &r));
    if m * n % 2 == 1 {
        out = out.neg();
    }
    out
}

/// Characteristic polynomial of `g(theta)` in `Q[theta]/(m)`, i.e. `Res_theta(m, t - g(theta))`
/// for monic `m`.
pub fn norm_poly(m: &Poly<Rational>, g: &Poly<Rational>) -> Poly<Rational> {
    let d = m.deg_usize();
    let g = g.rem(m);
    let nodes: Vec<Rational> = (0..=d as i64).map(|i| Rational::from_integer(i.into())).collect();
    let values: Vec<Rational> = nodes
        .iter()
        .map(|t| resultant(m, &Poly::constant(&(), t.clone()).sub(&g)))
        .collect();
    interpolate(&nodes, &values)
}

/// Lagrange interpolation through distinct nodes.
pub fn interpolate<F: Field>(nodes: &[F], values: &[F]) -> Poly<F> {
    assert_eq!(nodes.len(), values.len());
    let ctx = nodes[0].context();
    let mut out = Poly::zero(&ctx);
    for (i, (xi, yi)) in nodes.iter().zip(values).enumerate() {
        let mut num = Poly::one(&ctx);
        let mut den = F::one(&ctx);
        for (j, xj) in nodes.iter().enumerate() {
            if i != j {
                num = num.mul(&Poly::linear_root(xj));
                den = den.mul(&xi.sub(xj));
            }
        }
        out = out.add(&num.scale(&yi.div(&den).expect("distinct nodes")));
    }
    out
}

//! Factorization over finite fields: squarefree split, distinct-degree split,
//! then Cantor-Zassenhaus equal-degree splitting driven by a seeded generator.

use num_bigint::BigUint;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{Factorization, Poly};
use crate::arith::{big_pow, FiniteField};

pub const DEFAULT_SEED: u64 = 0x5AF5;

pub fn factor_ff<F: FiniteField>(a: &Poly<F>) -> Factorization<F> {
    factor_ff_seeded(a, DEFAULT_SEED)
}

/// Full factorization; the output order does not depend on the seed.
pub fn factor_ff_seeded<F: FiniteField>(a: &Poly<F>, seed: u64) -> Factorization<F> {
    assert!(!a.is_zero(), "cannot factor the zero polynomial");
    let ctx = a.ctx().clone();
    assert!(F::prime(&ctx) != 2, "characteristic 2 is not supported");
    let unit = a.lc();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut factors = Vec::new();
    for (g, e) in squarefree_decomposition(&a.monic()) {
        for (h, d) in distinct_degree(&g) {
            for irr in equal_degree(&h, d, &mut rng) {
                factors.push((irr, e));
            }
        }
    }
    factors.sort();
    Factorization { unit, factors }
}

/// Distinct roots in the coefficient field, sorted.
pub fn roots_ff<F: FiniteField>(a: &Poly<F>) -> Vec<F> {
    if a.deg() < 1 {
        return Vec::new();
    }
    let ctx = a.ctx().clone();
    let q = F::order(&ctx);
    let x = Poly::x(&ctx);
    let m = a.monic();
    let lin = x.powmod_u64(q, &m).sub(&x).gcd(&m);
    if lin.deg() < 1 {
        return Vec::new();
    }
    let mut rng = ChaCha8Rng::seed_from_u64(DEFAULT_SEED);
    let mut roots: Vec<F> = equal_degree(&lin, 1, &mut rng)
        .into_iter()
        .map(|l| l.coeff(0).neg())
        .collect();
    roots.sort();
    roots
}

/// Rabin's test.
pub fn is_irreducible_ff<F: FiniteField>(f: &Poly<F>) -> bool {
    let Some(n) = f.degree() else { return false };
    if n == 0 {
        return false;
    }
    if n == 1 {
        return true;
    }
    let ctx = f.ctx().clone();
    let q = F::order(&ctx);
    let m = f.monic();
    let x = Poly::x(&ctx);
    let frob = |k: usize| {
        let mut h = x.clone();
        for _ in 0..k {
            h = h.powmod_u64(q, &m);
        }
        h
    };
    if frob(n).sub(&x).rem(&m) != Poly::zero(&ctx) {
        return false;
    }
    prime_divisors(n)
        .into_iter()
        .all(|r| frob(n / r).sub(&x).gcd(&m).is_one())
}

fn prime_divisors(mut n: usize) -> Vec<usize> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

fn pth_root<F: FiniteField>(f: &Poly<F>) -> Poly<F> {
    let ctx = f.ctx().clone();
    let p = F::prime(&ctx) as usize;
    let q = F::order(&ctx);
    // inverse Frobenius on coefficients: a -> a^(q/p)
    let e = q / p as u64;
    let c = f.coeffs().iter().step_by(p).map(|a| a.pow_u64(e)).collect();
    Poly::new(&ctx, c)
}

/// Monic squarefree factors with multiplicities.
pub(crate) fn squarefree_decomposition<F: FiniteField>(f: &Poly<F>) -> Vec<(Poly<F>, usize)> {
    let ctx = f.ctx().clone();
    let p = F::prime(&ctx) as usize;
    let mut out = Vec::new();
    if f.deg() < 1 {
        return out;
    }
    let w0 = f.derivative();
    if w0.is_zero() {
        for (g, e) in squarefree_decomposition(&pth_root(f)) {
            out.push((g, e * p));
        }
        return out;
    }
    let mut c = f.gcd(&w0);
    let mut w = f.div_exact(&c).expect("gcd divides");
    let mut i = 1;
    while !w.is_one() {
        let y = w.gcd(&c);
        let z = w.div_exact(&y).expect("gcd divides");
        if !z.is_one() {
            out.push((z.monic(), i));
        }
        i += 1;
        w = y;
        c = c.div_exact(&w).expect("gcd divides");
    }
    if !c.is_one() {
        for (g, e) in squarefree_decomposition(&pth_root(&c)) {
            out.push((g, e * p));
        }
    }
    out
}

fn distinct_degree<F: FiniteField>(f: &Poly<F>) -> Vec<(Poly<F>, usize)> {
    let ctx = f.ctx().clone();
    let q = F::order(&ctx);
    let x = Poly::x(&ctx);
    let mut g = f.monic();
    let mut h = x.clone();
    let mut out = Vec::new();
    let mut d = 1;
    while g.deg() >= 2 * d as isize {
        h = h.powmod_u64(q, &g);
        let part = h.sub(&x).gcd(&g);
        if !part.is_one() {
            g = g.div_exact(&part).expect("gcd divides");
            h = h.rem(&g);
            out.push((part, d));
        }
        d += 1;
    }
    if g.deg() >= 1 {
        let n = g.deg_usize();
        out.push((g, n));
    }
    out
}

fn random_poly<F: FiniteField>(ctx: &F::Ctx, deg_below: usize, rng: &mut ChaCha8Rng) -> Poly<F> {
    let q = F::order(ctx);
    let c = (0..deg_below)
        .map(|_| F::element(ctx, rng.gen_range(0..q)))
        .collect();
    Poly::new(ctx, c)
}

fn equal_degree<F: FiniteField>(f: &Poly<F>, d: usize, rng: &mut ChaCha8Rng) -> Vec<Poly<F>> {
    let n = f.deg_usize();
    if n == d {
        return vec![f.monic()];
    }
    let ctx = f.ctx().clone();
    let q = F::order(&ctx);
    let e: BigUint = (big_pow(q, d) - 1u32) / 2u32;
    loop {
        let a = random_poly::<F>(&ctx, n, rng);
        if a.deg() < 1 {
            continue;
        }
        let g = a.gcd(f);
        let split = if g.deg() >= 1 {
            g
        } else {
            let b = a.powmod(&e, f).sub(&Poly::one(&ctx));
            b.gcd(f)
        };
        if split.deg() >= 1 && split.deg() < f.deg() {
            let other = f.div_exact(&split).expect("gcd divides");
            let mut out = equal_degree(&split, d, rng);
            out.extend(equal_degree(&other, d, rng));
            return out;
        }
    }
}
